// Acceptance run: one PASS/FAIL line per criterion.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/consistency.hpp"
#include "oracle/laplace_oracle.hpp"
#include "test_helpers.hpp"
#include "wavemod/error.hpp"
#include "wavemod/experiment.hpp"

using namespace wavemod;
using testing_util::kPi;
using testing_util::random_field;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

PhysicalParams make(double mu, double inv_bond, int dim = 1, double eps = 0.1) {
  PhysicalParams p;
  p.mu = mu;
  p.inv_bond = inv_bond;
  p.dim = dim;
  p.epsilon = eps;
  return p;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double vrel(const Vec2& a, const Vec2& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]) / std::max(std::hypot(b[0], b[1]), 1e-300);
}

double mrel(const Mat2& a, const Mat2& b) {
  double d = 0.0, s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      d = std::max(d, std::abs(a[i][j] - b[i][j]));
      s = std::max(s, std::abs(b[i][j]));
    }
  return d / s;
}

std::string source_dir() {
  const char* s = std::getenv("WAVEMOD_SOURCE_DIR");
  return s ? s : WAVEMOD_DEFAULT_SOURCE_DIR;
}

// ---------------------------------------------------------------- 1

Outcome dispersion_suite() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-4.0, 4.0), lmu(0.0, 3.0), lb(-3.0, 1.0);
  double rel_worst = 0.0, grad_worst = 0.0, fd_worst = 0.0;
  const double h = 1e-6;
  int n = 0;
  while (n < 1000) {
    Vec2 xi{u(rng), u(rng)};
    if (std::hypot(xi[0], xi[1]) < 0.1) continue;
    double sigma = (n % 4 == 0) ? 0.0 : std::pow(10.0, lb(rng));
    PhysicalParams p = make(std::pow(10.0, lmu(rng)), sigma, 2);
    ++n;
    WaveComponent w = make_wave(xi, p);
    rel_worst = std::max(rel_worst, std::abs(w.omega * w.omega - w.b * w.g) / (w.omega * w.omega));
    Vec2 rhs = (1.0 / (2.0 * w.omega)) * (w.b * w.grad_g + (2.0 * sigma * w.g) * xi);
    grad_worst = std::max(grad_worst, vrel(w.group_velocity, rhs));
    Vec2 fo{}, fg{};
    Mat2 fho{}, fhg{};
    for (int a = 0; a < 2; ++a) {
      Vec2 xp = xi, xm = xi;
      xp[a] += h;
      xm[a] -= h;
      fo[a] = (omega(xp, p) - omega(xm, p)) / (2.0 * h);
      fg[a] = (g0(xp, p) - g0(xm, p)) / (2.0 * h);
      Vec2 op = grad_omega(xp, p), om = grad_omega(xm, p), gp = grad_g0(xp, p), gm = grad_g0(xm, p);
      for (int b = 0; b < 2; ++b) {
        fho[b][a] = (op[b] - om[b]) / (2.0 * h);
        fhg[b][a] = (gp[b] - gm[b]) / (2.0 * h);
      }
    }
    fd_worst = std::max({fd_worst, vrel(grad_omega(xi, p), fo), vrel(grad_g0(xi, p), fg),
                         mrel(hessian_omega(xi, p), fho), mrel(hessian_g0(xi, p), fhg)});
  }
  double secs = since(t0);
  Outcome o;
  o.require(rel_worst < 1e-9, "relation " + fmt("%.2e", rel_worst));
  o.require(grad_worst < 1e-9, "gradient identity " + fmt("%.2e", grad_worst));
  o.require(fd_worst < 1e-7, "finite differences " + fmt("%.2e", fd_worst));
  o.require(secs < 10.0, "runtime " + fmt("%.2fs", secs));
  return o;
}

// ---------------------------------------------------------------- 2

Outcome gravity_nonresonance() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(1e-3, 30.0), ul(1e-3, 30.0), uc(-1.0, 1.0);
  double worst = -1e300;
  for (int i = 0; i < 100000; ++i) worst = std::max(worst, r0(ux(rng), ul(rng), uc(rng)));
  double zero = 0.0;
  for (int i = 0; i < 1000; ++i) zero = std::max(zero, std::abs(r0(ux(rng), 0.0, 1.0)));
  double dmax = -1e300;
  int fd_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = ux(rng), l = ul(rng);
    double d = r0_dlambda_c1(x, l);
    dmax = std::max(dmax, d);
    double hh = 1e-5 * std::max(1.0, l);
    double fd = (r0(x, l + hh, 1.0) - r0(x, l - hh, 1.0)) / (2.0 * hh);
    if (std::abs(fd - d) > 1e-5 * std::max(1.0, std::abs(d))) ++fd_bad;
  }
  double secs = since(t0);
  Outcome o;
  o.require(worst < 0.0, "max r0 " + fmt("%.3e", worst));
  o.require(zero <= 1e-12, "r0(x,0,1) " + fmt("%.1e", zero));
  o.require(dmax < 0.0 && fd_bad == 0, "max d/dlambda " + fmt("%.3e", dmax) + ", fd mismatches " + std::to_string(fd_bad));
  o.require(secs < 10.0, "runtime " + fmt("%.2fs", secs));
  return o;
}

// ---------------------------------------------------------------- 3

Outcome dno_validation() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  DnoConfig cfg2;
  cfg2.order = 2;
  double oracle_err = 0.0;
  struct Surf {
    std::function<double(double)> eta, eta_x, psi;
  };
  std::vector<Surf> surfs = {
      {[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); },
       [](double x) { return std::sin(x); }},
      {[](double x) { return std::cos(x) + 0.5 * std::sin(2 * x); },
       [](double x) { return -std::sin(x) + std::cos(2 * x); },
       [](double x) { return std::cos(2 * x) - 0.3 * std::sin(3 * x); }},
  };
  const double eps = 1e-3;
  for (double mu : {1.0, 4.0})
    for (const auto& s : surfs) {
      const int n = 32;
      Grid g(1, n, 2.0 * kPi);
      PhysicalParams p = make(mu, 0.0);
      SpectralField z = SpectralField::from_function(g, [&](const Vec2& x) { return cplx(s.eta(x[0])); }, true);
      SpectralField ps = SpectralField::from_function(g, [&](const Vec2& x) { return cplx(s.psi(x[0])); }, true);
      auto tr = oracle::laplace_dno([&](double x) { return eps * s.eta(x); },
                                    [&](double x) { return eps * s.eta_x(x); }, s.psi, mu, 2.0 * kPi, n);
      auto G = dno_apply(z, ps, eps, cfg2, p).physical_real();
      for (int j = 0; j < n; ++j) oracle_err = std::max(oracle_err, std::abs(G[j] - tr.G[j]));
    }
  o.require(oracle_err < 1e-8, "Laplace oracle " + fmt("%.2e", oracle_err));

  double sym = 0.0;
  for (int dim : {1, 2}) {
    Grid g(dim, dim == 1 ? 128 : 64, 2.0 * kPi);
    PhysicalParams p = make(1.0, 0.0, dim);
    SpectralField z = random_field(g, 3, 5, 0.3, true), a = random_field(g, 3, 6, 1.0, true),
                  b = random_field(g, 3, 7, 1.0, true);
    for (int order = 0; order <= (dim == 1 ? 8 : 6); ++order) {
      DnoConfig c;
      c.order = order;
      double l = inner_product(dno_apply(z, a, 0.3, c, p), b).real();
      double r = inner_product(a, dno_apply(z, b, 0.3, c, p)).real();
      sym = std::max(sym, std::abs(l - r) / std::max(1.0, std::abs(l)));
    }
  }
  o.require(sym < 1e-9, "self-adjointness " + fmt("%.2e", sym));

  Grid g(1, 64, 2.0 * kPi);
  PhysicalParams p = make(1.0, 0.0);
  SpectralField z = random_field(g, 4, 8, 1.0, true), ps = random_field(g, 4, 9, 1.0, true);
  for (int n : {2, 3}) {
    std::vector<double> x, y;
    for (double e : {0.2, 0.1, 0.05}) {
      DnoConfig a, b;
      a.order = n;
      b.order = n + 1;
      x.push_back(e);
      y.push_back(sobolev_norm(dno_apply(z, ps, e, a, p) - dno_apply(z, ps, e, b, p), 0.0));
    }
    double slope = fit_loglog(x, y).slope;
    o.require(std::abs(slope - (n + 1)) <= 0.3, "slope n=" + std::to_string(n) + " " + fmt("%.3f", slope));
  }
  double secs = since(t0);
  o.require(secs < 60.0, "runtime " + fmt("%.2fs", secs));
  return o;
}

// ---------------------------------------------------------------- 4

Outcome back_substitution() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<oracle::Case> cases;
  cases.push_back(oracle::make_case({{{1.0, 0.0}, {1.8, 0.0}, {-2.0, 0.0}}}, 1.0, 0.0, 1, 32, 2, 3));
  cases.push_back(oracle::make_case({{{1.0, 0.0}, {1.8, 0.0}, {-2.0, 0.0}}}, 3.0, 0.05, 1, 32, 2, 5));
  cases.push_back(oracle::make_case({{{1.0, 0.0}, {0.3, 1.1}, {-0.8, 0.5}}}, 1.0, 0.0, 2, 16, 1, 9));
  cases.push_back(oracle::make_case({{{1.0, 0.0}, {0.3, 1.1}, {-0.8, 0.5}}}, 2.0, 0.1, 2, 16, 1, 13));
  {
    // resonant quartet: e1 e1 conj(e2) carries the phase of e3
    PhysicalParams p = make(1.0, 0.0, 2);
    auto defect = [&](double b) { return omega({1.5, -b}, p) - 2.0 * omega({1.0, 0.0}, p) + omega({0.5, b}, p); };
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (defect(lo) * defect(mid) <= 0.0 ? hi : lo) = mid;
    }
    double b = 0.5 * (lo + hi);
    oracle::Case c;
    c.triple = WaveTriple({{{1.0, 0.0}, {0.5, b}, {1.5, -b}}}, p);
    c.plan = HarmonicPlan::build(c.triple);
    c.macro = Grid(2, 16, 2.0 * kPi);
    c.m = testing_util::random_macro(c.macro, 1, 51, 0.4);
    cases.push_back(c);
  }
  double bs = 0.0, ts = 0.0;
  for (const auto& c : cases) {
    bs = std::max(bs, oracle::back_substitution_defect(c));
    ts = std::max(ts, oracle::two_scale_residual(c));
  }
  double secs = since(t0);
  Outcome o;
  o.require(bs < 1e-11, "2x2 rows " + fmt("%.2e", bs));
  o.require(ts < 1e-11, "two-scale rows " + fmt("%.2e", ts));
  o.require(secs < 30.0, "runtime " + fmt("%.2fs", secs));
  return o;
}

// ---------------------------------------------------------------- 5, 6, 8 share these runs

std::vector<GateReport> g_accepted;
double g_a0 = 0.5, g_hmin = 0.5;

Outcome consistency_slopes() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  ExperimentConfig c = load_config(source_dir() + "/configs/residual.cfg");
  ResidualReport r = run_residual(c);
  o.require(std::abs(r.fit_full.slope - 3.0) <= 0.3, "U_a slope " + fmt("%.3f", r.fit_full.slope));
  o.require(std::abs(r.fit_first.slope - 2.0) <= 0.3, "U_a1 slope " + fmt("%.3f", r.fit_first.slope));
  double secs = since(t0);
  o.require(secs < 300.0, "runtime " + fmt("%.1fs", secs));
  return o;
}

Outcome headline() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  ExperimentConfig base = load_config(source_dir() + "/configs/headline.cfg");
  g_a0 = base.a0;
  g_hmin = base.h_min;
  ConvergenceReport r = run_convergence(base);
  for (const auto& p : r.points) g_accepted.push_back(p.gates);
  double s = r.fit.slope;
  o.require(s >= 2.1 && s <= 2.9, "slope " + fmt("%.4f", s));

  ExperimentConfig fine = base;
  fine.micro_n *= 2;
  ConvergenceReport rf = run_convergence(fine);
  for (const auto& p : rf.points) g_accepted.push_back(p.gates);
  ExperimentConfig o5 = base;
  o5.dno_order = 5;
  ConvergenceReport r5 = run_convergence(o5);
  for (const auto& p : r5.points) g_accepted.push_back(p.gates);
  double dg = std::abs(rf.fit.slope - s) / s, dd = std::abs(r5.fit.slope - s) / s;
  o.require(dg < 0.05, "grid doubling " + fmt("%.4f", rf.fit.slope) + " (" + fmt("%.1e", dg) + ")");
  o.require(dd < 0.05, "dno order 5 " + fmt("%.4f", r5.fit.slope) + " (" + fmt("%.1e", dd) + ")");
  double secs = since(t0);
  o.require(secs < 1800.0, "runtime " + fmt("%.0fs", secs));
  return o;
}

// ---------------------------------------------------------------- 7

Outcome macro_solver() {
  Outcome o;
  {
    Grid g(2, 32, 2.0 * kPi);
    SpectralField u = random_field(g, 12, 3);
    Vec2 v{0.37, -1.21};
    double worst = 0.0;
    SpectralField w = u;
    for (int k = 0; k < 100; ++k) {
      w = step_transport_exact(w, 0.173, v);
      for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(w.coeffs()[i]) - std::abs(u.coeffs()[i])) /
                                    std::max(1.0, std::abs(u.coeffs()[i])));
    }
    o.require(worst < 1e-13, "unitarity " + fmt("%.1e", worst));
  }
  {
    double worst = 0.0;
    for (int dim : {1, 2}) {
      Grid g(dim, 32, 2.0 * kPi);
      PhysicalParams p = make(1.5, 0.0, dim);
      WavePair w{random_field(g, 8, 5, 1.0, true), random_field(g, 8, 6, 1.0, true)};
      SpectralField z(g, true);
      const double e0 = wave_energy(w, p);
      for (int n = 0; n < 500; ++n) w = step_wave(w, 0.02, p, z, z, z);
      worst = std::max(worst, std::abs(wave_energy(w, p) - e0) / e0);
    }
    o.require(worst < 1e-10, "energy over t'=10 " + fmt("%.1e", worst));
  }
  {
    Grid g(1, 16, 2.0 * kPi);
    const Mode K{3, 0};
    const Vec2 v{0.7, 0.0};
    const double a = 2.1, T = 2.0;
    auto forcing = [&](double t) { return SpectralField::mode_field(g, K, std::cos(2.0 * t)); };
    const cplx I(0.0, 1.0);
    cplx exact = std::exp(-I * a * T) * 0.5 *
                 ((std::exp(I * (a + 2.0) * T) - 1.0) / (I * (a + 2.0)) +
                  (std::exp(I * (a - 2.0) * T) - 1.0) / (I * (a - 2.0)));
    std::vector<double> dts, errs;
    for (int n : {8, 16, 32, 64}) {
      SpectralField u(g, false);
      double h = T / n;
      for (int k = 0; k < n; ++k) u = step_transport_forced(u, h, v, forcing, k * h);
      dts.push_back(h);
      errs.push_back(std::abs(u.coeff(K) - exact));
    }
    double order = fit_loglog(dts, errs).slope;
    o.require(std::abs(order - 4.0) <= 0.2, "forced transport order " + fmt("%.3f", order));
  }
  return o;
}

// ---------------------------------------------------------------- 8

int run_cli(const std::string& args) {
  const char* cli = std::getenv("WAVEMOD_CLI");
  if (!cli) return -1;
  std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

Outcome gates() {
  Outcome o;
  bool ok = !g_accepted.empty();
  for (const auto& g : g_accepted) ok = ok && g.hyperbolicity >= g_a0 && g.depth >= g_hmin;
  double amin = 1e300, hmin = 1e300;
  for (const auto& g : g_accepted) {
    amin = std::min(amin, g.hyperbolicity);
    hmin = std::min(hmin, g.depth);
  }
  o.require(ok, std::to_string(g_accepted.size()) + " accepted runs, min a " + fmt("%.4f", amin) + ", min depth " +
                    fmt("%.4f", hmin));
  namespace fs = std::filesystem;
  fs::path out = fs::temp_directory_path() / "wavemod_acceptance_out";
  std::string head = "convergence -c " + source_dir() + "/configs/headline.cfg --set output.dir=" + out.string();
  const char* cases[][2] = {{"gates.a0=2", "hyperbolicity"},
                            {"gates.h_min=0.99", "depth"},
                            {"gates.resonance_tol=10", "non-resonance"}};
  for (const auto& c : cases) {
    int code = run_cli(head + " --set " + c[0]);
    o.require(code == 2, std::string(c[1]) + " violation exit " + std::to_string(code));
  }
  fs::remove_all(out);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {1, "dispersion identities", dispersion_suite},
      {2, "gravity non-resonance", gravity_nonresonance},
      {3, "DNO validation", dno_validation},
      {4, "coefficient back-substitution", back_substitution},
      {5, "consistency slopes", consistency_slopes},
      {6, "headline error scaling", headline},
      {7, "macro-solver properties", macro_solver},
      {8, "hypothesis gates", gates},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
