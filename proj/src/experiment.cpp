#include "wavemod/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "wavemod/error.hpp"
#include "wavemod/resonance.hpp"

namespace wavemod {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> snapshot_times(const ExperimentConfig& c) {
  long K = std::lround(c.T0 * c.snapshots_per_unit);
  std::vector<double> t;
  for (long k = 0; k <= K; ++k) t.push_back(std::min(c.T0, double(k) / c.snapshots_per_unit));
  if (t.back() < c.T0) t.push_back(c.T0);
  return t;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_format(v[i]);
  return s;
}

}  // namespace

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  if (x.size() < 3) throw std::invalid_argument("fit_loglog: at least three points required");
  SlopeFit f;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw std::invalid_argument("fit_loglog: points must be finite and positive");
    f.log_x.push_back(std::log(x[i]));
    f.log_y.push_back(std::log(y[i]));
  }
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += f.log_x[i];
    sy += f.log_y[i];
    sxx += f.log_x[i] * f.log_x[i];
    sxy += f.log_x[i] * f.log_y[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("fit_loglog: abscissae coincide");
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.residuals.push_back(f.log_y[i] - (f.intercept + f.slope * f.log_x[i]));
  return f;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int nt = workers <= 0 ? n : std::min(n, workers);
  std::vector<std::exception_ptr> errs(n);
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  if (nt == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < nt; ++k) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

ScaleSetup make_setup(const ExperimentConfig& c, int M) {
  c.validate();
  ScaleSetup s;
  s.M = M;
  s.eps = 1.0 / M;
  s.params = c.params(M);
  s.params.validate();
  s.triple = WaveTriple(c.carriers, s.params);
  s.macro = Grid(c.dim, c.macro_n, kTwoPi);
  s.micro = Grid(c.dim, c.micro_points(M), kTwoPi * M);
  s.dno.order = c.dno_order;
  s.dno.h_min = c.h_min;
  return s;
}

std::array<EnvelopeSpec, 3> seeded_envelopes(const ExperimentConfig& c) {
  auto env = c.envelope;
  for (int j = 0; j < 3; ++j) env[j].seed = c.seed * 3u + unsigned(j);
  return env;
}

ModulationSolver make_solver(const ExperimentConfig& c, const ScaleSetup& s) {
  CoeffOptions opt;
  opt.gate = c.near_gate;
  return ModulationSolver(s.triple, initial_state(s.macro, seeded_envelopes(c)), opt);
}

double max_frequency(const WaveTriple& t) {
  double w = 0.0;
  for (int j = 0; j < 3; ++j) w = std::max(w, std::abs(t.wave(j).omega));
  for (const auto* set : {&second_order_set(), &third_order_set()})
    for (const auto& h : *set) w = std::max(w, std::abs(t.harmonic(h).omega));
  return w;
}

GateReport measure_gates(const ExperimentConfig& c, const ScaleSetup& s, const SurfaceState& U0) {
  GateReport g;
  ResonanceReport r = check_nonresonance(s.triple, c.resonance_tol);
  g.min_defect = std::numeric_limits<double>::infinity();
  for (const auto* v : {&r.quadratic, &r.cubic})
    for (const auto& e : *v) g.min_defect = std::min(g.min_defect, e.relative_defect);
  g.resonance_ok = r.all_passed();
  g.depth = depth_guard(U0.zeta, s.eps);
  if (g.depth > 0.0) {
    DnoConfig d = s.dno;
    d.h_min = std::min(d.h_min, g.depth);
    g.hyperbolicity = hyperbolicity(U0, s.eps, s.params, d).min;
  } else {
    g.hyperbolicity = -std::numeric_limits<double>::infinity();
  }
  return g;
}

GateReport check_gates(const ExperimentConfig& c, const ScaleSetup& s, const SurfaceState& U0) {
  GateReport g = measure_gates(c, s, U0);
  std::ostringstream os;
  if (!g.resonance_ok) {
    os << "non-resonance violated: smallest relative defect " << g.min_defect << " < " << c.resonance_tol;
    throw GateFailure("non-resonance", os.str());
  }
  if (!(g.depth >= c.h_min)) {
    os << "depth gate violated at t = 0: 1 - eps|zeta0|_inf = " << g.depth << " < h_min = " << c.h_min;
    throw GateFailure("depth", os.str());
  }
  if (!(g.hyperbolicity >= c.a0)) {
    os << "hyperbolicity violated at t = 0: min a = " << g.hyperbolicity << " < a0 = " << c.a0;
    throw GateFailure("hyperbolicity", os.str());
  }
  return g;
}

// ---------------------------------------------------------------- convergence

ConvergencePoint convergence_point(const ExperimentConfig& c, int M) {
  ScaleSetup s = make_setup(c, M);
  ModulationSolver solver = make_solver(c, s);
  const std::vector<double> tm = snapshot_times(c);
  std::vector<MacroState> states = solver.integrate(c.T0, c.dt_macro, tm);

  std::vector<SurfaceState> approx;
  for (const auto& st : states) {
    Expansion ex = solver.expansion(st, Stage::First);
    approx.push_back(reconstruct(s.triple, solver.plan(), ex.amp, ApproxOrder::First, M, s.micro, M * st.t));
  }
  Expansion ex0 = solver.expansion(states.front(), Stage::Full);
  SurfaceState U0 = reconstruct(s.triple, solver.plan(), ex0.amp, ApproxOrder::Full, M, s.micro, 0.0);

  ConvergencePoint pt;
  pt.M = M;
  pt.eps = s.eps;
  pt.micro_n = s.micro.n();
  pt.gates = check_gates(c, s, U0);
  pt.times.resize(tm.size());
  pt.errors.resize(tm.size(), kNaN);
  pt.times[0] = 0.0;
  pt.errors[0] = s.eps * error_norm(U0, approx[0], c.error_N);

  IntegrationOptions io;
  io.dt = c.dt;
  for (std::size_t k = 1; k + 1 < tm.size(); ++k) io.snapshots.push_back(M * tm[k]);
  std::size_t next = 1;
  auto dump = [&](const SurfaceState& U, std::size_t k) {
    if (!c.binary) return;
    std::filesystem::create_directories(c.output_dir);
    std::ostringstream name;
    name << c.output_prefix << "_convergence_M" << M << "_" << k << ".bin";
    write_fields((std::filesystem::path(c.output_dir) / name.str()).string(), {&U.zeta, &U.psi});
  };
  dump(U0, 0);
  io.on_snapshot = [&](const SurfaceState& U) {
    if (next >= tm.size()) return;
    dump(U, next);
    pt.times[next] = U.t;
    pt.errors[next] = s.eps * error_norm(U, approx[next], c.error_N);
    ++next;
  };
  if (tm.size() > 1) integrate_ww(U0, M * c.T0, s.params, s.dno, io);
  pt.sup_error = 0.0;
  for (double e : pt.errors) pt.sup_error = std::max(pt.sup_error, e);
  return pt;
}

ConvergenceReport run_convergence(const ExperimentConfig& c) {
  c.validate();
  if (c.inv_bond != 0.0) throw ConfigError("convergence study requires the gravity case 1/Bo = 0", 0, "params.inv_bond");
  ConvergenceReport rep;
  rep.points.resize(c.M.size());
  parallel_for(int(c.M.size()), c.workers, [&](int i) { rep.points[i] = convergence_point(c, c.M[i]); });
  std::vector<double> x, y;
  for (const auto& p : rep.points) {
    x.push_back(p.eps);
    y.push_back(p.sup_error);
  }
  bool fit = x.size() >= 3 && std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
  if (fit) rep.fit = fit_loglog(x, y);
  else rep.fit.slope = kNaN;
  return rep;
}

CsvTable ConvergenceReport::snapshots() const {
  CsvTable t;
  t.header = {"M", "epsilon", "t", "t_macro", "error"};
  for (const auto& p : points)
    for (std::size_t k = 0; k < p.times.size(); ++k)
      t.add({long(p.M), p.eps, p.times[k], p.times[k] * p.eps, p.errors[k]});
  return t;
}

CsvTable ConvergenceReport::summary() const {
  CsvTable t;
  t.header = {"M", "epsilon", "micro_n", "sup_error", "depth", "hyperbolicity", "min_defect",
              "fit_residual", "slope", "intercept"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    double r = i < fit.residuals.size() ? fit.residuals[i] : kNaN;
    t.add({long(p.M), p.eps, long(p.micro_n), p.sup_error, p.gates.depth, p.gates.hyperbolicity,
           p.gates.min_defect, r, fit.slope, fit.intercept});
  }
  return t;
}

// ---------------------------------------------------------------- residual

ResidualPoint residual_point(const ExperimentConfig& c, int M) {
  ScaleSetup s = make_setup(c, M);
  ModulationSolver solver = make_solver(c, s);
  const double wmax = max_frequency(s.triple);
  const double h = residual_step(s.eps, wmax);

  std::vector<double> times = c.residual_times;
  std::sort(times.begin(), times.end());
  // stencil points reach 3h to either side; each provider call starts from a base state
  // shortly before the first of them
  std::vector<double> bases;
  for (double t : times) bases.push_back(std::max(0.0, t - 4.0 * h / M));
  std::vector<MacroState> base = solver.integrate(c.T0, c.dt_macro, bases);

  ResidualPoint pt;
  pt.M = M;
  pt.eps = s.eps;
  {
    Expansion ex0 = solver.expansion(solver.initial(), Stage::Full);
    pt.gates = measure_gates(c, s, reconstruct(s.triple, solver.plan(), ex0.amp, ApproxOrder::Full, M, s.micro, 0.0));
  }
  ResidualOptions ro;
  ro.step = h;
  ro.measure_scale = std::pow(s.eps, 0.5 * c.dim);

  for (std::size_t r = 0; r < times.size(); ++r) {
    if (times[r] * M - 3.0 * h < 0.0)
      throw ConfigError("residual time too close to t = 0 for the differencing stencil", 0, "run.residual_times");
    for (ApproxOrder order : {ApproxOrder::Full, ApproxOrder::First}) {
      ReconstructionProvider U = [&, order](double t) {
        MacroState st = solver.advance(base[r], t / M, c.dt_macro);
        Expansion ex = solver.expansion(st, order == ApproxOrder::Full ? Stage::Full : Stage::First);
        return reconstruct(s.triple, solver.plan(), ex.amp, order, M, s.micro, t);
      };
      auto n = residual_evaluator(U, {M * times[r]}, s.params, s.dno, wmax, ro);
      (order == ApproxOrder::Full ? pt.full : pt.first).push_back(n.front());
    }
  }
  for (const auto& n : pt.full) pt.sup_full = std::max(pt.sup_full, n.l2());
  for (const auto& n : pt.first) pt.sup_first = std::max(pt.sup_first, n.l2());
  return pt;
}

ResidualReport run_residual(const ExperimentConfig& c) {
  c.validate();
  ResidualReport rep;
  rep.points.resize(c.M.size());
  parallel_for(int(c.M.size()), c.workers, [&](int i) { rep.points[i] = residual_point(c, c.M[i]); });
  std::vector<double> x, yf, y1;
  for (const auto& p : rep.points) {
    x.push_back(p.eps);
    yf.push_back(p.sup_full);
    y1.push_back(p.sup_first);
  }
  auto positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return a > 0.0; });
  };
  rep.fit_full.slope = rep.fit_first.slope = kNaN;
  if (x.size() >= 3 && positive(yf)) rep.fit_full = fit_loglog(x, yf);
  if (x.size() >= 3 && positive(y1)) rep.fit_first = fit_loglog(x, y1);
  return rep;
}

CsvTable ResidualReport::table() const {
  CsvTable t;
  t.header = {"M", "epsilon", "order", "t", "l2_zeta", "l2_psi", "hs_zeta", "hs_psi", "l2"};
  for (const auto& p : points)
    for (int o = 0; o < 2; ++o)
      for (const auto& n : o == 0 ? p.full : p.first)
        t.add({long(p.M), p.eps, std::string(o == 0 ? "U_a" : "U_a1"), n.t, n.l2_zeta, n.l2_psi, n.hs_zeta,
               n.hs_psi, n.l2()});
  return t;
}

CsvTable ResidualReport::summary() const {
  CsvTable t;
  t.header = {"M", "epsilon", "sup_U_a", "sup_U_a1", "fit_residual_U_a", "fit_residual_U_a1", "slope_U_a",
              "slope_U_a1", "depth", "hyperbolicity", "min_defect"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    double rf = i < fit_full.residuals.size() ? fit_full.residuals[i] : kNaN;
    double r1 = i < fit_first.residuals.size() ? fit_first.residuals[i] : kNaN;
    t.add({long(p.M), p.eps, p.sup_full, p.sup_first, rf, r1, fit_full.slope, fit_first.slope, p.gates.depth,
           p.gates.hyperbolicity, p.gates.min_defect});
  }
  return t;
}

// ---------------------------------------------------------------- simulate, dumps

void write_fields(const std::string& path, const std::vector<const SpectralField*>& fields) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  for (const auto* u : fields) write_binary(f, *u);
  if (!f) throw Error("write failed for '" + path + "'");
}

void write_macro_state(const std::string& path, const MacroState& s) {
  write_fields(path, {&s.psi0[0], &s.psi0[1], &s.psi0[2], &s.psi1[0], &s.psi1[1], &s.psi1[2], &s.psi00,
                      &s.psi00_t});
}

std::vector<SimulationSnapshot> run_simulation(const ExperimentConfig& c) {
  ScaleSetup s = make_setup(c, c.M.front());
  ModulationSolver solver = make_solver(c, s);
  std::vector<SimulationSnapshot> out;
  for (auto& st : solver.integrate(c.T0, c.dt_macro, snapshot_times(c))) out.push_back({st.t, std::move(st)});
  return out;
}

CsvTable simulation_table(const std::vector<SimulationSnapshot>& snaps) {
  CsvTable t;
  t.header = {"t_macro", "psi01", "psi02", "psi03", "psi00", "psi00_t", "psi11", "psi12", "psi13"};
  for (const auto& s : snaps) {
    const auto& m = s.state;
    t.add({s.t, sobolev_norm(m.psi0[0], 0), sobolev_norm(m.psi0[1], 0), sobolev_norm(m.psi0[2], 0),
           sobolev_norm(m.psi00, 0), sobolev_norm(m.psi00_t, 0), sobolev_norm(m.psi1[0], 0),
           sobolev_norm(m.psi1[1], 0), sobolev_norm(m.psi1[2], 0)});
  }
  return t;
}

CsvTable coefficient_dump(const ExperimentConfig& c) {
  ScaleSetup s = make_setup(c, c.M.front());
  ModulationSolver solver = make_solver(c, s);
  Expansion ex = solver.expansion(solver.initial(), Stage::Full);
  const auto& a = ex.amp;
  CsvTable t;
  t.header = {"quantity", "harmonic", "k0", "k1", "real", "imag"};
  auto emit = [&](const std::string& q, const std::string& h, const SpectralField& f) {
    if (f.empty()) return;
    for (std::size_t i = 0; i < f.size(); ++i) {
      cplx v = f.coeffs()[i];
      if (v == cplx(0.0)) continue;
      Mode m = f.grid().mode(i);
      t.add({q, h, long(m[0]), long(m[1]), v.real(), v.imag()});
    }
  };
  for (int j = 0; j < 3; ++j) {
    std::string h = carrier(j).name();
    emit("psi0", h, a.psi0[j]);
    emit("zeta0", h, a.zeta0[j]);
    emit("zeta1", h, a.zeta1[j]);
    emit("zeta2", h, a.zeta2[j]);
    emit("C", h, ex.cd->C[j]);
    emit("D", h, ex.cd->D[j]);
    emit("P", h, ex.cd->P[j]);
    emit("Q", h, ex.cd->Q[j]);
    emit("E", h, ex.forcing->E[j]);
    emit("F", h, ex.forcing->F[j]);
  }
  std::string mean = mean_harmonic().name();
  emit("B0", mean, a.B0);
  emit("zeta10", mean, a.zeta10);
  emit("zeta20", mean, a.zeta20);
  emit("C0", mean, ex.cd->C0);
  emit("D0", mean, ex.cd->D0);
  for (const auto& [h, fp] : a.first) {
    emit("zeta1", h.name(), fp.zeta);
    emit("psi1", h.name(), fp.psi);
  }
  for (const auto& [h, fp] : a.second) {
    emit("zeta2", h.name(), fp.zeta);
    emit("psi2", h.name(), fp.psi);
  }
  for (const auto& [h, f] : ex.cd->Cn) emit("C", h.name(), f);
  for (const auto& [h, f] : ex.cd->Dn) emit("D", h.name(), f);
  return t;
}

CsvTable dispersion_table(const PhysicalParams& p, double kmin, double kmax, int count) {
  p.validate();
  if (count < 1) throw std::invalid_argument("dispersion table needs at least one point");
  CsvTable t;
  t.header = {"xi", "omega", "g", "b", "group_velocity", "bo_velocity", "omega_xx"};
  for (int i = 0; i < count; ++i) {
    double k = count == 1 ? kmin : kmin + (kmax - kmin) * i / (count - 1);
    Vec2 xi{k, 0.0};
    if (k == 0.0) {
      t.add({k, 0.0, 0.0, 1.0, kNaN, kNaN, kNaN});
      continue;
    }
    WaveComponent w = make_wave(xi, p);
    t.add({k, w.omega, w.g, w.b, w.group_velocity[0], w.bo_velocity[0], w.hess_omega[0][0]});
  }
  return t;
}

CsvTable resonance_table(const ScanRequest& req) {
  CsvTable t;
  t.header = {"mu", "inv_bond", "k", "signs", "defect", "refined"};
  for (const auto& r : scan_resonances(req))
    t.add({r.mu, r.inv_bond, join_doubles(r.k), join_ints(r.signs), r.defect, long(r.refined)});
  return t;
}

}  // namespace wavemod
