#include "wavemod/waterwaves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavemod/error.hpp"

namespace wavemod {

namespace {

SpectralField prod(const SpectralField& a, const SpectralField& b, double frac) {
  return dealias(multiply(a, b), frac);
}

// pointwise map of a real field in physical space
template <class F>
SpectralField pointwise(const SpectralField& u, F&& f, double frac) {
  auto v = u.physical_real();
  for (auto& x : v) x = f(x);
  return dealias(SpectralField::from_real(u.grid(), v), frac);
}

// a / (1 + b) pointwise, b >= 0
SpectralField quotient(const SpectralField& a, const SpectralField& b, double frac) {
  auto va = a.physical_real();
  auto vb = b.physical_real();
  for (std::size_t i = 0; i < va.size(); ++i) va[i] /= (1.0 + vb[i]);
  return dealias(SpectralField::from_real(a.grid(), va), frac);
}

bool finite(const SpectralField& f) {
  for (const auto& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

Tendency rhs(const SurfaceState& U, const PhysicalParams& p, const DnoConfig& cfg) {
  const double eps = p.epsilon, sigma = p.inv_bond, fr = cfg.dealias;
  SpectralField G = dno_apply(U.zeta, U.psi, eps, cfg, p);
  VecField gz = gradient(U.zeta);
  VecField gp = gradient(U.psi);
  SpectralField gz2 = dealias(dot(gz, gz), fr);
  SpectralField gp2 = dealias(dot(gp, gp), fr);
  SpectralField gzp = dealias(dot(gz, gp), fr);

  SpectralField num = G + eps * gzp;
  SpectralField psi_t = -U.zeta - (0.5 * eps) * gp2 +
                        (0.5 * eps) * quotient(prod(num, num, fr), (eps * eps) * gz2, fr);
  if (sigma != 0.0) {
    SpectralField inv = pointwise((eps * eps) * gz2, [](double x) { return 1.0 / std::sqrt(1.0 + x); }, fr);
    VecField flux;
    for (const auto& c : gz) flux.push_back(prod(c, inv, fr));
    psi_t += sigma * divergence(flux);
  }
  G.set_real_flag(true);
  psi_t.set_real_flag(true);
  return {G, psi_t};
}

SurfaceState rk4_step(const SurfaceState& U, double dt, const PhysicalParams& p, const DnoConfig& cfg) {
  auto shift = [&](const Tendency& k, double h) {
    SurfaceState s;
    s.t = U.t + h;
    s.zeta = U.zeta + h * k.zeta_t;
    s.psi = U.psi + h * k.psi_t;
    return s;
  };
  Tendency k1 = rhs(U, p, cfg);
  Tendency k2 = rhs(shift(k1, dt / 2.0), p, cfg);
  Tendency k3 = rhs(shift(k2, dt / 2.0), p, cfg);
  Tendency k4 = rhs(shift(k3, dt), p, cfg);
  SurfaceState out;
  out.t = U.t + dt;
  out.zeta = U.zeta + (dt / 6.0) * (k1.zeta_t + 2.0 * k2.zeta_t + 2.0 * k3.zeta_t + k4.zeta_t);
  out.psi = U.psi + (dt / 6.0) * (k1.psi_t + 2.0 * k2.psi_t + 2.0 * k3.psi_t + k4.psi_t);
  out.zeta.enforce_reality();
  out.psi.enforce_reality();
  return out;
}

std::vector<SurfaceState> integrate_ww(const SurfaceState& U0, double T_end, const PhysicalParams& p,
                                       const DnoConfig& cfg, const IntegrationOptions& opt) {
  if (!(opt.dt > 0.0)) throw std::invalid_argument("time step must be positive");
  std::vector<double> ts;
  for (double t : opt.snapshots)
    if (t > U0.t && t < T_end) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  ts.push_back(T_end);

  std::vector<SurfaceState> out;
  SurfaceState cur = U0;
  if (T_end <= U0.t) {
    if (opt.on_snapshot) opt.on_snapshot(cur); else out.push_back(cur);
    return out;
  }
  for (double target : ts) {
    double span = target - cur.t;
    long steps = std::max(1L, long(std::ceil(span / opt.dt - 1e-9)));
    double h = span / double(steps);
    for (long k = 0; k < steps; ++k) {
      cur = rk4_step(cur, h, p, cfg);
      if (!finite(cur.zeta) || !finite(cur.psi)) {
        std::ostringstream os;
        os << "non-finite surface state at t = " << cur.t;
        throw NumericalAbort(os.str(), cur.t);
      }
    }
    cur.t = target;
    if (opt.on_snapshot) opt.on_snapshot(cur); else out.push_back(cur);
  }
  return out;
}

SpectralField b1(const SurfaceState& V, const PhysicalParams& p, const DnoConfig& cfg) {
  const double fr = cfg.dealias;
  const SpectralField& Z = V.zeta;
  const SpectralField& Psi = V.psi;
  SpectralField G = dno_apply(Z, Psi, 1.0, cfg, p);
  SpectralField w = w_velocity(Z, Psi, cfg, p);
  VecField gz = gradient(Z);
  VecField gp = gradient(Psi);
  SpectralField gz2 = dealias(dot(gz, gz), fr);

  SpectralField num = G + dealias(dot(gz, gp), fr);
  SpectralField N2 = Z + 0.5 * dealias(dot(gp, gp), fr) - 0.5 * quotient(prod(num, num, fr), gz2, fr);

  VecField Vv;
  for (std::size_t a = 0; a < gp.size(); ++a) Vv.push_back(gp[a] - prod(w, gz[a], fr));

  SpectralField out = w_velocity(Z, N2, cfg, p);
  out -= dealias(dot(Vv, gradient(w)), fr);
  SpectralField frac = dno_apply(Z, prod(w, G, fr), 1.0, cfg, p);
  frac += prod(G, divergence(Vv), fr);
  frac += prod(dealias(dot(gz, gradient(G)), fr), w, fr);
  out += quotient(frac, gz2, fr);
  out.set_real_flag(true);
  return out;
}

Hyperbolicity hyperbolicity(const SurfaceState& U, double eps, const PhysicalParams& p,
                            const DnoConfig& cfg) {
  check_depth(U.zeta, eps, cfg.h_min);
  SurfaceState V{U.t, eps * U.zeta, eps * U.psi};
  Hyperbolicity h;
  SpectralField one(U.zeta.grid(), true);
  one.coeff({0, 0}) = 1.0;
  h.a = one - b1(V, p, cfg);
  auto v = h.a.physical_real();
  h.min = *std::min_element(v.begin(), v.end());
  return h;
}

double error_norm(const SurfaceState& U, const SurfaceState& V, int N) {
  if (U.zeta.grid() != V.zeta.grid() || U.psi.grid() != V.psi.grid())
    throw std::invalid_argument("error_norm: grids differ");
  SpectralField dz = U.zeta - V.zeta;
  SpectralField dp = U.psi - V.psi;
  double s = std::pow(sobolev_norm(dz, N - 1), 2);
  for (const auto& c : gradient(dp)) s += std::pow(sobolev_norm(c, N - 2), 2);
  return std::sqrt(s);
}

namespace {

SpectralField partial_alpha(const SpectralField& u, int a0, int a1) {
  SpectralField r = u;
  for (int i = 0; i < a0; ++i) r = derivative(r, 0);
  for (int i = 0; i < a1; ++i) r = derivative(r, 1);
  return r;
}

}  // namespace

double energy_norm(const SurfaceState& U, int N, double eps, const PhysicalParams& p,
                   const DnoConfig& cfg) {
  const double fr = cfg.dealias;
  const int d = U.zeta.grid().dim();
  double e = std::pow(sobolev_norm(P_multiplier(U.psi, p), 3.0), 2);
  SpectralField w = w_velocity(eps * U.zeta, eps * U.psi, cfg, p);
  for (int a0 = 0; a0 <= N; ++a0)
    for (int a1 = 0; a1 <= (d == 2 ? N - a0 : 0); ++a1) {
      SpectralField dz = partial_alpha(U.zeta, a0, a1);
      e += std::pow(sobolev_norm(dz, 0.0), 2);
      SpectralField pa = (a0 + a1 == 0) ? U.psi : partial_alpha(U.psi, a0, a1) - prod(w, dz, fr);
      e += std::pow(sobolev_norm(P_multiplier(pa, p), 0.0), 2);
    }
  return e;
}

double hamiltonian(const SurfaceState& U, const PhysicalParams& p, const DnoConfig& cfg) {
  const double eps = p.epsilon;
  SpectralField G = dno_apply(U.zeta, U.psi, eps, cfg, p);
  double h = 0.5 * (inner_product(U.psi, G).real() + inner_product(U.zeta, U.zeta).real());
  if (p.inv_bond != 0.0) {
    VecField gz = gradient(U.zeta);
    auto v = dot(gz, gz).physical_real();
    double s = 0.0;
    for (double x : v) s += std::sqrt(1.0 + eps * eps * x) - 1.0;
    h += p.inv_bond / (eps * eps) * s * U.zeta.grid().measure() / double(v.size());
  }
  return h;
}

}  // namespace wavemod
