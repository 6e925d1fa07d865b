#include "wavemod/dno.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavemod/error.hpp"

namespace wavemod {

void DnoConfig::validate() const {
  if (order < 0 || order > 8) throw std::invalid_argument("DNO order must be in 0..8");
  if (!(dealias > 0.0 && dealias <= 1.0)) throw std::invalid_argument("dealias fraction must be in (0,1]");
  if (!(h_min > 0.0 && h_min < 1.0)) throw std::invalid_argument("h_min must be in (0,1)");
}

namespace {

SpectralField prod(const SpectralField& a, const SpectralField& b, double frac) {
  return dealias(multiply(a, b), frac);
}

// tabulated |k| and tanh(sqrt(mu)|k|) on one grid
struct Symbols {
  std::vector<double> k, th;
  Symbols(const Grid& g, const PhysicalParams& p) : k(g.size()), th(g.size()) {
    const double a = p.sqrt_mu();
    for (std::size_t i = 0; i < g.size(); ++i) {
      k[i] = std::sqrt(norm2(g.wavenumber(i)));
      double x = a * k[i];
      th[i] = x > 40.0 ? 1.0 : std::tanh(x);
    }
  }
  // L_n = |D|^n, times tanh(sqrt(mu)|D|) for odd n
  SpectralField L(int n, const SpectralField& f) const {
    SpectralField out = f;
    auto& c = out.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      double s = std::pow(k[i], n);
      if (n % 2 == 1) s *= th[i];
      c[i] *= s;
    }
    return out;
  }
};

}  // namespace

SpectralField G0(const SpectralField& psi, const PhysicalParams& p) {
  return Symbols(psi.grid(), p).L(1, psi);
}

SpectralField G1(const SpectralField& zeta, const SpectralField& psi, const PhysicalParams& p,
                 double frac) {
  SpectralField a = G0(prod(zeta, G0(psi, p), frac), p);
  VecField gz = gradient(psi);
  for (auto& c : gz) c = prod(zeta, c, frac);
  return -a - divergence(gz);
}

SpectralField G2(const SpectralField& zeta, const SpectralField& psi, const PhysicalParams& p,
                 double frac) {
  SpectralField g0psi = G0(psi, p);
  SpectralField z2 = prod(zeta, zeta, frac);
  SpectralField t1 = G0(prod(zeta, G0(prod(zeta, g0psi, frac), p), frac), p);
  SpectralField t2 = 0.5 * laplacian(prod(z2, g0psi, frac));
  SpectralField t3 = 0.5 * G0(prod(z2, laplacian(psi), frac), p);
  return t1 + t2 + t3;
}

std::vector<SpectralField> dno_terms(const SpectralField& eta, const SpectralField& psi,
                                     const PhysicalParams& p, int order, double frac) {
  if (order < 0 || order > 8) throw std::invalid_argument("DNO order must be in 0..8");
  if (eta.grid() != psi.grid()) throw std::invalid_argument("DNO inputs on different grids");
  const Symbols S(psi.grid(), p);
  const bool real = eta.is_real() && psi.is_real();

  // eta^k / k!
  std::vector<SpectralField> ep(order + 2);
  for (int k = 1; k <= order + 1; ++k)
    ep[k] = k == 1 ? eta : (1.0 / k) * prod(ep[k - 1], eta, frac);

  // traces f_m of the potential's order-m part at z = 0, fixed by phi(x, eta) = psi
  std::vector<SpectralField> f(order + 1);
  f[0] = psi;
  for (int m = 1; m <= order; ++m) {
    SpectralField s(psi.grid(), real);
    for (int k = 1; k <= m; ++k) s += prod(ep[k], S.L(k, f[m - k]), frac);
    f[m] = -s;
  }

  std::vector<SpectralField> G(order + 1);
  for (int n = 0; n <= order; ++n) {
    SpectralField g = S.L(1, f[n]);
    for (int k = 1; k <= n; ++k) g += prod(ep[k], S.L(k + 1, f[n - k]), frac);
    // grad(eta^{k+1}/(k+1)!) . grad L_k f_m, m + k = n - 1
    for (int k = 0; k <= n - 1; ++k) {
      VecField a = gradient(ep[k + 1]);
      VecField b = gradient(S.L(k, f[n - 1 - k]));
      g -= dealias(dot(a, b), frac);
    }
    if (real) g.set_real_flag(true);
    G[n] = g;
  }
  return G;
}

double depth_guard(const SpectralField& zeta, double eps) { return 1.0 - eps * zeta.max_abs_physical(); }

void check_depth(const SpectralField& zeta, double eps, double h_min) {
  double g = depth_guard(zeta, eps);
  if (!(g >= h_min)) {
    std::ostringstream os;
    os << "depth guard violated: 1 - eps|zeta|_inf = " << g << " < h_min = " << h_min;
    throw DepthViolationError(os.str(), g);
  }
}

SpectralField dno_apply(const SpectralField& zeta, const SpectralField& psi, double eps,
                        const DnoConfig& cfg, const PhysicalParams& p) {
  cfg.validate();
  check_depth(zeta, eps, cfg.h_min);
  if (eps == 0.0 || cfg.order == 0) return G0(psi, p);
  auto G = dno_terms(eps * zeta, psi, p, cfg.order, cfg.dealias);
  SpectralField out = G[0];
  for (std::size_t m = 1; m < G.size(); ++m) out += G[m];
  return out;
}

SpectralField w_velocity(const SpectralField& zeta, const SpectralField& psi, const DnoConfig& cfg,
                         const PhysicalParams& p) {
  SpectralField g = dno_apply(zeta, psi, 1.0, cfg, p);
  VecField gz = gradient(zeta);
  SpectralField num = g + dealias(dot(gz, gradient(psi)), cfg.dealias);
  SpectralField den = dealias(dot(gz, gz), cfg.dealias);
  auto n = num.physical();
  auto d = den.physical();
  for (std::size_t i = 0; i < n.size(); ++i) n[i] /= (1.0 + d[i].real());
  return SpectralField::from_physical(zeta.grid(), n, zeta.is_real() && psi.is_real());
}

SpectralField P_multiplier(const SpectralField& u, const PhysicalParams& p) {
  const double a = p.sqrt_mu();
  Multiplier m([a](const Vec2& xi) {
                 double k = std::sqrt(norm2(xi));
                 return cplx(k / std::sqrt(1.0 + a * k), 0.0);
               },
               Parity::RealEven, "P");
  return apply_multiplier(m, u);
}

}  // namespace wavemod
