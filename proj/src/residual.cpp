#include "wavemod/residual.hpp"

#include <cmath>

namespace wavemod {

double ResidualNorms::l2() const { return std::sqrt(l2_zeta * l2_zeta + l2_psi * l2_psi); }

double residual_step(double eps, double omega_max) {
  double w = std::max(omega_max, 1e-3);
  return std::pow(1e-3 * eps * eps * eps * 140.0 / std::pow(w, 7.0), 1.0 / 6.0);
}

Tendency residual_field(const ReconstructionProvider& U, double t, double h, const PhysicalParams& p,
                        const DnoConfig& cfg) {
  static const double w[6] = {-1.0, 9.0, -45.0, 45.0, -9.0, 1.0};
  static const int off[6] = {-3, -2, -1, 1, 2, 3};
  SurfaceState c = U(t);
  SpectralField dz(c.zeta.grid(), true), dp(c.psi.grid(), true);
  for (int k = 0; k < 6; ++k) {
    SurfaceState s = U(t + off[k] * h);
    dz += (w[k] / (60.0 * h)) * s.zeta;
    dp += (w[k] / (60.0 * h)) * s.psi;
  }
  Tendency f = rhs(c, p, cfg);
  return {dz - f.zeta_t, dp - f.psi_t};
}

std::vector<ResidualNorms> residual_evaluator(const ReconstructionProvider& U,
                                              const std::vector<double>& times,
                                              const PhysicalParams& p, const DnoConfig& cfg,
                                              double omega_max, const ResidualOptions& opt) {
  const double h = opt.step > 0.0 ? opt.step : residual_step(p.epsilon, omega_max);
  std::vector<ResidualNorms> out;
  for (double t : times) {
    Tendency r = residual_field(U, t, h, p, cfg);
    ResidualNorms n;
    n.t = t;
    n.l2_zeta = opt.measure_scale * sobolev_norm(r.zeta_t, 0.0);
    n.l2_psi = opt.measure_scale * sobolev_norm(r.psi_t, 0.0);
    n.hs_zeta = opt.measure_scale * sobolev_norm(r.zeta_t, opt.sobolev);
    n.hs_psi = opt.measure_scale * sobolev_norm(P_multiplier(r.psi_t, p), opt.sobolev);
    out.push_back(n);
  }
  return out;
}

}  // namespace wavemod
