#pragma once

#include "wavemod/dispersion.hpp"
#include "wavemod/spectral.hpp"

namespace wavemod {

struct DnoConfig {
  int order = 4;                   // truncation order of the shape series, 0..8
  double dealias = 2.0 / 3.0;      // applied after every product
  double h_min = 0.5;              // depth guard 1 - |eps zeta|_inf >= h_min

  void validate() const;
};

// |D| tanh(sqrt(mu)|D|)
SpectralField G0(const SpectralField& psi, const PhysicalParams& p);
// -G0(zeta G0 psi) - div(zeta grad psi)
SpectralField G1(const SpectralField& zeta, const SpectralField& psi, const PhysicalParams& p,
                 double dealias = 2.0 / 3.0);
// G0(zeta G0(zeta G0 psi)) + 1/2 Lap(zeta^2 G0 psi) + 1/2 G0(zeta^2 Lap psi)
SpectralField G2(const SpectralField& zeta, const SpectralField& psi, const PhysicalParams& p,
                 double dealias = 2.0 / 3.0);

// terms G_0 .. G_order of the shape expansion of G[eta] psi in powers of eta
std::vector<SpectralField> dno_terms(const SpectralField& eta, const SpectralField& psi,
                                     const PhysicalParams& p, int order, double dealias);

// sum_{m <= order} eps^m G_m[zeta] psi, approximating G[eps zeta] psi;
// DepthViolationError if 1 - eps|zeta|_inf < h_min
SpectralField dno_apply(const SpectralField& zeta, const SpectralField& psi, double eps,
                        const DnoConfig& cfg, const PhysicalParams& p);

// w[zeta] psi = (G[zeta] psi + grad zeta.grad psi)/(1 + |grad zeta|^2)
SpectralField w_velocity(const SpectralField& zeta, const SpectralField& psi, const DnoConfig& cfg,
                         const PhysicalParams& p);

// |D| / (1 + sqrt(mu)|D|)^(1/2)
SpectralField P_multiplier(const SpectralField& u, const PhysicalParams& p);

// 1 - eps |zeta|_inf
double depth_guard(const SpectralField& zeta, double eps);
void check_depth(const SpectralField& zeta, double eps, double h_min);

}  // namespace wavemod
