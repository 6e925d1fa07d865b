#pragma once

#include <functional>
#include <vector>

#include "wavemod/waterwaves.hpp"

namespace wavemod {

// approximate solution at microscopic time t (unscaled U_a or U_{a,1})
using ReconstructionProvider = std::function<SurfaceState(double)>;

struct ResidualNorms {
  double t = 0.0;
  double l2_zeta = 0.0, l2_psi = 0.0;  // L2 of both components
  double hs_zeta = 0.0, hs_psi = 0.0;  // |r1|_{H^s}, |P r2|_{H^s}
  double l2() const;                   // sqrt(l2_zeta^2 + l2_psi^2)
};

struct ResidualOptions {
  double step = 0.0;           // differencing step; 0 selects residual_step()
  double sobolev = 1.0;        // s of the H^s norms
  double measure_scale = 1.0;  // multiplies every norm (eps^{d/2} for the macroscopic measure)
};

// step h making the 6th-order differencing error ~ h^6 omega_max^7 / 140 below 1e-3 eps^3
double residual_step(double eps, double omega_max);

// d_t U + N(U) with the time derivative by 6th-order centred differences
Tendency residual_field(const ReconstructionProvider& U, double t, double h, const PhysicalParams& p,
                        const DnoConfig& cfg);

std::vector<ResidualNorms> residual_evaluator(const ReconstructionProvider& U,
                                              const std::vector<double>& times,
                                              const PhysicalParams& p, const DnoConfig& cfg,
                                              double omega_max, const ResidualOptions& opt = {});

}  // namespace wavemod
