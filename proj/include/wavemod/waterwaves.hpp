#pragma once

#include <functional>
#include <vector>

#include "wavemod/dno.hpp"
#include "wavemod/surface.hpp"

namespace wavemod {

struct Tendency {
  SpectralField zeta_t, psi_t;
};

// (d_t zeta, d_t psi) of the scaled water-wave system with steepness p.epsilon
Tendency rhs(const SurfaceState& U, const PhysicalParams& p, const DnoConfig& cfg);

struct IntegrationOptions {
  double dt = 0.02;
  std::vector<double> snapshots;  // microscopic times in (0, T_end]; T_end itself is always kept
  // optional per-snapshot callback; if set, snapshots are passed here instead of stored
  std::function<void(const SurfaceState&)> on_snapshot;
};

// classical RK4; NumericalAbort on non-finite states, DepthViolationError via the guard
std::vector<SurfaceState> integrate_ww(const SurfaceState& U0, double T_end, const PhysicalParams& p,
                                       const DnoConfig& cfg, const IntegrationOptions& opt);
SurfaceState rk4_step(const SurfaceState& U, double dt, const PhysicalParams& p, const DnoConfig& cfg);

struct Hyperbolicity {
  SpectralField a;   // 1 - b1(eps U)
  double min = 0.0;
};

// b1 evaluated on the physical state V = (zeta, psi) (eps = 1 convention)
SpectralField b1(const SurfaceState& V, const PhysicalParams& p, const DnoConfig& cfg);
Hyperbolicity hyperbolicity(const SurfaceState& U, double eps, const PhysicalParams& p,
                            const DnoConfig& cfg);

// sqrt(|zeta_U - zeta_V|^2_{H^{N-1}} + |grad(psi_U - psi_V)|^2_{H^{N-2}})
double error_norm(const SurfaceState& U, const SurfaceState& V, int N);

// E^N_eps(U) with t0 = 3/2 (a squared quantity)
double energy_norm(const SurfaceState& U, int N, double eps, const PhysicalParams& p,
                   const DnoConfig& cfg);

// Hamiltonian 1/2 int (psi G[eps zeta] psi + zeta^2 + 1/Bo surface term), scaled consistently
double hamiltonian(const SurfaceState& U, const PhysicalParams& p, const DnoConfig& cfg);

}  // namespace wavemod
