#pragma once

#include "wavemod/spectral.hpp"

namespace wavemod {

// U = (zeta, psi) on the microscopic grid at microscopic time t
struct SurfaceState {
  double t = 0.0;
  SpectralField zeta;
  SpectralField psi;
};

}  // namespace wavemod
