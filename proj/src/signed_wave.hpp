#pragma once

// Internal helpers shared by the coefficient sources.

#include <array>
#include <cstdlib>

#include "wavemod/coefficients.hpp"

namespace wavemod::detail {

inline const cplx kI{0.0, 1.0};

// Wave s = +-(j+1): the carrier e_j or its conjugate. The conjugate carries -xi_j,
// -grad g0(xi_j) and conjugated envelopes.
struct SignedWave {
  Vec2 xi{};
  double g = 0.0;
  Vec2 grad_g{};
  SpectralField psi0, zeta0, psi1, zeta1;
};

inline SignedWave signed_wave(const WaveTriple& t, const HarmonicAmplitudes& h, int s) {
  int j = std::abs(s) - 1;
  const auto& w = t.wave(j);
  SignedWave out;
  double sg = s > 0 ? 1.0 : -1.0;
  out.xi = sg * w.xi;
  out.g = w.g;
  out.grad_g = sg * w.grad_g;
  auto pick = [&](const SpectralField& f) { return s > 0 ? f : conj(f); };
  out.psi0 = pick(h.psi0[j]);
  out.zeta0 = pick(h.zeta0[j]);
  if (!h.psi1[j].empty()) out.psi1 = pick(h.psi1[j]);
  if (!h.zeta1[j].empty()) out.zeta1 = pick(h.zeta1[j]);
  return out;
}

// signed carrier indices of a second-order label, e.g. "1,-2" -> {1,-2}
inline std::array<int, 2> pair_indices(const Harmonic& m) {
  std::array<int, 2> out{};
  int c = 0;
  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < std::abs(m.n[j]); ++r) out[c++] = m.n[j] > 0 ? j + 1 : -(j + 1);
  return out;
}

inline SpectralField zeros_like(const SpectralField& f) { return SpectralField(f.grid(), false); }

}  // namespace wavemod::detail
