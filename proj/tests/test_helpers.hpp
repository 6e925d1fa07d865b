#pragma once

#include <cmath>
#include <random>

#include "wavemod/coefficients.hpp"
#include "wavemod/modulation.hpp"
#include "wavemod/spectral.hpp"

namespace testing_util {

using namespace wavemod;

constexpr double kPi = 3.141592653589793238462643;

// random complex (or real) field with modes |m_axis| <= band
inline SpectralField random_field(const Grid& g, int band, unsigned seed, double amp = 1.0, bool real = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralField f(g, false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Mode m = g.mode(i);
    if (std::abs(m[0]) > band || std::abs(m[1]) > band) continue;
    double re = u(rng), im = u(rng);
    f.coeffs()[i] = amp * cplx(re, im) / (1.0 + m[0] * m[0] + m[1] * m[1]);
  }
  if (real) f.enforce_reality();
  return f;
}

inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  double s = std::max(a.max_abs_coeff(), b.max_abs_coeff());
  SpectralField d = a - b;
  return s == 0.0 ? d.max_abs_coeff() : d.max_abs_coeff() / s;
}

inline MacroFields random_macro(const Grid& g, int band, unsigned seed, double amp = 0.5) {
  MacroFields m;
  for (int j = 0; j < 3; ++j) {
    m.psi0[j] = random_field(g, band, seed + 11 * j, amp);
    m.psi1[j] = random_field(g, band, seed + 101 + 7 * j, amp);
  }
  m.psi00 = random_field(g, band, seed + 1001, amp, true);
  m.psi00_t = random_field(g, band, seed + 2002, amp, true);
  return m;
}

}  // namespace testing_util
