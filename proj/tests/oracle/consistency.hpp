#pragma once

// End-to-end checks of the harmonic expansion against the two-scale oracle, shared by the
// unit tests and the acceptance binary.

#include <array>

#include "wavemod/coefficients.hpp"
#include "wavemod/modulation.hpp"

namespace oracle {

struct Case {
  wavemod::WaveTriple triple;
  wavemod::Grid macro;
  wavemod::HarmonicPlan plan;
  wavemod::MacroFields m;
};

Case make_case(const std::array<wavemod::Vec2, 3>& xi, double mu, double inv_bond, int dim, int n, int band,
               unsigned seed);

// Feeds the full expansion (with analytic t'-derivatives) into the direct two-scale expansion
// of the water-wave equations and returns the largest coefficient of orders 0..2 of both rows,
// relative to the size of the individual terms.
double two_scale_residual(const Case& c, bool verbose = false, bool drop_forcing = false);

// largest relative defect of the 2x2 harmonic systems at orders eps and eps^2, rebuilt from
// the explicit row forms
double back_substitution_defect(const Case& c);

}  // namespace oracle
