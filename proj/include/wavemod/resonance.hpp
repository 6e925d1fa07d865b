#pragma once

#include <string>
#include <vector>

#include "wavemod/harmonics.hpp"

namespace wavemod {

struct ResonanceEntry {
  Harmonic label;
  double relative_defect = 0.0;
  bool passed = false;        // relative defect above tol
  bool near_resonant = false; // relative defect below the warning level
};

// harmonic `label` from I or K carries the same phase as `other`
// (another harmonic, its conjugate, a carrier or the mean field)
struct Coincidence {
  Harmonic label;
  Harmonic other;
};

struct ResonanceReport {
  std::vector<ResonanceEntry> quadratic;
  std::vector<ResonanceEntry> cubic;
  std::vector<Coincidence> coincidences;

  bool all_passed() const;
  bool any_near_resonant() const;
};

constexpr double kResonanceTol = 1e-6;
constexpr double kResonanceWarn = 1e-3;

ResonanceReport check_nonresonance(const WaveTriple& triple, double tol = kResonanceTol,
                                   double warn = kResonanceWarn);

// phases e_a, e_b coincide if xi and omega agree to this relative tolerance
bool same_phase(const HarmonicData& a, const HarmonicData& b, double rel = 1e-12);

// gravity resonance function; throws std::invalid_argument outside x>0, lambda>=0, |c|<=1
double r0(double x, double lambda, double c);
// d r0 / d lambda at c = 1
double r0_dlambda_c1(double x, double lambda);

struct ScanRange {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  std::vector<double> values() const;
};

// "self": n-th harmonic of one wave, defect along k.
// "pair": order 2 combines (k1, +-k2), order 3 combines (k1, k1, +-k2); scanned along k2.
struct ScanRequest {
  ScanRange mu;
  ScanRange inv_bond;
  ScanRange k;
  int order = 2;
  std::string mode = "self";
};

struct ScanRow {
  double mu = 0.0;
  double inv_bond = 0.0;
  std::vector<double> k;
  std::vector<int> signs;
  double defect = 0.0;  // signed relative defect
  bool refined = false; // located by bisection on a sign change
};

// near-resonance loci: sign changes of the defect along the innermost axis (refined by
// bisection) and interior local minima of |defect|
std::vector<ScanRow> scan_resonances(const ScanRequest& req);
// smallest |relative defect| over every scanned grid point
double scan_min_defect(const ScanRequest& req);

}  // namespace wavemod
