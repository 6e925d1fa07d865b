#pragma once

#include <array>
#include <string>
#include <vector>

#include "wavemod/dispersion.hpp"

namespace wavemod {

// Harmonic e_n = e_1^{n_1} e_2^{n_2} e_3^{n_3}, negative powers meaning conjugates.
struct Harmonic {
  std::array<int, 3> n{};

  int order() const;
  Harmonic conj() const { return {{-n[0], -n[1], -n[2]}}; }
  // harmonic index notation, e.g. "1,1", "1,-2", "2,3,-1"
  std::string name() const;

  friend Harmonic operator+(const Harmonic& a, const Harmonic& b) {
    return {{a.n[0] + b.n[0], a.n[1] + b.n[1], a.n[2] + b.n[2]}};
  }
  friend bool operator==(const Harmonic& a, const Harmonic& b) { return a.n == b.n; }
  friend bool operator<(const Harmonic& a, const Harmonic& b) { return a.n < b.n; }
};

Harmonic carrier(int j);  // j = 0,1,2
Harmonic mean_harmonic();
// parse "1,-2" style notation
Harmonic parse_harmonic(const std::string& s);

// representatives of the second-order set I:
// (1,1),(2,2),(3,3),(1,2),(1,-2),(1,3),(1,-3),(2,3),(2,-3)
const std::vector<Harmonic>& second_order_set();
// the third-order set K in the order (1,1,1),(2,2,2),(3,3,3),(1,1,+-2),(1,1,+-3),
// (2,2,+-3),(2,2,+-1),(3,3,+-1),(3,3,+-2),(1,2,3),(1,2,-3),(1,3,-2),(2,3,-1)
const std::vector<Harmonic>& third_order_set();

struct HarmonicData {
  Harmonic label;
  Vec2 xi{};
  double omega = 0.0;  // signed sum of carrier frequencies
  double b = 1.0;
  double g = 0.0;
  Vec2 grad_g{};
  Mat2 hess_g{};
  // omega^2 - b g
  double defect() const { return omega * omega - b * g; }
  // |defect| / max(1, omega^2)
  double relative_defect() const;
};

class WaveTriple {
 public:
  WaveTriple() = default;
  // throws std::invalid_argument if two carriers coincide or one vanishes
  WaveTriple(const std::array<Vec2, 3>& xi, const PhysicalParams& p);

  const WaveComponent& wave(int j) const { return waves_[j]; }
  const std::array<WaveComponent, 3>& waves() const { return waves_; }
  const PhysicalParams& params() const { return params_; }
  HarmonicData harmonic(const Harmonic& h) const;

 private:
  std::array<WaveComponent, 3> waves_{};
  PhysicalParams params_{};
};

}  // namespace wavemod
