#pragma once

#include "wavemod/spectral.hpp"

namespace wavemod {

struct PhysicalParams {
  double mu = 1.0;        // shallowness, depth is sqrt(mu)
  double inv_bond = 0.0;  // 1/Bo
  double epsilon = 0.1;   // steepness
  int dim = 1;

  static constexpr double kMuMax = 1e8;

  double sqrt_mu() const;
  // throws std::invalid_argument on a violated invariant
  void validate() const;
};

// |xi| tanh(sqrt(mu)|xi|)
double g0(const Vec2& xi, const PhysicalParams& p);
// 1 + |xi|^2/Bo
double bond_factor(const Vec2& xi, const PhysicalParams& p);
double omega(const Vec2& xi, const PhysicalParams& p);

Vec2 grad_g0(const Vec2& xi, const PhysicalParams& p);
Mat2 hessian_g0(const Vec2& xi, const PhysicalParams& p);
// throw SingularPointError at xi = 0
Vec2 grad_omega(const Vec2& xi, const PhysicalParams& p);
Mat2 hessian_omega(const Vec2& xi, const PhysicalParams& p);

struct WaveComponent {
  Vec2 xi{};
  double omega = 0.0;
  double b = 1.0;
  double g = 0.0;
  Vec2 grad_g{};
  Vec2 group_velocity{};
  Vec2 bo_velocity{};
  Mat2 hess_g{};
  Mat2 hess_omega{};
};

WaveComponent make_wave(const Vec2& xi, const PhysicalParams& p);
// (1/b)(grad omega - (2/Bo)(omega/b) xi)
Vec2 bo_velocity(const WaveComponent& w, const PhysicalParams& p);

// tanh(x)/x, accurate near 0
double tanhc(double x);

}  // namespace wavemod
