#include "wavemod/dispersion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavemod/error.hpp"

namespace wavemod {

double PhysicalParams::sqrt_mu() const { return std::sqrt(mu); }

void PhysicalParams::validate() const {
  if (!(mu >= 1.0 && mu <= kMuMax)) throw std::invalid_argument("mu must lie in [1, mu_max]");
  if (!(inv_bond >= 0.0)) throw std::invalid_argument("inv_bond must be nonnegative");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0,1]");
  if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
}

namespace {

double tanh_clamped(double x) { return x > 40.0 ? 1.0 : std::tanh(x); }

struct Radial {
  double r, t, a;
};

Radial radial(const Vec2& xi, const PhysicalParams& p) {
  double r = std::sqrt(norm2(xi));
  double a = p.sqrt_mu();
  return {r, tanh_clamped(a * r), a};
}

// g0'(r), g0'(r)/r, g0''(r)
void g0_derivs(const Radial& q, double& d1, double& d1_over_r, double& d2) {
  double sech2 = 1.0 - q.t * q.t;
  d1 = q.t + q.a * q.r * sech2;
  d1_over_r = q.a * tanhc(q.a * q.r) + q.a * sech2;
  d2 = 2.0 * q.a * sech2 * (1.0 - q.a * q.r * q.t);
}

Mat2 radial_hessian(const Vec2& xi, double r, double d2, double d1_over_r) {
  Mat2 h{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double proj = r > 0.0 ? xi[i] * xi[j] / (r * r) : 0.0;
      h[i][j] = d2 * proj + d1_over_r * ((i == j ? 1.0 : 0.0) - proj);
    }
  return h;
}

// omega'(r), omega''(r) for r > 0
void omega_derivs(const Vec2& xi, const PhysicalParams& p, double& w, double& d1, double& d2) {
  Radial q = radial(xi, p);
  if (q.r == 0.0) {
    std::ostringstream os;
    os << "derivative of omega requested at xi = 0";
    throw SingularPointError(os.str());
  }
  double gd1, gd1r, gd2;
  g0_derivs(q, gd1, gd1r, gd2);
  double g = q.r * q.t;
  double s = p.inv_bond;
  double b = 1.0 + s * q.r * q.r;
  double bd1 = 2.0 * s * q.r;
  double bd2 = 2.0 * s;
  w = std::sqrt(b * g);
  d1 = (bd1 * g + b * gd1) / (2.0 * w);
  d2 = (bd2 * g + 2.0 * bd1 * gd1 + b * gd2 - 2.0 * d1 * d1) / (2.0 * w);
}

}  // namespace

double tanhc(double x) {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return tanh_clamped(x) / x;
}

double g0(const Vec2& xi, const PhysicalParams& p) {
  Radial q = radial(xi, p);
  return q.r * q.t;
}

double bond_factor(const Vec2& xi, const PhysicalParams& p) { return 1.0 + p.inv_bond * norm2(xi); }

double omega(const Vec2& xi, const PhysicalParams& p) {
  return std::sqrt(bond_factor(xi, p) * g0(xi, p));
}

Vec2 grad_g0(const Vec2& xi, const PhysicalParams& p) {
  Radial q = radial(xi, p);
  double d1, d1r, d2;
  g0_derivs(q, d1, d1r, d2);
  return d1r * xi;
}

Mat2 hessian_g0(const Vec2& xi, const PhysicalParams& p) {
  Radial q = radial(xi, p);
  double d1, d1r, d2;
  g0_derivs(q, d1, d1r, d2);
  return radial_hessian(xi, q.r, d2, d1r);
}

Vec2 grad_omega(const Vec2& xi, const PhysicalParams& p) {
  double w, d1, d2;
  omega_derivs(xi, p, w, d1, d2);
  double r = std::sqrt(norm2(xi));
  return (d1 / r) * xi;
}

Mat2 hessian_omega(const Vec2& xi, const PhysicalParams& p) {
  double w, d1, d2;
  omega_derivs(xi, p, w, d1, d2);
  double r = std::sqrt(norm2(xi));
  return radial_hessian(xi, r, d2, d1 / r);
}

WaveComponent make_wave(const Vec2& xi, const PhysicalParams& p) {
  if (norm2(xi) == 0.0) throw SingularPointError("carrier wave vector must be nonzero");
  WaveComponent w;
  w.xi = xi;
  w.b = bond_factor(xi, p);
  w.g = g0(xi, p);
  w.omega = std::sqrt(w.b * w.g);
  w.grad_g = grad_g0(xi, p);
  w.group_velocity = grad_omega(xi, p);
  w.hess_g = hessian_g0(xi, p);
  w.hess_omega = hessian_omega(xi, p);
  w.bo_velocity = bo_velocity(w, p);
  return w;
}

Vec2 bo_velocity(const WaveComponent& w, const PhysicalParams& p) {
  Vec2 v = w.group_velocity - (2.0 * p.inv_bond * w.omega / w.b) * w.xi;
  return (1.0 / w.b) * v;
}

}  // namespace wavemod
