#include <gtest/gtest.h>

#include <cmath>

#include "oracle/laplace_oracle.hpp"
#include "test_helpers.hpp"
#include "wavemod/dno.hpp"
#include "wavemod/error.hpp"

using namespace wavemod;
using testing_util::kPi;
using testing_util::random_field;
using testing_util::rel_diff;

namespace {

PhysicalParams make(double mu, int dim = 1) {
  PhysicalParams p;
  p.mu = mu;
  p.dim = dim;
  return p;
}

DnoConfig cfg(int order) {
  DnoConfig c;
  c.order = order;
  return c;
}

SpectralField real_band(const Grid& g, int band, unsigned seed, double amp = 1.0) {
  return random_field(g, band, seed, amp, true);
}

double real_inner(const SpectralField& a, const SpectralField& b) { return inner_product(a, b).real(); }

}  // namespace

TEST(G0, Examples) {
  PhysicalParams p = make(1.0);
  Grid g(1, 32, 2.0 * kPi);
  SpectralField c = SpectralField::mode_field(g, {0, 0}, 3.0);
  EXPECT_EQ(G0(c, p).max_abs_coeff(), 0.0);
  SpectralField e = SpectralField::mode_field(g, {1, 0}, 1.0);
  EXPECT_NEAR(std::abs(G0(e, p).coeff({1, 0}) - std::tanh(1.0)), 0.0, 1e-15);
  for (unsigned s = 0; s < 20; ++s) {
    SpectralField u = real_band(Grid(2, 16, 5.0), 7, s);
    EXPECT_GE(real_inner(G0(u, p), u), 0.0);
  }
}

TEST(G1, ConstantSurface) {
  PhysicalParams p = make(1.3);
  Grid g(1, 32, 2.0 * kPi);
  const double c = 0.4;
  SpectralField zeta = SpectralField::mode_field(g, {0, 0}, c);
  for (int k : {1, 3, 5}) {
    SpectralField psi = SpectralField::mode_field(g, {k, 0}, 1.0);
    double gk = g0({double(k), 0.0}, p);
    cplx got = G1(zeta, psi, p).coeff({k, 0});
    EXPECT_NEAR(std::abs(got - (-c * (gk * gk - k * k))), 0.0, 1e-13);
  }
  SpectralField z = real_band(g, 5, 1);
  SpectralField one = SpectralField::mode_field(g, {0, 0}, 1.0);
  EXPECT_LT(G1(z, one, p).max_abs_coeff(), 1e-15);
  EXPECT_LT(G2(z, one, p).max_abs_coeff(), 1e-15);
}

TEST(DnoSeries, LowOrdersMatchExplicitCompositions) {
  PhysicalParams p = make(1.0, 2);
  Grid g(2, 32, 2.0 * kPi);
  SpectralField z = real_band(g, 4, 2, 0.5), psi = real_band(g, 4, 3);
  const double eps = 0.1;
  SpectralField series = dno_apply(z, psi, eps, cfg(2), p);
  SpectralField explicit_ = G0(psi, p) + eps * G1(z, psi, p) + (eps * eps) * G2(z, psi, p);
  EXPECT_LT(rel_diff(series, explicit_), 1e-12);
  EXPECT_LT(rel_diff(dno_apply(z, psi, 0.0, cfg(4), p), G0(psi, p)), 1e-15);
  auto terms = dno_terms(z, psi, p, 2, 2.0 / 3.0);
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_LT(rel_diff(terms[1], G1(z, psi, p)), 1e-13);
  EXPECT_LT(rel_diff(terms[2], G2(z, psi, p)), 1e-13);
}

TEST(DnoSeries, MatchesLaplaceSolveOnSinusoidalSurface) {
  const double eps = 1e-3, mu = 1.0;
  const int n = 32;
  Grid g(1, n, 2.0 * kPi);
  PhysicalParams p = make(mu);
  SpectralField z = SpectralField::from_function(g, [](const Vec2& x) { return cplx(std::cos(x[0])); }, true);
  SpectralField psi = SpectralField::from_function(g, [](const Vec2& x) { return cplx(std::sin(x[0])); }, true);
  auto trace = oracle::laplace_dno([&](double x) { return eps * std::cos(x); },
                                   [&](double x) { return -eps * std::sin(x); },
                                   [](double x) { return std::sin(x); }, mu, 2.0 * kPi, n);
  auto G = dno_apply(z, psi, eps, cfg(2), p).physical_real();
  double err = 0.0;
  for (int j = 0; j < n; ++j) err = std::max(err, std::abs(G[j] - trace.G[j]));
  EXPECT_LT(err, 1e-8);

  // larger surface, higher truncation order against the same solve
  const double big = 0.15;
  SpectralField zb = SpectralField::from_function(
      g, [](const Vec2& x) { return cplx(std::cos(x[0]) + 0.3 * std::sin(2.0 * x[0])); }, true);
  auto tb = oracle::laplace_dno([&](double x) { return big * (std::cos(x) + 0.3 * std::sin(2.0 * x)); },
                                [&](double x) { return big * (-std::sin(x) + 0.6 * std::cos(2.0 * x)); },
                                [](double x) { return std::sin(x); }, mu, 2.0 * kPi, 64);
  Grid g64(1, 64, 2.0 * kPi);
  SpectralField zb64 = SpectralField::from_function(
      g64, [](const Vec2& x) { return cplx(std::cos(x[0]) + 0.3 * std::sin(2.0 * x[0])); }, true);
  SpectralField psi64 = SpectralField::from_function(g64, [](const Vec2& x) { return cplx(std::sin(x[0])); }, true);
  double prev = 1e300;
  for (int order : {2, 4, 8}) {
    auto Gb = dno_apply(zb64, psi64, big, cfg(order), p).physical_real();
    double e = 0.0;
    for (int j = 0; j < 64; ++j) e = std::max(e, std::abs(Gb[j] - tb.G[j]));
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_LT(prev, 1e-7);
}

TEST(DnoSeries, VerticalVelocityMatchesLaplaceSolve) {
  const double amp = 0.02, mu = 2.0;
  const int n = 64;
  Grid g(1, n, 2.0 * kPi);
  PhysicalParams p = make(mu);
  auto eta = [&](double x) { return amp * (std::cos(2.0 * x) - 0.5 * std::sin(3.0 * x)); };
  auto eta_x = [&](double x) { return amp * (-2.0 * std::sin(2.0 * x) - 1.5 * std::cos(3.0 * x)); };
  auto psi = [](double x) { return std::cos(x) + 0.2 * std::sin(4.0 * x); };
  SpectralField z = SpectralField::from_function(g, [&](const Vec2& x) { return cplx(eta(x[0])); }, true);
  SpectralField ps = SpectralField::from_function(g, [&](const Vec2& x) { return cplx(psi(x[0])); }, true);
  auto trace = oracle::laplace_dno(eta, eta_x, psi, mu, 2.0 * kPi, n);
  auto w = w_velocity(z, ps, cfg(6), p).physical_real();
  double err = 0.0;
  for (int j = 0; j < n; ++j) err = std::max(err, std::abs(w[j] - trace.phi_z[j]));
  EXPECT_LT(err, 1e-6);
  EXPECT_LT(rel_diff(w_velocity(SpectralField(g, true), ps, cfg(4), p), G0(ps, p)), 1e-15);
  EXPECT_EQ(w_velocity(z, SpectralField(g, true), cfg(4), p).max_abs_coeff(), 0.0);
}

TEST(DnoSeries, SymmetryPositivityGauge) {
  PhysicalParams p = make(1.0, 2);
  Grid g(2, 64, 2.0 * kPi);
  SpectralField z = real_band(g, 3, 5, 0.3), psi = real_band(g, 3, 6), phi = real_band(g, 3, 7);
  for (int order = 0; order <= 6; ++order) {
    SpectralField a = dno_apply(z, psi, 0.3, cfg(order), p), b = dno_apply(z, phi, 0.3, cfg(order), p);
    double l = real_inner(a, phi), r = real_inner(psi, b);
    EXPECT_LT(std::abs(l - r), 1e-9 * std::max(std::abs(l), 1.0)) << "order " << order;
    EXPECT_GE(real_inner(a, psi), -1e-10);
  }
  SpectralField c = psi + SpectralField::mode_field(g, {0, 0}, 2.5);
  EXPECT_LT(rel_diff(dno_apply(z, c, 0.3, cfg(4), p), dno_apply(z, psi, 0.3, cfg(4), p)), 1e-13);
  // G1 symmetry
  double l = real_inner(G1(z, psi, p), phi), r = real_inner(psi, G1(z, phi, p));
  EXPECT_LT(std::abs(l - r), 1e-10 * std::max(1.0, std::abs(l)));
}

TEST(DnoSeries, OrderConsistencySlopes) {
  PhysicalParams p = make(1.0);
  Grid g(1, 64, 2.0 * kPi);
  SpectralField z = real_band(g, 4, 8), psi = real_band(g, 4, 9);
  for (int n : {2, 3}) {
    std::vector<double> e;
    for (double eps : {0.2, 0.1, 0.05}) {
      SpectralField d = dno_apply(z, psi, eps, cfg(n), p) - dno_apply(z, psi, eps, cfg(n + 1), p);
      e.push_back(sobolev_norm(d, 0.0));
    }
    double slope = std::log(e[0] / e[2]) / std::log(4.0);
    EXPECT_NEAR(slope, n + 1, 0.3);
  }
}

TEST(DnoGuard, DepthViolation) {
  PhysicalParams p = make(1.0);
  Grid g(1, 32, 2.0 * kPi);
  SpectralField z = SpectralField::from_function(g, [](const Vec2& x) { return cplx(std::cos(x[0])); }, true);
  SpectralField psi = z;
  EXPECT_NEAR(depth_guard(z, 0.3), 0.7, 1e-14);
  EXPECT_NO_THROW(dno_apply(z, psi, 0.4, cfg(4), p));
  try {
    dno_apply(z, psi, 0.6, cfg(4), p);
    FAIL() << "guard not enforced";
  } catch (const DepthViolationError& e) {
    EXPECT_NEAR(e.guard(), 0.4, 1e-12);
  }
  DnoConfig bad = cfg(9);
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(PMultiplier, Values) {
  PhysicalParams p = make(1.0);
  Grid g(1, 32, 2.0 * kPi);
  EXPECT_EQ(P_multiplier(SpectralField::mode_field(g, {0, 0}, 1.0), p).max_abs_coeff(), 0.0);
  EXPECT_NEAR(std::abs(P_multiplier(SpectralField::mode_field(g, {1, 0}, 1.0), p).coeff({1, 0})),
              1.0 / std::sqrt(2.0), 1e-15);
  for (unsigned s = 0; s < 10; ++s) {
    Grid g2(2, 16, 3.0);
    SpectralField u = real_band(g2, 7, s);
    for (double sv : {0.0, 1.0, 2.5}) {
      double lhs = sobolev_norm(P_multiplier(u, p), sv);
      auto gr = gradient(u);
      double rhs = std::hypot(sobolev_norm(gr[0], sv), sobolev_norm(gr[1], sv));
      EXPECT_LE(lhs, rhs);
    }
  }
}
