#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_helpers.hpp"
#include "wavemod/error.hpp"
#include "wavemod/fft.hpp"

using namespace wavemod;
using testing_util::kPi;
using testing_util::random_field;
using testing_util::rel_diff;

namespace {

SpectralField smooth_real(const Grid& g, unsigned seed) {
  return random_field(g, g.n() / 4, seed, 1.0, true);
}

}  // namespace

TEST(Grid, Lattice) {
  Grid g(1, 16, 2.0 * kPi);
  EXPECT_EQ(g.signed_mode(8), -8);
  EXPECT_EQ(g.signed_mode(7), 7);
  EXPECT_DOUBLE_EQ(g.dk(), 1.0);
  EXPECT_TRUE(g.is_nyquist(8));
  EXPECT_EQ(g.flat_index({-3, 0}), 13u);
  EXPECT_THROW(Grid(1, 4, 1.0), std::invalid_argument);
  EXPECT_THROW(Grid(1, 16, -1.0), std::invalid_argument);
  Grid g2(2, 8, 4.0);
  EXPECT_DOUBLE_EQ(g2.measure(), 16.0);
  EXPECT_DOUBLE_EQ(g2.wavenumber(g2.flat_index({1, -2}))[1], -2.0 * 2.0 * kPi / 4.0);
}

TEST(Multiplier, IdentityLeavesFieldUnchanged) {
  Grid g(2, 16, 2.0 * kPi);
  SpectralField u = random_field(g, 8, 3);
  SpectralField v = apply_multiplier(Multiplier::identity(), u);
  EXPECT_EQ(rel_diff(u, v), 0.0);
}

TEST(Multiplier, TanhSymbolOnUnitMode) {
  Grid g(1, 32, 2.0 * kPi);
  Multiplier f([](const Vec2& k) { double r = std::hypot(k[0], k[1]); return cplx(r * std::tanh(r)); },
               Parity::RealEven, "G0");
  SpectralField u = SpectralField::mode_field(g, {1, 0}, 1.0);
  SpectralField v = apply_multiplier(f, u);
  EXPECT_NEAR(v.coeff({1, 0}).real(), 0.7615941559557649, 1e-15);
  EXPECT_NEAR(v.coeff({1, 0}).imag(), 0.0, 1e-15);
}

TEST(Multiplier, DerivativeOfSine) {
  Grid g(1, 32, 2.0 * kPi);
  SpectralField u = SpectralField::from_function(g, [](const Vec2& x) { return cplx(std::sin(x[0])); }, true);
  SpectralField du = apply_multiplier(Multiplier::partial(0), u);
  auto p = du.physical_real();
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(p[i] - std::cos(g.point(i)[0])));
  EXPECT_LT(err, 1e-12);
  EXPECT_TRUE(du.is_real());
}

TEST(Multiplier, SingularSymbolIsReported) {
  Grid g(1, 16, 2.0 * kPi);
  Multiplier inv([](const Vec2& k) { return cplx(1.0 / std::abs(k[0])); }, Parity::RealEven, "1/|D|");
  SpectralField u = random_field(g, 4, 1);
  EXPECT_THROW(apply_multiplier(inv, u), SingularSymbolError);
}

TEST(Multiplier, Linearity) {
  Grid g(2, 16, 2.0 * kPi);
  SpectralField u = random_field(g, 8, 1), v = random_field(g, 8, 2);
  Multiplier f = Multiplier::quadratic_form({{{1.0, 0.3}, {0.3, 2.0}}});
  cplx a(0.7, -1.2), b(-0.4, 2.5);
  SpectralField lhs = apply_multiplier(f, a * u + b * v);
  SpectralField rhs = a * apply_multiplier(f, u) + b * apply_multiplier(f, v);
  EXPECT_LT(rel_diff(lhs, rhs), 1e-12);
}

TEST(Multiplier, RealEvenKeepsRealFieldsReal) {
  for (int dim : {1, 2}) {
    Grid g(dim, 32, 2.0 * kPi);
    SpectralField u = SpectralField::from_real(g, smooth_real(g, 5).physical_real());
    // unresolved content up to the Nyquist mode
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    std::vector<double> noisy = u.physical_real();
    for (auto& x : noisy) x += nd(rng);
    SpectralField w = SpectralField::from_real(g, noisy);
    Multiplier f([](const Vec2& k) { return cplx(std::sqrt(1.0 + k[0] * k[0] + 3.0 * k[1] * k[1])); },
                 Parity::RealEven);
    for (const auto* x : {&u, &w}) {
      SpectralField v = apply_multiplier(f, *x);
      auto p = v.physical();
      double im = 0.0, re = 0.0;
      for (auto c : p) {
        im = std::max(im, std::abs(c.imag()));
        re = std::max(re, std::abs(c.real()));
      }
      EXPECT_LT(im, 1e-12 * re);
      EXPECT_LT(v.hermitian_defect(), 1e-13);
    }
  }
}

TEST(Sobolev, UnitModeExamples) {
  Grid g(1, 32, 2.0 * kPi);
  SpectralField u = SpectralField::mode_field(g, {1, 0}, 1.0);
  EXPECT_NEAR(sobolev_norm(u, 0.0), std::sqrt(2.0 * kPi), 1e-14);
  EXPECT_NEAR(sobolev_norm(u, 1.0), 2.0 * std::sqrt(kPi), 1e-14);
  EXPECT_EQ(sobolev_norm(SpectralField(g, true), 2.0), 0.0);
}

TEST(Sobolev, L2MatchesQuadrature) {
  for (int dim : {1, 2}) {
    Grid g(dim, 32, 7.0);
    SpectralField u = smooth_real(g, 9);
    auto p = u.physical_real();
    double q = 0.0;
    for (double x : p) q += x * x;
    q *= std::pow(g.dx(), dim);
    EXPECT_NEAR(sobolev_norm(u, 0.0), std::sqrt(q), 1e-10 * std::sqrt(q));
  }
}

TEST(Dealias, Examples) {
  Grid g(1, 16, 2.0 * kPi);
  std::vector<cplx> c(16, cplx(1.0, 0.0));
  SpectralField u(g, c, false);
  EXPECT_EQ(rel_diff(dealias(u, 1.0), u), 0.0);
  SpectralField d = dealias(u, 2.0 / 3.0);
  double kept = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    int m = std::abs(g.mode(i)[0]);
    EXPECT_EQ(d.coeffs()[i], m >= 6 ? cplx(0.0) : cplx(1.0)) << "mode " << g.mode(i)[0];
    kept += std::norm(d.coeffs()[i]);
  }
  EXPECT_DOUBLE_EQ(kept, 11.0);  // |k| <= 5
}

TEST(Dealias, RetainedEnergyOfWhiteField) {
  Grid g(1, 64, 2.0 * kPi);
  SpectralField u = random_field(g, 64, 17);
  for (auto& c : u.coeffs()) c = std::polar(1.0, std::arg(c) + 0.1);
  SpectralField d = dealias(u);
  double expect = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(g.mode(i)[0]) <= 21) expect += std::norm(u.coeffs()[i]);
  EXPECT_NEAR(std::pow(sobolev_norm(d, 0.0), 2) / g.measure(), expect, 1e-12 * expect);
}

TEST(Transform, RoundTrip) {
  for (int dim : {1, 2}) {
    Grid g(dim, 32, 2.0 * kPi);
    SpectralField u = random_field(g, 16, 23);
    SpectralField v = SpectralField::from_physical(g, u.physical(), false);
    EXPECT_LT(rel_diff(u, v), 1e-12);
    SpectralField r = smooth_real(g, 29);
    EXPECT_LT(rel_diff(r, SpectralField::from_real(g, r.physical_real())), 1e-12);
  }
}

TEST(Transform, InPlaceKernel) {
  Grid g(2, 16, 1.0);
  SpectralField u = random_field(g, 8, 3);
  std::vector<cplx> buf = u.coeffs();
  fft::inverse(g, buf.data(), buf.data());
  fft::forward(g, buf.data(), buf.data());
  EXPECT_LT(rel_diff(u, SpectralField(g, buf, false)), 1e-13);
}

TEST(Products, MultiplyMatchesPointwise) {
  Grid g(1, 64, 2.0 * kPi);
  SpectralField a = random_field(g, 10, 1), b = random_field(g, 10, 2);
  SpectralField c = multiply(a, b);
  auto pa = a.physical(), pb = b.physical(), pc = c.physical();
  double err = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) err = std::max(err, std::abs(pa[i] * pb[i] - pc[i]));
  EXPECT_LT(err, 1e-13);
  SpectralField cc = conj(a);
  auto pcc = cc.physical();
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_NEAR(std::abs(pcc[i] - std::conj(pa[i])), 0.0, 1e-14);
}

TEST(Products, InnerProductIsParseval) {
  Grid g(2, 16, 3.0);
  SpectralField u = random_field(g, 8, 4);
  EXPECT_NEAR(inner_product(u, u).real(), std::pow(sobolev_norm(u, 0.0), 2), 1e-12);
}

TEST(Calculus, VectorIdentities) {
  Grid g(2, 32, 2.0 * kPi);
  SpectralField u = smooth_real(g, 31);
  EXPECT_LT(rel_diff(divergence(gradient(u)), laplacian(u)), 1e-13);
  Vec2 a{0.3, -1.7};
  auto gr = gradient(u);
  EXPECT_LT(rel_diff(directional_derivative(a, u), a[0] * gr[0] + a[1] * gr[1]), 1e-13);
}

TEST(Serialization, BinaryRoundTrip) {
  Grid g(2, 8, 2.5);
  SpectralField u = random_field(g, 4, 8, 1.0, true);
  std::stringstream ss;
  write_binary(ss, u);
  std::string bytes = ss.str();
  EXPECT_EQ(bytes.size(), 4u + 4u + 8u + 1u + 16u * g.size());
  EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 2u);  // little-endian d
  SpectralField v = read_binary(ss);
  EXPECT_EQ(v.grid(), g);
  EXPECT_TRUE(v.is_real());
  EXPECT_EQ(rel_diff(u, v), 0.0);
}

TEST(Serialization, Csv) {
  Grid g(1, 8, 2.0 * kPi);
  SpectralField u = SpectralField::mode_field(g, {-2, 0}, cplx(0.5, -0.25));
  std::ostringstream os;
  write_csv(os, u);
  std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 9);  // header + rows
  EXPECT_NE(s.find("-2,0.5,-0.25"), std::string::npos);
}
