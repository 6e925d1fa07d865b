#include "wavemod/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wavemod/error.hpp"
#include "wavemod/fft.hpp"

namespace wavemod {

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid points per axis must be a power of two >= 8");
  if (!(length > 0.0)) throw std::invalid_argument("grid period must be positive");
  size_ = dim == 1 ? std::size_t(n) : std::size_t(n) * std::size_t(n);
}

double Grid::dk() const { return 2.0 * std::numbers::pi / length_; }

double Grid::measure() const { return dim_ == 1 ? length_ : length_ * length_; }

Mode Grid::mode(std::size_t flat) const {
  if (dim_ == 1) return {signed_mode(int(flat)), 0};
  return {signed_mode(int(flat / n_)), signed_mode(int(flat % n_))};
}

Vec2 Grid::wavenumber(std::size_t flat) const {
  Mode m = mode(flat);
  double k = dk();
  return {k * m[0], k * m[1]};
}

bool Grid::is_nyquist(std::size_t flat) const {
  Mode m = mode(flat);
  return m[0] == -n_ / 2 || (dim_ == 2 && m[1] == -n_ / 2);
}

std::size_t Grid::flat_index(const Mode& m) const {
  auto wrap = [this](int v) { return ((v % n_) + n_) % n_; };
  if (dim_ == 1) return std::size_t(wrap(m[0]));
  return std::size_t(wrap(m[0])) * n_ + std::size_t(wrap(m[1]));
}

bool Grid::resolves(const Mode& m) const {
  auto ok = [this](int v) { return v >= -n_ / 2 && v < n_ / 2; };
  return ok(m[0]) && (dim_ == 1 ? m[1] == 0 : ok(m[1]));
}

Vec2 Grid::point(std::size_t flat) const {
  double h = dx();
  if (dim_ == 1) return {h * double(flat), 0.0};
  return {h * double(flat / n_), h * double(flat % n_)};
}

SpectralField::SpectralField(const Grid& grid, bool real)
    : grid_(grid), coeffs_(grid.size(), cplx(0.0)), real_(real) {}

SpectralField::SpectralField(const Grid& grid, std::vector<cplx> coeffs, bool real)
    : grid_(grid), coeffs_(std::move(coeffs)), real_(real) {
  if (coeffs_.size() != grid.size())
    throw std::invalid_argument("coefficient array length does not match grid");
}

SpectralField SpectralField::from_physical(const Grid& grid, const std::vector<cplx>& values,
                                           bool real) {
  if (values.size() != grid.size())
    throw std::invalid_argument("sample array length does not match grid");
  SpectralField u(grid, real);
  fft::forward(grid, values.data(), u.coeffs_.data());
  if (real) u.enforce_reality();
  return u;
}

SpectralField SpectralField::from_real(const Grid& grid, const std::vector<double>& values) {
  std::vector<cplx> v(values.begin(), values.end());
  return from_physical(grid, v, true);
}

SpectralField SpectralField::from_function(const Grid& grid,
                                           const std::function<cplx(const Vec2&)>& f, bool real) {
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.point(i));
  if (real)
    for (auto& x : v) x = x.real();
  return from_physical(grid, v, real);
}

SpectralField SpectralField::mode_field(const Grid& grid, const Mode& m, cplx amp) {
  SpectralField u(grid, false);
  u.coeff(m) = amp;
  return u;
}

std::vector<cplx> SpectralField::physical() const {
  std::vector<cplx> v(coeffs_.size());
  fft::inverse(grid_, coeffs_.data(), v.data());
  return v;
}

std::vector<double> SpectralField::physical_real() const {
  auto v = physical();
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
  return r;
}

SpectralField& SpectralField::enforce_reality() {
  std::vector<cplx> sym(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Mode m = grid_.mode(i);
    cplx partner = coeffs_[grid_.flat_index({-m[0], -m[1]})];
    sym[i] = 0.5 * (coeffs_[i] + std::conj(partner));
  }
  coeffs_ = std::move(sym);
  real_ = true;
  return *this;
}

double SpectralField::hermitian_defect() const {
  double scale = max_abs_coeff();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Mode m = grid_.mode(i);
    cplx partner = coeffs_[grid_.flat_index({-m[0], -m[1]})];
    worst = std::max(worst, std::abs(coeffs_[i] - std::conj(partner)));
  }
  return worst / scale;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (o.grid_ != grid_) throw std::invalid_argument("grid mismatch in field addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  real_ = real_ && o.real_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (o.grid_ != grid_) throw std::invalid_argument("grid mismatch in field subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  real_ = real_ && o.real_;
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  if (s.imag() != 0.0) real_ = false;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField SpectralField::operator-() const {
  SpectralField r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::max_abs_physical() const {
  double m = 0.0;
  for (const auto& v : physical()) m = std::max(m, std::abs(v));
  return m;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx s, SpectralField a) { return a *= s; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField conj(const SpectralField& u) {
  const Grid& g = u.grid();
  std::vector<cplx> c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Mode m = g.mode(i);
    c[i] = std::conj(u.coeffs()[g.flat_index({-m[0], -m[1]})]);
  }
  return SpectralField(g, std::move(c), u.is_real());
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("grid mismatch in field product");
  auto pa = a.physical();
  auto pb = b.physical();
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  if (a.is_real() && b.is_real())
    for (auto& v : pa) v = v.real();
  return SpectralField::from_physical(a.grid(), pa, a.is_real() && b.is_real());
}

SpectralField multiply(const SpectralField& a, const SpectralField& b, const SpectralField& c) {
  return multiply(multiply(a, b), c);
}

SpectralField derivative(const SpectralField& u, int axis) {
  return apply_multiplier(Multiplier::partial(axis), u);
}

VecField gradient(const SpectralField& u) {
  VecField g;
  for (int a = 0; a < u.grid().dim(); ++a) g.push_back(derivative(u, a));
  return g;
}

SpectralField divergence(const VecField& v) {
  if (v.empty()) throw std::invalid_argument("divergence of an empty vector field");
  SpectralField r = derivative(v[0], 0);
  for (std::size_t a = 1; a < v.size(); ++a) r += derivative(v[a], int(a));
  return r;
}

SpectralField laplacian(const SpectralField& u) {
  const Grid& g = u.grid();
  SpectralField r(u);
  for (std::size_t i = 0; i < g.size(); ++i) r.coeffs()[i] *= -norm2(g.wavenumber(i));
  return r;
}

SpectralField directional_derivative(const Vec2& a, const SpectralField& u) {
  Vec2 dir = a;
  Multiplier m([dir](const Vec2& xi) { return cplx(0.0, dot(dir, xi)); }, Parity::ImagOdd,
               "a.grad");
  return apply_multiplier(m, u);
}

SpectralField dot(const VecField& a, const VecField& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("vector field size mismatch");
  SpectralField r = multiply(a[0], b[0]);
  for (std::size_t i = 1; i < a.size(); ++i) r += multiply(a[i], b[i]);
  return r;
}

VecField scale(const SpectralField& s, const VecField& v) {
  VecField r;
  for (const auto& c : v) r.push_back(multiply(s, c));
  return r;
}

VecField scale(cplx s, const VecField& v) {
  VecField r;
  for (const auto& c : v) r.push_back(s * c);
  return r;
}

VecField add(const VecField& a, const VecField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector field size mismatch");
  VecField r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
  return r;
}

Multiplier::Multiplier(Symbol symbol, Parity parity, std::string name)
    : symbol_(std::move(symbol)), parity_(parity), name_(std::move(name)) {}

std::vector<cplx> Multiplier::tabulate(const Grid& grid) const {
  std::vector<cplx> t(grid.size());
  const int half = grid.n() / 2;
  const double dk = grid.dk();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Vec2 xi = grid.wavenumber(i);
    cplx v;
    if (grid.is_nyquist(i) && parity_ == Parity::ImagOdd) {
      v = 0.0;
    } else if (grid.is_nyquist(i) && parity_ == Parity::RealEven) {
      // average over the aliased representatives +-n/2 of each Nyquist axis
      Mode m = grid.mode(i);
      std::vector<Vec2> reps{xi};
      for (int a = 0; a < grid.dim(); ++a) {
        if (m[a] != -half) continue;
        std::size_t cnt = reps.size();
        for (std::size_t r = 0; r < cnt; ++r) {
          Vec2 f = reps[r];
          f[a] = dk * half;
          reps.push_back(f);
        }
      }
      v = 0.0;
      for (const auto& r : reps) v += symbol_(r);
      v /= double(reps.size());
    } else {
      v = symbol_(xi);
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "multiplier '" << name_ << "' is not finite at wavenumber (" << xi[0];
      if (grid.dim() == 2) os << ", " << xi[1];
      os << ")";
      throw SingularSymbolError(os.str());
    }
    t[i] = v;
  }
  return t;
}

Multiplier Multiplier::identity() {
  return Multiplier([](const Vec2&) { return cplx(1.0); }, Parity::RealEven, "identity");
}

Multiplier Multiplier::partial(int axis) {
  return Multiplier([axis](const Vec2& xi) { return cplx(0.0, xi[axis]); }, Parity::ImagOdd,
                    "partial");
}

Multiplier Multiplier::quadratic_form(const Mat2& h, std::string name) {
  return Multiplier([h](const Vec2& xi) { return cplx(-quad_form(h, xi)); }, Parity::RealEven,
                    std::move(name));
}

SpectralField apply_table(const std::vector<cplx>& table, Parity parity, const SpectralField& u) {
  if (table.size() != u.size()) throw std::invalid_argument("symbol table does not match grid");
  std::vector<cplx> c(u.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = table[i] * u.coeffs()[i];
  return SpectralField(u.grid(), std::move(c), u.is_real() && parity != Parity::General);
}

SpectralField apply_multiplier(const Multiplier& f, const SpectralField& u) {
  return apply_table(f.tabulate(u.grid()), f.parity(), u);
}

double sobolev_norm(const SpectralField& u, double s) {
  const Grid& g = u.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double w = s == 0.0 ? 1.0 : std::pow(1.0 + norm2(g.wavenumber(i)), s);
    acc += w * std::norm(u.coeffs()[i]);
  }
  return std::sqrt(acc * g.measure());
}

void dealias_inplace(const Grid& grid, std::vector<cplx>& coeffs, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("dealias fraction must lie in (0,1]");
  if (fraction == 1.0) return;
  const double cut = fraction * (grid.n() / 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Mode m = grid.mode(i);
    if (std::abs(m[0]) > cut || std::abs(m[1]) > cut) coeffs[i] = 0.0;
  }
}

SpectralField dealias(const SpectralField& u, double fraction) {
  SpectralField r(u);
  dealias_inplace(u.grid(), r.coeffs(), fraction);
  return r;
}

cplx inner_product(const SpectralField& u, const SpectralField& v) {
  if (u.grid() != v.grid()) throw std::invalid_argument("grid mismatch in inner product");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u.coeffs()[i]) * v.coeffs()[i];
  return acc * u.grid().measure();
}

namespace {
template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("truncated binary field");
  return v;
}
}  // namespace

void write_binary(std::ostream& os, const SpectralField& u) {
  const Grid& g = u.grid();
  put<std::uint32_t>(os, std::uint32_t(g.dim()));
  put<std::uint32_t>(os, std::uint32_t(g.n()));
  put<double>(os, g.length());
  put<std::uint8_t>(os, u.is_real() ? 1 : 0);
  for (const auto& c : u.coeffs()) {
    put<double>(os, c.real());
    put<double>(os, c.imag());
  }
}

SpectralField read_binary(std::istream& is) {
  int d = int(get<std::uint32_t>(is));
  int n = int(get<std::uint32_t>(is));
  double length = get<double>(is);
  bool real = get<std::uint8_t>(is) != 0;
  Grid g(d, n, length);
  std::vector<cplx> c(g.size());
  for (auto& v : c) {
    double re = get<double>(is);
    double im = get<double>(is);
    v = {re, im};
  }
  return SpectralField(g, std::move(c), real);
}

void write_csv(std::ostream& os, const SpectralField& u) {
  const Grid& g = u.grid();
  os << (g.dim() == 1 ? "k0,real,imag\n" : "k0,k1,real,imag\n");
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    Mode m = g.mode(i);
    os << m[0] << ',';
    if (g.dim() == 2) os << m[1] << ',';
    std::snprintf(buf, sizeof buf, "%.17g", u.coeffs()[i].real());
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", u.coeffs()[i].imag());
    os << buf << '\n';
  }
}

}  // namespace wavemod
