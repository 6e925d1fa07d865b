#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace wavemod {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using Mode = std::array<int, 2>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm2(const Vec2& a) { return dot(a, a); }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }
inline double quad_form(const Mat2& h, const Vec2& a) {
  return a[0] * (h[0][0] * a[0] + h[0][1] * a[1]) + a[1] * (h[1][0] * a[0] + h[1][1] * a[1]);
}

// Square periodic grid [0,L)^d with n points per axis, row-major flat layout.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, int n, double length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  std::size_t size() const { return size_; }
  double dk() const;
  double dx() const { return length_ / n_; }
  // L^d
  double measure() const;

  // signed mode number of axis index i in [0,n); index n/2 maps to -n/2
  int signed_mode(int i) const { return i < n_ / 2 ? i : i - n_; }
  Mode mode(std::size_t flat) const;
  Vec2 wavenumber(std::size_t flat) const;
  bool is_nyquist(std::size_t flat) const;
  // flat index of a signed mode, reduced modulo n
  std::size_t flat_index(const Mode& m) const;
  // true if m is represented without wrap-around (|m_a| < n/2, or m_a = -n/2)
  bool resolves(const Mode& m) const;
  Vec2 point(std::size_t flat) const;

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && length_ == o.length_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_ = 1;
  int n_ = 0;
  double length_ = 0.0;
  std::size_t size_ = 0;
};

// Fourier coefficients c(k) with u(x) = sum_k c(k) exp(i k.x).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid, bool real = false);
  SpectralField(const Grid& grid, std::vector<cplx> coeffs, bool real);

  static SpectralField from_physical(const Grid& grid, const std::vector<cplx>& values, bool real);
  static SpectralField from_real(const Grid& grid, const std::vector<double>& values);
  static SpectralField from_function(const Grid& grid, const std::function<cplx(const Vec2&)>& f,
                                     bool real);
  // single Fourier mode amp * exp(i m.k0 x)
  static SpectralField mode_field(const Grid& grid, const Mode& m, cplx amp);

  const Grid& grid() const { return grid_; }
  bool is_real() const { return real_; }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }
  cplx coeff(const Mode& m) const { return coeffs_[grid_.flat_index(m)]; }
  cplx& coeff(const Mode& m) { return coeffs_[grid_.flat_index(m)]; }

  std::vector<cplx> physical() const;
  std::vector<double> physical_real() const;

  // mark as real after Hermitian symmetrisation
  SpectralField& enforce_reality();
  void set_real_flag(bool real) { real_ = real; }
  // max |c(-k) - conj c(k)| relative to max |c|
  double hermitian_defect() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx s);
  SpectralField& operator*=(double s);
  SpectralField operator-() const;

  double max_abs_coeff() const;
  double max_abs_physical() const;

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
  bool real_ = false;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx s, SpectralField a);
SpectralField operator*(double s, SpectralField a);

// pointwise complex conjugate of the physical field
SpectralField conj(const SpectralField& u);
// pointwise product via physical space; no truncation
SpectralField multiply(const SpectralField& a, const SpectralField& b);
SpectralField multiply(const SpectralField& a, const SpectralField& b, const SpectralField& c);

using VecField = std::vector<SpectralField>;

SpectralField derivative(const SpectralField& u, int axis);
VecField gradient(const SpectralField& u);
SpectralField divergence(const VecField& v);
SpectralField laplacian(const SpectralField& u);
// a.grad u
SpectralField directional_derivative(const Vec2& a, const SpectralField& u);
SpectralField dot(const VecField& a, const VecField& b);
VecField scale(const SpectralField& s, const VecField& v);
VecField scale(cplx s, const VecField& v);
VecField add(const VecField& a, const VecField& b);

enum class Parity { RealEven, ImagOdd, General };

class Multiplier {
 public:
  using Symbol = std::function<cplx(const Vec2&)>;
  Multiplier(Symbol symbol, Parity parity, std::string name = {});

  cplx operator()(const Vec2& xi) const { return symbol_(xi); }
  Parity parity() const { return parity_; }
  const std::string& name() const { return name_; }
  // symbol on the grid lattice; Nyquist entries adjusted so that real fields stay real
  std::vector<cplx> tabulate(const Grid& grid) const;

  static Multiplier identity();
  // i xi_axis
  static Multiplier partial(int axis);
  // symbol -xi.H xi, i.e. the operator div H grad
  static Multiplier quadratic_form(const Mat2& h, std::string name = {});

 private:
  Symbol symbol_;
  Parity parity_;
  std::string name_;
};

SpectralField apply_multiplier(const Multiplier& f, const SpectralField& u);
// apply a pre-tabulated symbol with the given parity
SpectralField apply_table(const std::vector<cplx>& table, Parity parity, const SpectralField& u);

double sobolev_norm(const SpectralField& u, double s);
SpectralField dealias(const SpectralField& u, double fraction = 2.0 / 3.0);
// zero every mode with |m_axis| > fraction * n/2
void dealias_inplace(const Grid& grid, std::vector<cplx>& coeffs, double fraction);

// integral over the torus of conj(u) v
cplx inner_product(const SpectralField& u, const SpectralField& v);

// binary: uint32 d, uint32 n, f64 L, uint8 reality flag, then interleaved
// real/imag f64 coefficients in flat order, all little-endian.
void write_binary(std::ostream& os, const SpectralField& u);
SpectralField read_binary(std::istream& is);
// CSV rows: k0[,k1],real,imag
void write_csv(std::ostream& os, const SpectralField& u);

}  // namespace wavemod
