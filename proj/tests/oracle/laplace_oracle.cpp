#include "oracle/laplace_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

constexpr double kPi = 3.141592653589793238462643;

// basis column b: 0 -> constant, k in 1..n/2-1 -> cos (2k-1) and sin (2k), n/2 -> cos
struct Basis {
  int n;
  double L, h;
  int modes() const { return n; }
  int wave(int b) const { return b == 0 ? 0 : (b == n - 1 ? n / 2 : (b + 1) / 2); }
  bool is_sin(int b) const { return b != 0 && b != n - 1 && b % 2 == 0; }
  double kappa(int b) const { return 2.0 * kPi * wave(b) / L; }
  // vertical profile and its z-derivative at height z
  double prof(int b, double z) const {
    double k = kappa(b);
    if (k == 0.0) return 1.0;
    return std::exp(k * z) * (1.0 + std::exp(-2.0 * k * (z + h))) / (1.0 + std::exp(-2.0 * k * h));
  }
  double prof_z(int b, double z) const {
    double k = kappa(b);
    if (k == 0.0) return 0.0;
    return k * std::exp(k * z) * (1.0 - std::exp(-2.0 * k * (z + h))) / (1.0 + std::exp(-2.0 * k * h));
  }
  double trig(int b, double x) const {
    double k = kappa(b);
    return is_sin(b) ? std::sin(k * x) : std::cos(k * x);
  }
  double trig_x(int b, double x) const {
    double k = kappa(b);
    return is_sin(b) ? k * std::cos(k * x) : -k * std::sin(k * x);
  }
};

}  // namespace

SurfaceTrace laplace_dno(const std::function<double(double)>& eta,
                         const std::function<double(double)>& eta_x,
                         const std::function<double(double)>& psi, double mu, double L, int n) {
  if (n < 4 || n % 2) throw std::invalid_argument("laplace_dno: n must be even");
  Basis B{n, L, std::sqrt(mu)};
  Eigen::MatrixXd M(n, n);
  Eigen::VectorXd rhs(n);
  SurfaceTrace out;
  for (int j = 0; j < n; ++j) {
    double x = L * j / n;
    out.x.push_back(x);
    double z = eta(x);
    for (int b = 0; b < n; ++b) M(j, b) = B.prof(b, z) * B.trig(b, x);
    rhs(j) = psi(x);
  }
  Eigen::VectorXd c = M.fullPivLu().solve(rhs);
  for (int j = 0; j < n; ++j) {
    double x = out.x[j], z = eta(x);
    double pz = 0.0, px = 0.0;
    for (int b = 0; b < n; ++b) {
      pz += c(b) * B.prof_z(b, z) * B.trig(b, x);
      px += c(b) * B.prof(b, z) * B.trig_x(b, x);
    }
    out.phi_z.push_back(pz);
    out.phi_x.push_back(px);
    out.G.push_back(pz - eta_x(x) * px);
  }
  return out;
}

}  // namespace oracle
