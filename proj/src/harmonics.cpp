#include "wavemod/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace wavemod {

int Harmonic::order() const { return std::abs(n[0]) + std::abs(n[1]) + std::abs(n[2]); }

std::string Harmonic::name() const {
  std::vector<int> idx;
  for (int j = 0; j < 3; ++j)
    for (int c = 0; c < n[j]; ++c) idx.push_back(j + 1);
  for (int j = 0; j < 3; ++j)
    for (int c = 0; c < -n[j]; ++c) idx.push_back(-(j + 1));
  if (idx.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  return os.str();
}

Harmonic carrier(int j) {
  Harmonic h;
  h.n[j] = 1;
  return h;
}

Harmonic mean_harmonic() { return Harmonic{}; }

Harmonic parse_harmonic(const std::string& s) {
  Harmonic h;
  if (s == "0") return h;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = std::stoi(tok);
    if (v == 0 || std::abs(v) > 3) throw std::invalid_argument("bad harmonic index: " + s);
    h.n[std::abs(v) - 1] += v > 0 ? 1 : -1;
  }
  return h;
}

const std::vector<Harmonic>& second_order_set() {
  static const std::vector<Harmonic> set = {
      parse_harmonic("1,1"), parse_harmonic("2,2"),  parse_harmonic("3,3"),
      parse_harmonic("1,2"), parse_harmonic("1,-2"), parse_harmonic("1,3"),
      parse_harmonic("1,-3"), parse_harmonic("2,3"), parse_harmonic("2,-3")};
  return set;
}

const std::vector<Harmonic>& third_order_set() {
  static const std::vector<Harmonic> set = {
      parse_harmonic("1,1,1"),  parse_harmonic("2,2,2"),  parse_harmonic("3,3,3"),
      parse_harmonic("1,1,2"),  parse_harmonic("1,1,-2"), parse_harmonic("1,1,3"),
      parse_harmonic("1,1,-3"), parse_harmonic("2,2,3"),  parse_harmonic("2,2,-3"),
      parse_harmonic("2,2,1"),  parse_harmonic("2,2,-1"), parse_harmonic("3,3,1"),
      parse_harmonic("3,3,-1"), parse_harmonic("3,3,2"),  parse_harmonic("3,3,-2"),
      parse_harmonic("1,2,3"),  parse_harmonic("1,2,-3"), parse_harmonic("1,3,-2"),
      parse_harmonic("2,3,-1")};
  return set;
}

double HarmonicData::relative_defect() const {
  return std::abs(defect()) / std::max(1.0, omega * omega);
}

WaveTriple::WaveTriple(const std::array<Vec2, 3>& xi, const PhysicalParams& p) : params_(p) {
  for (int j = 0; j < 3; ++j) {
    if (norm2(xi[j]) == 0.0) throw std::invalid_argument("carrier wave vectors must be nonzero");
    waves_[j] = make_wave(xi[j], p);
  }
  for (int j = 0; j < 3; ++j)
    for (int i = j + 1; i < 3; ++i)
      if (xi[j] == xi[i]) throw std::invalid_argument("carrier wave vectors must be distinct");
}

HarmonicData WaveTriple::harmonic(const Harmonic& h) const {
  HarmonicData d;
  d.label = h;
  for (int j = 0; j < 3; ++j) {
    d.xi = d.xi + double(h.n[j]) * waves_[j].xi;
    d.omega += h.n[j] * waves_[j].omega;
  }
  d.b = bond_factor(d.xi, params_);
  d.g = g0(d.xi, params_);
  d.grad_g = grad_g0(d.xi, params_);
  d.hess_g = hessian_g0(d.xi, params_);
  return d;
}

}  // namespace wavemod
