#include "wavemod/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace wavemod {

bool ResonanceReport::all_passed() const {
  for (const auto& e : quadratic)
    if (!e.passed) return false;
  for (const auto& e : cubic)
    if (!e.passed) return false;
  return true;
}

bool ResonanceReport::any_near_resonant() const {
  for (const auto& e : quadratic)
    if (e.near_resonant) return true;
  for (const auto& e : cubic)
    if (e.near_resonant) return true;
  return false;
}

bool same_phase(const HarmonicData& a, const HarmonicData& b, double rel) {
  double scale = std::max({1.0, std::sqrt(norm2(a.xi)), std::sqrt(norm2(b.xi)), std::abs(a.omega),
                           std::abs(b.omega)});
  double dxi = std::sqrt(norm2(a.xi - b.xi));
  return dxi <= rel * scale && std::abs(a.omega - b.omega) <= rel * scale;
}

ResonanceReport check_nonresonance(const WaveTriple& triple, double tol, double warn) {
  ResonanceReport rep;
  auto entry = [&](const Harmonic& h) {
    HarmonicData d = triple.harmonic(h);
    ResonanceEntry e;
    e.label = h;
    e.relative_defect = d.relative_defect();
    e.passed = e.relative_defect > tol;
    e.near_resonant = e.relative_defect < warn;
    return e;
  };
  for (const auto& h : second_order_set()) rep.quadratic.push_back(entry(h));
  for (const auto& h : third_order_set()) rep.cubic.push_back(entry(h));

  std::vector<Harmonic> higher(second_order_set());
  higher.insert(higher.end(), third_order_set().begin(), third_order_set().end());
  std::vector<Harmonic> others;
  others.push_back(mean_harmonic());
  for (int j = 0; j < 3; ++j) {
    others.push_back(carrier(j));
    others.push_back(carrier(j).conj());
  }
  for (const auto& h : higher) others.push_back(h.conj());
  for (std::size_t a = 0; a < higher.size(); ++a) {
    HarmonicData da = triple.harmonic(higher[a]);
    for (std::size_t b = a + 1; b < higher.size(); ++b)
      if (same_phase(da, triple.harmonic(higher[b]))) rep.coincidences.push_back({higher[a], higher[b]});
    for (const auto& o : others)
      if (same_phase(da, triple.harmonic(o))) rep.coincidences.push_back({higher[a], o});
  }
  return rep;
}

double r0(double x, double lambda, double c) {
  if (!(x > 0.0) || !(lambda >= 0.0) || !(c >= -1.0 && c <= 1.0))
    throw std::invalid_argument("r0 requires x > 0, lambda >= 0, -1 <= c <= 1");
  double s = std::sqrt(std::max(0.0, 1.0 + lambda * lambda + 2.0 * c * lambda));
  auto term = [](double u, double y) { return std::sqrt(u * std::tanh(y)); };
  return term(s, x * s) - term(lambda, x * lambda) - std::sqrt(std::tanh(x));
}

namespace {
// derivative of sqrt(y tanh y)
double gprime(double y) {
  if (y < 1e-6) return 1.0 - y * y / 3.0;
  double t = std::tanh(y);
  return (t + y * (1.0 - t * t)) / (2.0 * std::sqrt(y * t));
}
}  // namespace

double r0_dlambda_c1(double x, double lambda) {
  if (!(x > 0.0) || !(lambda >= 0.0)) throw std::invalid_argument("r0 requires x > 0, lambda >= 0");
  return std::sqrt(x) * (gprime(x * (1.0 + lambda)) - gprime(x * lambda));
}

std::vector<double> ScanRange::values() const {
  std::vector<double> v;
  if (count <= 0) return v;
  if (count == 1) return {min};
  for (int i = 0; i < count; ++i) v.push_back(min + (max - min) * double(i) / double(count - 1));
  return v;
}

namespace {

struct Config {
  std::vector<double> k;
  std::vector<int> signs;
};

// signed relative defect, NaN when the combined wave vector is (numerically) zero
double config_defect(const PhysicalParams& p, const Config& c) {
  double w = 0.0, xi = 0.0;
  for (std::size_t i = 0; i < c.k.size(); ++i) {
    w += c.signs[i] * omega({c.k[i], 0.0}, p);
    xi += c.signs[i] * c.k[i];
  }
  if (std::abs(xi) < 1e-8) return std::numeric_limits<double>::quiet_NaN();
  Vec2 v{xi, 0.0};
  return (w * w - bond_factor(v, p) * g0(v, p)) / std::max(1.0, w * w);
}

// families of configurations parametrised by the innermost scan variable
using Family = std::function<Config(double)>;

std::vector<Family> families(const ScanRequest& req, const std::vector<double>& ks) {
  std::vector<Family> out;
  const int n = req.order;
  if (req.mode == "self") {
    out.push_back([n](double k) { return Config{std::vector<double>(n, k), std::vector<int>(n, 1)}; });
    return out;
  }
  if (req.mode != "pair") throw std::invalid_argument("scan mode must be 'self' or 'pair'");
  for (double k1 : ks) {
    if (std::abs(k1) < 1e-8) continue;
    for (int s : {1, -1}) {
      if (n == 2)
        out.push_back([k1, s](double k) { return Config{{k1, k}, {1, s}}; });
      else
        out.push_back([k1, s](double k) { return Config{{k1, k1, k}, {1, 1, s}}; });
    }
  }
  return out;
}

bool admissible(const ScanRequest& req, const Config& c) {
  for (double k : c.k)
    if (std::abs(k) < 1e-8) return false;
  if (req.mode == "pair" && c.k.front() == c.k.back()) return false;
  return true;
}

template <class Visit>
void walk(const ScanRequest& req, Visit&& visit) {
  if (req.order != 2 && req.order != 3) throw std::invalid_argument("harmonic order must be 2 or 3");
  const auto ks = req.k.values();
  if (ks.empty()) return;
  for (double mu : req.mu.values())
    for (double ib : req.inv_bond.values()) {
      PhysicalParams p;
      p.mu = mu;
      p.inv_bond = ib;
      for (const auto& fam : families(req, ks)) visit(p, fam, ks);
    }
}

}  // namespace

std::vector<ScanRow> scan_resonances(const ScanRequest& req) {
  std::vector<ScanRow> rows;
  walk(req, [&](const PhysicalParams& p, const Family& fam, const std::vector<double>& ks) {
    std::vector<double> f(ks.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      Config c = fam(ks[i]);
      if (admissible(req, c)) f[i] = config_defect(p, c);
    }
    auto emit = [&](double k, bool refined) {
      Config c = fam(k);
      rows.push_back({p.mu, p.inv_bond, c.k, c.signs, config_defect(p, c), refined});
    };
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
      if (std::isnan(f[i]) || std::isnan(f[i + 1])) continue;
      if (f[i] == 0.0) {
        emit(ks[i], true);
      } else if (f[i] * f[i + 1] < 0.0) {
        double a = ks[i], b = ks[i + 1], fa = f[i];
        for (int it = 0; it < 200 && std::abs(b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
          double m = 0.5 * (a + b);
          double fm = config_defect(p, fam(m));
          if (std::isnan(fm)) break;
          if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        emit(0.5 * (a + b), true);
      }
    }
    for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
      if (std::isnan(f[i - 1]) || std::isnan(f[i]) || std::isnan(f[i + 1])) continue;
      bool sign_change = f[i - 1] * f[i] <= 0.0 || f[i] * f[i + 1] <= 0.0;
      if (!sign_change && std::abs(f[i]) < std::abs(f[i - 1]) && std::abs(f[i]) < std::abs(f[i + 1]))
        emit(ks[i], false);
    }
  });
  return rows;
}

double scan_min_defect(const ScanRequest& req) {
  double best = std::numeric_limits<double>::infinity();
  walk(req, [&](const PhysicalParams& p, const Family& fam, const std::vector<double>& ks) {
    for (double k : ks) {
      Config c = fam(k);
      if (!admissible(req, c)) continue;
      double d = config_defect(p, c);
      if (!std::isnan(d)) best = std::min(best, std::abs(d));
    }
  });
  return best;
}

}  // namespace wavemod
