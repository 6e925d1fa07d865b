#include <cmath>
#include <sstream>

#include "wavemod/error.hpp"
#include "wavemod/modulation.hpp"

namespace wavemod {

namespace {

struct Accumulator {
  const Grid& micro;
  int M;
  double t;
  std::vector<cplx> zeta, psi;

  Accumulator(const Grid& g, int m, double time)
      : micro(g), M(m), t(time), zeta(g.size()), psi(g.size()) {}

  Mode carrier_index(const Vec2& xi, const std::string& what) const {
    Mode m{};
    for (int a = 0; a < micro.dim(); ++a) {
      double v = M * xi[a];
      double r = std::round(v);
      if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v))) {
        std::ostringstream os;
        os << "harmonic " << what << " is not on the micro lattice: M xi = " << v;
        throw IncommensurabilityError(os.str());
      }
      m[a] = int(r);
    }
    return m;
  }

  // amp(X') e^{i(xi.X - omega t)} + c.c.
  void add(std::vector<cplx>& dst, const SpectralField& amp, const HarmonicData& h, double s) {
    if (amp.empty()) return;
    Mode base = carrier_index(h.xi, h.label.name());
    cplx ph = std::polar(1.0, -h.omega * t);
    const Grid& mg = amp.grid();
    for (std::size_t i = 0; i < mg.size(); ++i) {
      cplx c = amp.coeffs()[i];
      if (c == cplx(0.0)) continue;
      Mode m = mg.mode(i);
      Mode k{base[0] + m[0], base[1] + m[1]};
      Mode kn{-k[0], -k[1]};
      if (!micro.resolves(k) || !micro.resolves(kn)) {
        std::ostringstream os;
        os << "harmonic " << h.label.name() << " envelope mode not resolved on the micro grid";
        throw Error(os.str());
      }
      dst[micro.flat_index(k)] += s * c * ph;
      dst[micro.flat_index(kn)] += s * std::conj(c * ph);
    }
  }

  // real mean-field term amp(X')
  void add_mean(std::vector<cplx>& dst, const SpectralField& amp, double s) {
    if (amp.empty()) return;
    const Grid& mg = amp.grid();
    for (std::size_t i = 0; i < mg.size(); ++i) {
      cplx c = amp.coeffs()[i];
      if (c == cplx(0.0)) continue;
      Mode m = mg.mode(i);
      if (!micro.resolves(m)) throw Error("mean-field envelope mode not resolved on the micro grid");
      dst[micro.flat_index(m)] += s * c;
    }
  }
};

}  // namespace

SurfaceState reconstruct(const WaveTriple& triple, const HarmonicPlan& plan,
                         const HarmonicAmplitudes& a, ApproxOrder order, int M, const Grid& micro,
                         double t, double scale) {
  if (M < 1) throw std::invalid_argument("scale ratio M must be positive");
  const double eps = 1.0 / M;
  Accumulator acc(micro, M, t);

  for (int j = 0; j < 3; ++j) {
    HarmonicData h = triple.harmonic(carrier(j));
    acc.add(acc.zeta, a.zeta0[j], h, scale);
    acc.add(acc.psi, a.psi0[j], h, scale);
  }
  acc.add_mean(acc.psi, a.psi00, scale);

  if (order != ApproxOrder::Leading) {
    for (int j = 0; j < 3; ++j) {
      HarmonicData h = triple.harmonic(carrier(j));
      acc.add(acc.zeta, a.zeta1[j], h, scale * eps);
      acc.add(acc.psi, a.psi1[j], h, scale * eps);
    }
    for (const auto& g : plan.second) {
      auto it = a.first.find(g.rep);
      if (it == a.first.end()) throw DependencyError("first-order amplitudes missing for " + g.rep.name());
      HarmonicData h = triple.harmonic(g.rep);
      acc.add(acc.zeta, it->second.zeta, h, scale * eps);
      acc.add(acc.psi, it->second.psi, h, scale * eps);
    }
    acc.add_mean(acc.zeta, a.zeta10, scale * eps);
  }

  if (order == ApproxOrder::Full) {
    const double e2 = scale * eps * eps;
    for (int j = 0; j < 3; ++j) {
      if (a.zeta2[j].empty()) throw DependencyError("zeta2j missing for the full approximation");
      acc.add(acc.zeta, a.zeta2[j], triple.harmonic(carrier(j)), e2);
    }
    for (const auto* set : {&plan.second, &plan.third})
      for (const auto& g : *set) {
        auto it = a.second.find(g.rep);
        if (it == a.second.end())
          throw DependencyError("second-order amplitudes missing for " + g.rep.name());
        HarmonicData h = triple.harmonic(g.rep);
        acc.add(acc.zeta, it->second.zeta, h, e2);
        acc.add(acc.psi, it->second.psi, h, e2);
      }
    acc.add_mean(acc.zeta, a.zeta20, e2);
  }

  SurfaceState s;
  s.t = t;
  s.zeta = SpectralField(micro, std::move(acc.zeta), false);
  s.psi = SpectralField(micro, std::move(acc.psi), false);
  s.zeta.enforce_reality();
  s.psi.enforce_reality();
  return s;
}

}  // namespace wavemod
