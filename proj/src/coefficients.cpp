#include "wavemod/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "signed_wave.hpp"
#include "wavemod/error.hpp"

namespace wavemod {

using detail::kI;

std::array<SpectralField, 3> polarize_leading(const std::array<SpectralField, 3>& psi0,
                                              const WaveTriple& t) {
  std::array<SpectralField, 3> z;
  for (int j = 0; j < 3; ++j) {
    const auto& w = t.wave(j);
    z[j] = cplx(0.0, w.omega / w.b) * psi0[j];
  }
  return z;
}

// ---------------------------------------------------------------- phase groups

HarmonicPlan HarmonicPlan::build(const WaveTriple& triple) {
  HarmonicPlan plan;
  auto data = [&](const Harmonic& h) { return triple.harmonic(h); };
  auto clash = [&](const Harmonic& a, const Harmonic& b) {
    throw UnsupportedCoincidenceError("harmonic " + a.name() + " coincides with " + b.name() +
                                      " (or its conjugate)");
  };
  auto join = [&](std::vector<PhaseGroup>& groups, const Harmonic& h) {
    HarmonicData dh = data(h);
    for (auto& g : groups) {
      if (same_phase(dh, data(g.rep))) {
        g.members.push_back({h, false});
        return;
      }
      if (same_phase(dh, data(g.rep.conj()))) {
        g.members.push_back({h, true});
        return;
      }
    }
    groups.push_back({h, {{h, false}}});
  };

  for (const auto& h : second_order_set()) {
    HarmonicData dh = data(h);
    if (same_phase(dh, data(mean_harmonic()))) clash(h, mean_harmonic());
    for (int j = 0; j < 3; ++j)
      if (same_phase(dh, data(carrier(j))) || same_phase(dh, data(carrier(j).conj())))
        clash(h, carrier(j));
    join(plan.second, h);
  }
  for (const auto& h : third_order_set()) {
    HarmonicData dh = data(h);
    bool routed = false;
    for (int j = 0; j < 3 && !routed; ++j) {
      if (same_phase(dh, data(carrier(j)))) {
        plan.routed.push_back({h, j, false});
        routed = true;
      } else if (same_phase(dh, data(carrier(j).conj()))) {
        plan.routed.push_back({h, j, true});
        routed = true;
      }
    }
    if (routed) continue;
    if (same_phase(dh, data(mean_harmonic()))) clash(h, mean_harmonic());
    for (const auto& m : second_order_set())
      if (same_phase(dh, data(m)) || same_phase(dh, data(m.conj()))) clash(h, m);
    join(plan.third, h);
  }
  return plan;
}

const PhaseGroup* HarmonicPlan::group_of(const Harmonic& h) const {
  for (const auto* set : {&second, &third})
    for (const auto& g : *set)
      for (const auto& m : g.members)
        if (m.first == h) return &g;
  return nullptr;
}

// ---------------------------------------------------------------- quadratic sources

SecondHarmonicSources second_harmonic_sources(const WaveTriple& t,
                                              const std::array<SpectralField, 3>& u,
                                              const std::array<SpectralField, 3>& v) {
  SecondHarmonicSources s;
  auto zu = polarize_leading(u, t);
  auto wave = [&](int sidx, bool from_u, bool zeta) {
    int j = std::abs(sidx) - 1;
    const SpectralField& f = zeta ? (from_u ? zu[j] : SpectralField()) : (from_u ? u[j] : v[j]);
    return sidx > 0 ? f : conj(f);
  };
  for (const auto& m : second_order_set()) {
    auto [p, q] = detail::pair_indices(m);
    HarmonicData hm = t.harmonic(m);
    auto xi_of = [&](int sidx) { return (sidx > 0 ? 1.0 : -1.0) * t.wave(std::abs(sidx) - 1).xi; };
    auto g_of = [&](int sidx) { return t.wave(std::abs(sidx) - 1).g; };
    // the ordered-pair sum below reproduces A_jj, A_ji, A_{j,-i}; for p = q it is counted once
    auto a_term = [&](int a, int b) {
      double coef = -(hm.g * g_of(b) - dot(hm.xi, xi_of(b)));
      return coef * multiply(wave(a, true, true), wave(b, false, false));
    };
    SpectralField A = a_term(p, q);
    if (p != q) A += a_term(q, p);
    double bcoef = g_of(p) * g_of(q) + dot(xi_of(p), xi_of(q));
    SpectralField B = (p == q ? 0.5 : 1.0) * bcoef * multiply(wave(p, true, false), wave(q, false, false));
    s.A[m] = A;
    s.B[m] = B;
  }
  const Grid& grid = u[0].grid();
  s.B0 = SpectralField(grid, false);
  for (int j = 0; j < 3; ++j) {
    const auto& w = t.wave(j);
    s.B0 += (w.g * w.g - norm2(w.xi)) * multiply(u[j], conj(v[j]));
  }
  return s;
}

SecondHarmonicSources second_harmonic_sources(const WaveTriple& t,
                                              const std::array<SpectralField, 3>& psi0) {
  auto s = second_harmonic_sources(t, psi0, psi0);
  s.B0.enforce_reality();
  return s;
}

// ---------------------------------------------------------------- 2x2 solves

FieldPair harmonic_solve(const HarmonicData& h, const SpectralField& X, const SpectralField& Y,
                         double gate) {
  double w2 = h.omega * h.omega;
  double det = h.defect();
  if (std::abs(det) < gate * std::max(1.0, w2)) {
    std::ostringstream os;
    os << "near-resonant harmonic " << h.label.name() << ": |omega^2 - b g| = " << std::abs(det);
    throw NearResonanceError(os.str());
  }
  cplx iw(0.0, h.omega);
  FieldPair out;
  out.zeta = (1.0 / det) * ((iw * X) - (h.g * Y));
  out.psi = (1.0 / det) * ((h.b * X) + (iw * Y));
  return out;
}

namespace {

// sum over the members of a phase group, conjugating members of opposite phase
SpectralField group_sum(const PhaseGroup& g, const std::map<Harmonic, SpectralField>& src) {
  SpectralField total;
  for (const auto& [label, cj] : g.members) {
    auto it = src.find(label);
    if (it == src.end()) throw DependencyError("missing source for harmonic " + label.name());
    SpectralField term = cj ? conj(it->second) : it->second;
    if (total.empty())
      total = term;
    else
      total += term;
  }
  return total;
}

}  // namespace

std::map<Harmonic, FieldPair> solve_first_harmonics(const SecondHarmonicSources& s,
                                                    const WaveTriple& t, const HarmonicPlan& plan,
                                                    double gate) {
  std::map<Harmonic, FieldPair> out;
  for (const auto& g : plan.second)
    out[g.rep] = harmonic_solve(t.harmonic(g.rep), group_sum(g, s.A), group_sum(g, s.B), gate);
  return out;
}

SpectralField zeta1j(const SpectralField& psi1j, const SpectralField& psi0j,
                     const WaveComponent& w) {
  return cplx(0.0, w.omega / w.b) * psi1j + directional_derivative(w.bo_velocity, psi0j);
}

SpectralField zeta10(const SpectralField& psi00_t, const SpectralField& B0) {
  SpectralField z = B0 - psi00_t;
  if (psi00_t.is_real() && B0.is_real()) z.set_real_flag(true);
  return z;
}

std::array<SpectralField, 3> transport_derivative(const std::array<SpectralField, 3>& psi0,
                                                  const WaveTriple& t) {
  std::array<SpectralField, 3> d;
  for (int j = 0; j < 3; ++j) d[j] = -directional_derivative(t.wave(j).group_velocity, psi0[j]);
  return d;
}

// ---------------------------------------------------------------- forcing

Forcing forcing(const WaveTriple& t, const HarmonicAmplitudes& h, const CubicCoefficients& cd,
                const CoeffOptions& opt) {
  Forcing f;
  const double sigma = t.params().inv_bond;
  for (int j = 0; j < 3; ++j) {
    const auto& w = t.wave(j);
    const SpectralField& psi0 = h.psi0[j];
    const double kappa = w.g * w.g - norm2(w.xi);
    SpectralField zero(psi0.grid(), false);

    SpectralField hess = apply_multiplier(Multiplier::quadratic_form(w.hess_omega), psi0);
    SpectralField Et = (kI * (w.b / (2.0 * w.omega)) * kappa) * multiply(h.B0, psi0) -
                       (kI * (w.b / (2.0 * w.omega))) * cd.C[j] + 0.5 * cd.D[j];

    SpectralField E = zero;
    if (opt.dispersive) E += (0.5 * kI) * hess;
    if (opt.mean_field) {
      SpectralField inner = ((w.b / (2.0 * w.omega)) * kappa) * h.psi00_t +
                            directional_derivative(w.xi, h.psi00);
      E -= kI * multiply(psi0, inner);
    }
    if (opt.cubic) E += Et;

    SpectralField F = zero;
    if (opt.dispersive) {
      F -= (kI / (2.0 * w.b)) * hess;
      SpectralField bo = directional_derivative(w.bo_velocity, psi0);
      SpectralField blk = 2.0 * directional_derivative(w.xi, bo) + (w.omega / w.b) * laplacian(psi0);
      F += (kI * (sigma / w.b)) * blk;
    }
    if (opt.mean_field) F += (kI * kappa / (2.0 * w.omega)) * multiply(psi0, h.psi00_t);
    if (opt.cubic) {
      F -= (kI * kappa / (2.0 * w.omega)) * multiply(h.B0, psi0);
      F += (kI / (2.0 * w.omega)) * cd.C[j];
      F += (1.0 / (2.0 * w.b)) * cd.D[j];
    }
    f.E[j] = E;
    f.E_tilde[j] = Et;
    f.F[j] = F;
  }
  return f;
}

std::array<SpectralField, 3> zeta2j(const WaveTriple& t, const HarmonicAmplitudes& h,
                                    const Forcing& f) {
  std::array<SpectralField, 3> z;
  for (int j = 0; j < 3; ++j)
    z[j] = directional_derivative(t.wave(j).bo_velocity, h.psi1[j]) + f.F[j];
  return z;
}

std::map<Harmonic, FieldPair> solve_second_harmonics(const WaveTriple& t,
                                                     const HarmonicAmplitudes& h,
                                                     const CubicCoefficients& cd,
                                                     const HarmonicPlan& plan, double gate) {
  const double sigma = t.params().inv_bond;
  std::map<Harmonic, FieldPair> out;
  for (const auto& g : plan.second) {
    HarmonicData d = t.harmonic(g.rep);
    auto it1 = h.first.find(g.rep);
    auto itd = h.first_dt.find(g.rep);
    if (it1 == h.first.end() || itd == h.first_dt.end())
      throw DependencyError("first-order amplitudes missing for " + g.rep.name());
    const FieldPair& a1 = it1->second;
    const FieldPair& a1t = itd->second;
    SpectralField X = group_sum(g, cd.Cn) - a1t.zeta - kI * directional_derivative(d.grad_g, a1.psi);
    SpectralField Y = group_sum(g, cd.Dn) - a1t.psi +
                      (2.0 * sigma) * (kI * directional_derivative(d.xi, a1.zeta));
    out[g.rep] = harmonic_solve(d, X, Y, gate);
  }
  for (const auto& g : plan.third)
    out[g.rep] = harmonic_solve(t.harmonic(g.rep), group_sum(g, cd.Cn), group_sum(g, cd.Dn), gate);
  for (const auto& r : plan.routed) {
    const SpectralField& ref = h.psi0[0];
    out[r.label] = {SpectralField(ref.grid(), false), SpectralField(ref.grid(), false)};
  }
  return out;
}

// ---------------------------------------------------------------- pipeline

Expansion expand(const WaveTriple& t, const MacroFields& m, const HarmonicPlan& plan, Stage stage,
                 const CoeffOptions& opt) {
  const Grid& grid = m.psi0[0].grid();
  auto need = [&](const SpectralField& f, const char* what) {
    if (f.empty()) throw DependencyError(std::string("macroscopic input missing: ") + what);
    if (f.grid() != grid) throw DependencyError(std::string("grid mismatch in ") + what);
  };
  for (int j = 0; j < 3; ++j) {
    need(m.psi0[j], "psi0j");
    need(m.psi1[j], "psi1j");
  }
  need(m.psi00, "psi00");
  need(m.psi00_t, "dt' psi00");

  Expansion ex;
  HarmonicAmplitudes& a = ex.amp;
  a.psi0 = m.psi0;
  a.psi1 = m.psi1;
  a.psi00 = m.psi00;
  a.psi00_t = m.psi00_t;
  a.zeta0 = polarize_leading(a.psi0, t);

  auto src = second_harmonic_sources(t, a.psi0);
  a.B0 = src.B0;
  a.first = solve_first_harmonics(src, t, plan, opt.gate);

  auto dpsi0 = transport_derivative(a.psi0, t);
  auto s1 = second_harmonic_sources(t, dpsi0, a.psi0);
  auto s2 = second_harmonic_sources(t, a.psi0, dpsi0);
  for (auto& [k, v] : s1.A) v += s2.A.at(k);
  for (auto& [k, v] : s1.B) v += s2.B.at(k);
  a.first_dt = solve_first_harmonics(s1, t, plan, opt.gate);

  for (int j = 0; j < 3; ++j) a.zeta1[j] = zeta1j(a.psi1[j], a.psi0[j], t.wave(j));
  a.zeta10 = zeta10(a.psi00_t, a.B0);
  if (stage == Stage::First) return ex;

  ex.tables = appendix_tables(t, a, plan);
  ex.cd = assemble_CD(t, a, *ex.tables, plan);
  ex.forcing = forcing(t, a, *ex.cd, opt);
  if (stage == Stage::Forcing) return ex;

  a.zeta2 = zeta2j(t, a, *ex.forcing);
  a.zeta20 = ex.cd->D0;
  a.second = solve_second_harmonics(t, a, *ex.cd, plan, opt.gate);
  return ex;
}

}  // namespace wavemod
