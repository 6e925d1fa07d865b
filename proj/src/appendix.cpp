#include <cmath>
#include <stdexcept>

#include "signed_wave.hpp"
#include "wavemod/coefficients.hpp"
#include "wavemod/error.hpp"

namespace wavemod {

using detail::kI;
using detail::SignedWave;

TableEntry TableEntry::scalar(SpectralField f) {
  TableEntry e;
  e.comp.push_back(std::move(f));
  return e;
}

TableEntry TableEntry::vec(VecField v) {
  TableEntry e;
  e.vector = true;
  e.comp = std::move(v);
  return e;
}

TableEntry TableEntry::conj() const {
  TableEntry e = *this;
  for (auto& c : e.comp) c = wavemod::conj(c);
  return e;
}

TableEntry combine(const TableEntry& c, const TableEntry& a) {
  if (c.empty() || a.empty()) throw DependencyError("table entry missing");
  if (!c.vector && !a.vector) return TableEntry::scalar(multiply(c.comp[0], a.comp[0]));
  if (c.vector && a.vector) {
    SpectralField s = multiply(c.comp[0], a.comp[0]);
    for (std::size_t i = 1; i < c.comp.size(); ++i) s += multiply(c.comp[i], a.comp[i]);
    return TableEntry::scalar(s);
  }
  const TableEntry& s = c.vector ? a : c;
  const TableEntry& v = c.vector ? c : a;
  VecField out;
  for (const auto& x : v.comp) out.push_back(multiply(s.comp[0], x));
  return TableEntry::vec(out);
}

TableEntry operator+(const TableEntry& x, const TableEntry& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  if (x.vector != y.vector || x.comp.size() != y.comp.size())
    throw std::invalid_argument("table entries of different shape");
  TableEntry e = x;
  for (std::size_t i = 0; i < e.comp.size(); ++i) e.comp[i] += y.comp[i];
  return e;
}

namespace {

VecField times_ixi(const Vec2& xi, const SpectralField& f) {
  VecField v;
  for (int a = 0; a < f.grid().dim(); ++a) v.push_back(cplx(0.0, xi[a]) * f);
  return v;
}

struct Waves {
  std::array<SignedWave, 7> w;  // index s + 3, s = +-1..3
  Waves(const WaveTriple& t, const HarmonicAmplitudes& h) {
    for (int s : {-3, -2, -1, 1, 2, 3}) w[s + 3] = detail::signed_wave(t, h, s);
  }
  const SignedWave& operator()(int s) const { return w[s + 3]; }
};

// f(p,q) + f(q,p), counted once when p = q
template <class F>
SpectralField ordered_sum(int p, int q, F&& f) {
  SpectralField s = f(p, q);
  if (p != q) s += f(q, p);
  return s;
}

SpectralField with_cc(const SpectralField& f) {
  SpectralField s = f + conj(f);
  s.enforce_reality();
  return s;
}

}  // namespace

CoeffTables appendix_tables(const WaveTriple& t, const HarmonicAmplitudes& h,
                            const HarmonicPlan& plan) {
  for (int j = 0; j < 3; ++j)
    if (h.psi0[j].empty() || h.zeta0[j].empty())
      throw DependencyError("appendix tables need psi0j and zeta0j");
  const Waves W(t, h);
  const Grid& grid = h.psi0[0].grid();
  CoeffTables T;

  for (int k = 0; k < 3; ++k) {
    const auto& w = t.wave(k);
    const SpectralField& psi = h.psi0[k];
    const SpectralField& zeta = h.zeta0[k];
    T.a[1][k] = TableEntry::vec(times_ixi(w.xi, psi));
    T.a[2][k] = TableEntry::scalar(w.g * psi);
    T.a[3][k] = TableEntry::vec(times_ixi(w.xi, zeta));
    T.a[4][k] = TableEntry::scalar(w.g * psi);
    T.a[5][k] = TableEntry::scalar(zeta);
    T.a[6][k] = TableEntry::vec(times_ixi(w.xi, psi));
    T.a[7][k] = TableEntry::scalar(-norm2(w.xi) * psi);
    T.a[8][k] = TableEntry::vec(times_ixi(w.xi, zeta));
    T.a[9][k] = TableEntry::scalar(zeta);
    T.a[10][k] = TableEntry::scalar(w.g * psi);
    T.a[11][k] = TableEntry::scalar(-norm2(w.xi) * psi);
  }

  for (const auto& m : second_order_set()) {
    HarmonicData d = t.harmonic(m);
    auto [p, q] = detail::pair_indices(m);
    SpectralField psi1(grid, false), zeta1(grid, false);
    const PhaseGroup* g = plan.group_of(m);
    if (g && g->rep == m) {
      auto it = h.first.find(m);
      if (it == h.first.end()) throw DependencyError("first-order amplitudes missing for " + m.name());
      zeta1 = it->second.zeta;
      psi1 = it->second.psi;
    }

    SpectralField g1 = d.g * psi1 + ordered_sum(p, q, [&](int a, int b) {
                         return (norm2(W(b).xi) - d.g * W(b).g) * multiply(W(a).zeta0, W(b).psi0);
                       });
    SpectralField g2 = ordered_sum(p, q, [&](int a, int b) {
      return (0.5 * dot(W(a).xi, W(b).xi)) * multiply(W(a).zeta0, W(b).zeta0);
    });
    SpectralField g3 = ordered_sum(p, q, [&](int a, int b) {
      return W(b).g * multiply(W(a).zeta0, W(b).psi0);
    });
    SpectralField g4 = ordered_sum(p, q, [&](int a, int b) { return multiply(W(a).zeta0, W(b).zeta0); });
    T.gamma[1][m] = TableEntry::scalar(g1);
    T.gamma[2][m] = TableEntry::scalar(g2);
    T.gamma[3][m] = TableEntry::scalar(g3);
    T.gamma[4][m] = TableEntry::scalar(g4);

    T.c[1][m] = TableEntry::vec(times_ixi(d.xi, psi1));
    T.c[2][m] = TableEntry::scalar(g1);
    T.c[3][m] = TableEntry::scalar(g2);
    T.c[4][m] = TableEntry::scalar(zeta1);
    T.c[5][m] = TableEntry::scalar(d.g * (psi1 - g3));
    T.c[6][m] = TableEntry::vec(times_ixi(d.xi, zeta1));
    T.c[7][m] = TableEntry::scalar(zeta1);
    T.c[8][m] = TableEntry::vec(times_ixi(d.xi, psi1));
    T.c[9][m] = TableEntry::scalar(-norm2(d.xi) * psi1);
    T.c[10][m] = TableEntry::scalar(g4);
    T.c[11][m] = TableEntry::scalar(g4);
  }

  for (int n = 1; n <= 11; ++n) {
    const auto& cn = T.c[n];
    auto c = [&](const char* label) -> const TableEntry& { return cn.at(parse_harmonic(label)); };
    auto cij = [&](int j, int i) -> const TableEntry& {  // c_ji, symmetric in (j,i)
      return cn.at(parse_harmonic(std::to_string(std::min(j, i)) + "," + std::to_string(std::max(j, i))));
    };
    auto cneg = [&](int j, int i) -> const TableEntry& {  // c_{j,-i}, j < i
      return cn.at(parse_harmonic(std::to_string(j) + ",-" + std::to_string(i)));
    };
    auto a = [&](int k) -> const TableEntry& { return T.a[n][k - 1]; };
    auto ab = [&](int k) { return T.a[n][k - 1].conj(); };

    T.d_first[n][0] = combine(c("1,1"), ab(1)) + combine(c("1,2"), ab(2)) + combine(c("1,3"), ab(3)) +
                      combine(c("1,-2"), a(2)) + combine(c("1,-3"), a(3));
    T.d_first[n][1] = combine(c("1,2"), ab(1)) + combine(c("2,2"), ab(2)) + combine(c("2,3"), ab(3)) +
                      combine(c("1,-2").conj(), a(1)) + combine(c("2,-3"), a(3));
    T.d_first[n][2] = combine(c("1,3"), ab(1)) + combine(c("2,3"), ab(2)) + combine(c("3,3"), ab(3)) +
                      combine(c("1,-3").conj(), a(1)) + combine(c("2,-3").conj(), a(2));

    auto& dt = T.d_third[n];
    for (int j = 1; j <= 3; ++j) {
      std::string jj = std::to_string(j) + "," + std::to_string(j);
      dt[parse_harmonic(jj + "," + std::to_string(j))] = combine(c(jj.c_str()), a(j));
    }
    for (int j = 1; j <= 3; ++j)
      for (int i = j + 1; i <= 3; ++i) {
        std::string sj = std::to_string(j), si = std::to_string(i);
        const TableEntry& cjj = c((sj + "," + sj).c_str());
        const TableEntry& cii = c((si + "," + si).c_str());
        // d_jji, d_iij
        dt[parse_harmonic(sj + "," + sj + "," + si)] = combine(cjj, a(i)) + combine(cij(j, i), a(j));
        dt[parse_harmonic(si + "," + si + "," + sj)] = combine(cii, a(j)) + combine(cij(j, i), a(i));
        // d_{jj,-i}, d_{ii,-j}
        dt[parse_harmonic(sj + "," + sj + ",-" + si)] = combine(cjj, ab(i)) + combine(cneg(j, i), a(j));
        dt[parse_harmonic(si + "," + si + ",-" + sj)] =
            combine(cii, ab(j)) + combine(cneg(j, i).conj(), a(i));
      }
    dt[parse_harmonic("1,2,3")] = combine(c("2,3"), a(1)) + combine(c("1,3"), a(2)) + combine(c("1,2"), a(3));
    dt[parse_harmonic("1,2,-3")] =
        combine(c("2,-3"), a(1)) + combine(c("1,-3"), a(2)) + combine(c("1,2"), ab(3));
    dt[parse_harmonic("1,3,-2")] =
        combine(c("2,-3").conj(), a(1)) + combine(c("1,3"), ab(2)) + combine(c("1,-2"), a(3));
    dt[parse_harmonic("2,3,-1")] =
        combine(c("2,3"), ab(1)) + combine(c("1,-3").conj(), a(2)) + combine(c("1,-2").conj(), a(3));
  }
  return T;
}

CubicCoefficients assemble_CD(const WaveTriple& t, const HarmonicAmplitudes& h,
                              const CoeffTables& T, const HarmonicPlan& plan) {
  for (int j = 0; j < 3; ++j)
    if (h.psi1[j].empty() || h.zeta1[j].empty())
      throw DependencyError("C/D assembly needs psi1j and zeta1j");
  const Waves W(t, h);
  const double sigma = t.params().inv_bond;
  const Grid& grid = h.psi0[0].grid();
  CubicCoefficients cd;

  // second-order harmonics: the ordered-pair sums reproduce the jj, ji and j,-i displays
  for (const auto& m : second_order_set()) {
    HarmonicData d = t.harmonic(m);
    auto [p, q] = detail::pair_indices(m);
    cd.Dn[m] = ordered_sum(p, q, [&](int a, int b) {
      const SignedWave &P = W(a), &Q = W(b);
      return -kI * multiply(Q.psi0, directional_derivative(Q.xi + Q.g * P.grad_g, P.psi0)) +
             (dot(P.xi, Q.xi) + P.g * Q.g) * multiply(Q.psi0, P.psi1);
    });
    cd.Cn[m] = ordered_sum(p, q, [&](int a, int b) {
      const SignedWave &P = W(a), &Q = W(b);
      SpectralField s = kI * directional_derivative(Q.g * d.grad_g - Q.xi, multiply(P.zeta0, Q.psi0));
      s += kI * multiply(P.zeta0, directional_derivative(d.g * Q.grad_g - d.xi, Q.psi0));
      s -= (Q.g * d.g - dot(Q.xi, d.xi)) * (multiply(Q.psi0, P.zeta1) + multiply(P.zeta0, Q.psi1));
      return s;
    });
  }

  auto part = [&](const std::array<TableEntry, 3>& row, int j) -> const SpectralField& {
    return row[j].comp.at(0);
  };

  SpectralField s_zpsi(grid, false), s_z2(grid, false), s_zabs(grid, false);
  for (int i = 0; i < 3; ++i) {
    const double xi2 = norm2(t.wave(i).xi);
    s_zpsi += xi2 * multiply(h.zeta0[i], conj(h.psi0[i]));
    s_z2 += xi2 * multiply(h.zeta0[i], conj(h.zeta0[i]));
    s_zabs += multiply(h.zeta0[i], conj(h.zeta0[i]));
  }
  SpectralField s_zpsi_cc = with_cc(s_zpsi);

  for (int j = 0; j < 3; ++j) {
    const auto& w = t.wave(j);
    const double xi2 = norm2(w.xi);
    SpectralField D = -part(T.d_first[1], j) + part(T.d_first[2], j) +
                      w.g * multiply(s_zpsi_cc, h.psi0[j]);
    if (sigma != 0.0) {
      SpectralField idot(grid, false);
      const auto& d3 = T.d_first[3][j].comp;
      for (std::size_t a = 0; a < d3.size(); ++a) idot += cplx(0.0, w.xi[a]) * d3[a];
      D += sigma * (idot + xi2 * multiply(s_z2, h.zeta0[j]));
    }
    SpectralField C = -w.g * (part(T.d_first[4], j) + part(T.d_first[5], j));
    C -= part(T.d_first[6], j) + part(T.d_first[7], j) + part(T.d_first[8], j) + part(T.d_first[9], j);
    C -= (0.5 * xi2) * part(T.d_first[10], j);
    C += (0.5 * w.g) * part(T.d_first[11], j);
    C -= (2.0 * xi2 * w.g) * multiply(s_zabs, h.psi0[j]);
    cd.C[j] = C;
    cd.D[j] = D;
  }

  for (const auto& m : third_order_set()) {
    HarmonicData d = t.harmonic(m);
    auto dn = [&](int n) -> const SpectralField& { return T.d_third[n].at(m).comp.at(0); };
    SpectralField D = -dn(1) + dn(2);
    if (sigma != 0.0) {
      const auto& d3 = T.d_third[3].at(m).comp;
      for (std::size_t a = 0; a < d3.size(); ++a) D += (sigma * cplx(0.0, d.xi[a])) * d3[a];
    }
    SpectralField C = -d.g * (dn(4) + dn(5));
    C -= dn(6) + dn(7) + dn(8) + dn(9);
    C -= (0.5 * norm2(d.xi)) * dn(10);
    C += (0.5 * d.g) * dn(11);
    cd.Cn[m] = C;
    cd.Dn[m] = D;
  }
  for (const auto& r : plan.routed) {
    const SpectralField& C = cd.Cn.at(r.label);
    const SpectralField& D = cd.Dn.at(r.label);
    cd.C[r.carrier] += r.conj ? conj(C) : C;
    cd.D[r.carrier] += r.conj ? conj(D) : D;
  }

  // mean field; every term of C00, D00 carries zeta00 = 0
  cd.C00 = SpectralField(grid, true);
  cd.D00 = SpectralField(grid, true);
  SpectralField C0(grid, false), D0(grid, false);
  for (int j = 0; j < 3; ++j) {
    const auto& w = t.wave(j);
    SpectralField pb = conj(h.psi0[j]);
    C0 += kI * directional_derivative(w.xi, multiply(h.zeta0[j], pb));
    D0 += kI * multiply(pb, directional_derivative(w.xi - w.g * w.grad_g, h.psi0[j]));
    D0 += (w.g * w.g - norm2(w.xi)) * multiply(pb, h.psi1[j]);
  }
  cd.C0 = with_cc(C0) + cd.C00;
  cd.D0 = with_cc(D0) + cd.D00;
  cd.C0.set_real_flag(true);
  cd.D0.set_real_flag(true);

  for (int j = 0; j < 3; ++j) {
    const auto& w = t.wave(j);
    const double kappa = w.g * w.g - norm2(w.xi);
    Mat2 half = w.hess_g;
    for (auto& r : half)
      for (auto& x : r) x *= 0.5;
    SpectralField Hj = apply_multiplier(Multiplier::quadratic_form(half), h.psi0[j]);
    SpectralField dpsi00 = directional_derivative(w.xi, h.psi00);
    cd.P[j] = Hj + kappa * multiply(h.zeta10, h.psi0[j]) + kI * multiply(h.zeta0[j], dpsi00) - cd.C[j];
    cd.Q[j] = -sigma * laplacian(h.zeta0[j]) + kI * multiply(h.psi0[j], dpsi00) - cd.D[j];
  }
  return cd;
}

}  // namespace wavemod
