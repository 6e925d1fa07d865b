#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wavemod/harmonics.hpp"
#include "wavemod/resonance.hpp"
#include "wavemod/spectral.hpp"

namespace wavemod {

// Macroscopic inputs at one macroscopic time: the three leading envelopes, the mean-field
// potential and its time derivative, and the first-order envelope corrections.
struct MacroFields {
  std::array<SpectralField, 3> psi0;
  SpectralField psi00;
  SpectralField psi00_t;
  std::array<SpectralField, 3> psi1;
};

struct FieldPair {
  SpectralField zeta;
  SpectralField psi;
};

// Harmonics carrying the same phase are merged; `conj` marks members whose phase equals the
// conjugate of the representative's.
struct PhaseGroup {
  Harmonic rep;
  std::vector<std::pair<Harmonic, bool>> members;  // includes (rep, false)
};

struct RoutedHarmonic {
  Harmonic label;
  int carrier = 0;
  bool conj = false;
};

struct HarmonicPlan {
  std::vector<PhaseGroup> second;
  std::vector<PhaseGroup> third;
  std::vector<RoutedHarmonic> routed;  // third-order harmonics equal to a carrier

  static HarmonicPlan build(const WaveTriple& triple);
  const PhaseGroup* group_of(const Harmonic& h) const;
};

struct CoeffOptions {
  double gate = 1e-3;     // near-resonance gate on every 2x2 denominator
  bool cubic = true;      // C, D, B0-type cubic blocks in E_j, F_j
  bool dispersive = true; // Hessian / 1/Bo differential blocks in E_j, F_j
  bool mean_field = true; // psi00 coupling blocks in E_j, F_j
};

// Closure: zeta00 = 0, psi10 = psi2j = psi20 = 0.
struct HarmonicAmplitudes {
  std::array<SpectralField, 3> psi0, psi1;
  SpectralField psi00, psi00_t;

  std::array<SpectralField, 3> zeta0, zeta1, zeta2;
  SpectralField B0;
  SpectralField zeta10, zeta20;
  // (zeta1ji, psi1ji) per second-order representative
  std::map<Harmonic, FieldPair> first;
  // analytic d/dt' of `first`
  std::map<Harmonic, FieldPair> first_dt;
  // (zeta2ji, psi2ji) per second-order representative and (zeta2jik, psi2jik) per
  // third-order representative
  std::map<Harmonic, FieldPair> second;
};

struct SecondHarmonicSources {
  std::map<Harmonic, SpectralField> A, B;  // keyed by labels of I
  SpectralField B0;
};

// A table entry: a scalar field or a d-vector of fields.
struct TableEntry {
  bool vector = false;
  std::vector<SpectralField> comp;

  static TableEntry scalar(SpectralField f);
  static TableEntry vec(VecField v);
  TableEntry conj() const;
  bool empty() const { return comp.empty(); }
};

// c*a: scalar*scalar, scalar*vector, or vector.vector
TableEntry combine(const TableEntry& c, const TableEntry& a);
TableEntry operator+(const TableEntry& x, const TableEntry& y);

struct CoeffTables {
  // index n = 1..11 (slot 0 unused)
  std::array<std::array<TableEntry, 3>, 12> a;
  // label-wise; a merged second harmonic carries its amplitude on the representative only
  std::array<std::map<Harmonic, TableEntry>, 12> c;
  std::array<std::map<Harmonic, TableEntry>, 5> gamma;   // gamma^(1..4), label-wise
  std::array<std::array<TableEntry, 3>, 12> d_first;     // d_j^(n)
  std::array<std::map<Harmonic, TableEntry>, 12> d_third; // d_jik^(n), labels of K
};

struct CubicCoefficients {
  std::array<SpectralField, 3> C, D;    // C_j, D_j (with routed third harmonics added)
  std::map<Harmonic, SpectralField> Cn, Dn;  // label-wise C_ji, D_ji (I) and C_jik, D_jik (K)
  SpectralField C0, D0, C00, D00;
  std::array<SpectralField, 3> P, Q;
};

struct Forcing {
  std::array<SpectralField, 3> E, E_tilde, F;
};

// zeta0j = i (omega_j/b_j) psi0j
std::array<SpectralField, 3> polarize_leading(const std::array<SpectralField, 3>& psi0,
                                              const WaveTriple& t);

// Bilinear form of the quadratic sources: in each product one factor is taken from u and the
// other from v, so sources(psi0, psi0) gives A, B, B0 and the t'-derivative is
// sources(dpsi0, psi0) + sources(psi0, dpsi0).
SecondHarmonicSources second_harmonic_sources(const WaveTriple& t,
                                              const std::array<SpectralField, 3>& u,
                                              const std::array<SpectralField, 3>& v);
SecondHarmonicSources second_harmonic_sources(const WaveTriple& t,
                                              const std::array<SpectralField, 3>& psi0);

// 2x2 solve 1/(w^2 - b g) [[i w, -g], [b, i w]] (X, Y); NearResonanceError below the gate
FieldPair harmonic_solve(const HarmonicData& h, const SpectralField& X, const SpectralField& Y,
                         double gate);

std::map<Harmonic, FieldPair> solve_first_harmonics(const SecondHarmonicSources& s,
                                                    const WaveTriple& t, const HarmonicPlan& plan,
                                                    double gate);

SpectralField zeta1j(const SpectralField& psi1j, const SpectralField& psi0j,
                     const WaveComponent& w);
SpectralField zeta10(const SpectralField& psi00_t, const SpectralField& B0);

// d/dt' psi0j = -grad omega_j . grad' psi0j
std::array<SpectralField, 3> transport_derivative(const std::array<SpectralField, 3>& psi0,
                                                  const WaveTriple& t);

// requires zeta0, zeta1, first filled in `h`
CoeffTables appendix_tables(const WaveTriple& t, const HarmonicAmplitudes& h,
                            const HarmonicPlan& plan);

CubicCoefficients assemble_CD(const WaveTriple& t, const HarmonicAmplitudes& h,
                              const CoeffTables& tables, const HarmonicPlan& plan);

// E_j, E~_j and F_j
Forcing forcing(const WaveTriple& t, const HarmonicAmplitudes& h, const CubicCoefficients& cd,
                const CoeffOptions& opt = {});

// zeta2j = grad_Bo omega_j . grad' psi1j + F_j
std::array<SpectralField, 3> zeta2j(const WaveTriple& t, const HarmonicAmplitudes& h,
                                    const Forcing& f);

// (zeta2ji, psi2ji), (zeta2jik, psi2jik) per representative; routed third harmonics get 0
std::map<Harmonic, FieldPair> solve_second_harmonics(const WaveTriple& t,
                                                     const HarmonicAmplitudes& h,
                                                     const CubicCoefficients& cd,
                                                     const HarmonicPlan& plan, double gate);

enum class Stage { First, Forcing, Full };

struct Expansion {
  HarmonicAmplitudes amp;
  std::optional<CoeffTables> tables;
  std::optional<CubicCoefficients> cd;
  std::optional<Forcing> forcing;
};

// Runs the pipeline on one set of macroscopic inputs.
// First: zeta0, zeta1j, zeta10, (zeta1ji, psi1ji) and their t'-derivatives.
// Forcing: additionally tables, C/D and E_j, F_j.
// Full: additionally zeta2j, zeta20 and all second-order harmonic amplitudes.
Expansion expand(const WaveTriple& t, const MacroFields& m, const HarmonicPlan& plan, Stage stage,
                 const CoeffOptions& opt = {});

}  // namespace wavemod
