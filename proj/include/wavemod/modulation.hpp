#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wavemod/coefficients.hpp"
#include "wavemod/surface.hpp"

namespace wavemod {

// unknowns of the macroscopic system at macroscopic time t
struct MacroState {
  double t = 0.0;
  std::array<SpectralField, 3> psi0;
  SpectralField psi00, psi00_t;  // real
  std::array<SpectralField, 3> psi1;
};

struct WavePair {
  SpectralField u, u_t;
};

using FieldProvider = std::function<SpectralField(double)>;

// exp(-i (v.k) dt) per Fourier mode: exact solution of d_t u + v.grad u = 0
SpectralField step_transport_exact(const SpectralField& u, double dt, const Vec2& velocity);

// u'' - sqrt(mu) Lap u = S over [t0, t0+dt]: exact per-mode propagator, Duhamel term by
// Simpson's rule with S at t0, t0+dt/2, t0+dt
WavePair step_wave(const WavePair& w, double dt, const PhysicalParams& p,
                   const FieldProvider& source, double t0);
// the same with the three source samples given
WavePair step_wave(const WavePair& w, double dt, const PhysicalParams& p, const SpectralField& s0,
                   const SpectralField& s_half, const SpectralField& s1);

// d_t u + v.grad u = E over [t0, t0+dt], integrating factor plus 4th-order quadrature
SpectralField step_transport_forced(const SpectralField& u, double dt, const Vec2& velocity,
                                    const FieldProvider& forcing, double t0);
SpectralField step_transport_forced(const SpectralField& u, double dt, const Vec2& velocity,
                                    const SpectralField& e0, const SpectralField& e_half,
                                    const SpectralField& e1);

// discrete energy |u_t|^2 + sqrt(mu)|grad u|^2
double wave_energy(const WavePair& w, const PhysicalParams& p);

class ModulationSolver {
 public:
  ModulationSolver(WaveTriple triple, MacroState initial, CoeffOptions opt = {});

  const WaveTriple& triple() const { return triple_; }
  const HarmonicPlan& plan() const { return plan_; }
  const MacroState& initial() const { return init_; }
  const CoeffOptions& options() const { return opt_; }

  // leading envelopes in closed form (exact shift of the initial data)
  std::array<SpectralField, 3> psi0_at(double t) const;
  // right side of the mean-field wave equation
  SpectralField wave_source(double t) const;
  // E_j for the given mean field at time t; E_j does not involve psi1j
  std::array<SpectralField, 3> forcing_at(double t, const SpectralField& psi00,
                                          const SpectralField& psi00_t) const;

  // one step of size dt
  MacroState step(const MacroState& s, double dt) const;
  // steps of size <= dt up to time T (the last step is shortened)
  MacroState advance(const MacroState& s, double T, double dt) const;
  // states at the requested sample times (sorted ascending, within [0, T0])
  std::vector<MacroState> integrate(double T0, double dt, const std::vector<double>& samples) const;

  MacroFields fields(const MacroState& s) const;
  Expansion expansion(const MacroState& s, Stage stage = Stage::Full) const;

 private:
  MacroState step_cached(const MacroState& s, double dt, std::array<SpectralField, 3>& e0) const;

  WaveTriple triple_;
  HarmonicPlan plan_;
  MacroState init_;
  CoeffOptions opt_;
};

// initial envelope families on the macroscopic torus [0, 2 pi)^d
struct EnvelopeSpec {
  std::string family = "zero";  // zero | mode | bump | random
  double amplitude = 0.0;
  double width = 0.5;           // bump: exp(-(1 - cos(X' - center))/width^2) per axis
  double center = 3.14159265358979323846;
  std::array<int, 2> mode{1, 0};  // mode: amplitude exp(i mode.X')
  unsigned seed = 1;             // random: complex coefficients, |m| <= mode[0], decaying

  bool operator==(const EnvelopeSpec&) const = default;
};

// band-limited to half the macroscopic Nyquist
SpectralField make_envelope(const Grid& macro, const EnvelopeSpec& e);
MacroState initial_state(const Grid& macro, const std::array<EnvelopeSpec, 3>& env);

enum class ApproxOrder { Leading, First, Full };

// Sums the rows of the two-scale approximation up to the given order at microscopic time t,
// with envelopes taken from `amp` (evaluated at t' = t/M by the caller). The macro torus has
// period 2 pi, the micro torus 2 pi M; carriers must satisfy M xi_j in Z^d. The result is
// multiplied by `scale` (use epsilon for epsilon U_a).
SurfaceState reconstruct(const WaveTriple& triple, const HarmonicPlan& plan,
                         const HarmonicAmplitudes& amp, ApproxOrder order, int M,
                         const Grid& micro, double t, double scale = 1.0);

}  // namespace wavemod
