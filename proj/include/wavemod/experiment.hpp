#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wavemod/config.hpp"
#include "wavemod/csv.hpp"
#include "wavemod/modulation.hpp"
#include "wavemod/residual.hpp"
#include "wavemod/waterwaves.hpp"

namespace wavemod {

// least squares of log y against log x
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> log_x, log_y, residuals;  // residual = log y - fitted
};

// needs >= 3 finite positive points
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// the ingredients of one experiment at one scale ratio M
struct ScaleSetup {
  int M = 0;
  double eps = 0.0;
  PhysicalParams params;
  WaveTriple triple;
  Grid macro, micro;
  DnoConfig dno;
};

ScaleSetup make_setup(const ExperimentConfig& c, int M);
ModulationSolver make_solver(const ExperimentConfig& c, const ScaleSetup& s);
std::array<EnvelopeSpec, 3> seeded_envelopes(const ExperimentConfig& c);

// largest |omega| over the carriers and the harmonics of I and K
double max_frequency(const WaveTriple& t);

struct GateReport {
  double depth = 0.0;          // 1 - eps |zeta0|_inf
  double hyperbolicity = 0.0;  // min of the field a = 1 - b1(eps U0)
  double min_defect = 0.0;     // smallest relative defect over I and K
  bool resonance_ok = false;
};

// the gate quantities without enforcing the thresholds
GateReport measure_gates(const ExperimentConfig& c, const ScaleSetup& s, const SurfaceState& U0);

// depth, hyperbolicity and non-resonance checks on U0 (unscaled); GateFailure naming the
// violated hypothesis
GateReport check_gates(const ExperimentConfig& c, const ScaleSetup& s, const SurfaceState& U0);

struct ConvergencePoint {
  int M = 0;
  double eps = 0.0;
  int micro_n = 0;
  GateReport gates;
  std::vector<double> times;   // microscopic snapshot times
  std::vector<double> errors;  // error_norm(eps U, eps U_{a,1}, N) per snapshot
  double sup_error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergencePoint> points;
  SlopeFit fit;
  CsvTable snapshots() const;  // M, epsilon, t, t_macro, error
  CsvTable summary() const;    // per epsilon: sup error, gates, fit residual; slope columns
};

struct ResidualPoint {
  int M = 0;
  double eps = 0.0;
  GateReport gates;  // recorded, not enforced: consistency does not rest on them
  std::vector<ResidualNorms> full, first;  // U_a and U_{a,1}
  double sup_full = 0.0, sup_first = 0.0;  // max over the residual times of the L2 norms
};

struct ResidualReport {
  std::vector<ResidualPoint> points;
  SlopeFit fit_full, fit_first;
  CsvTable table() const;
  CsvTable summary() const;
};

// runs fn(0..n-1) on at most `workers` threads (0: one per job); results in index order
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

ConvergencePoint convergence_point(const ExperimentConfig& c, int M);
ConvergenceReport run_convergence(const ExperimentConfig& c);

ResidualPoint residual_point(const ExperimentConfig& c, int M);
ResidualReport run_residual(const ExperimentConfig& c);

struct SimulationSnapshot {
  double t = 0.0;
  MacroState state;
};

// macroscopic system on [0, T0] sampled at the snapshot cadence, at scale M.front()
std::vector<SimulationSnapshot> run_simulation(const ExperimentConfig& c);
CsvTable simulation_table(const std::vector<SimulationSnapshot>& snaps);

// consecutive flat binary fields; throws wavemod::Error on I/O failure
void write_fields(const std::string& path, const std::vector<const SpectralField*>& fields);
// psi0_1..3, psi1_1..3, psi00, psi00_t
void write_macro_state(const std::string& path, const MacroState& s);

// coefficients at t' = 0 at scale M.front(): one row per nonzero Fourier coefficient
CsvTable coefficient_dump(const ExperimentConfig& c);

CsvTable dispersion_table(const PhysicalParams& p, double kmin, double kmax, int count);
CsvTable resonance_table(const ScanRequest& req);

}  // namespace wavemod
