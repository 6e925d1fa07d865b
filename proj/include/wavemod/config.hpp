#pragma once

#include <array>
#include <string>
#include <vector>

#include "wavemod/dispersion.hpp"
#include "wavemod/modulation.hpp"

namespace wavemod {

// Line-based `section.key = value` experiment description. Lists are comma-separated,
// vectors are "a" (d = 1) or "a,b" (d = 2). '#' starts a comment.
struct ExperimentConfig {
  // params
  double mu = 1.0;
  double inv_bond = 0.0;
  int dim = 1;

  // carriers; M * xi_j must be integral for every M
  std::array<Vec2, 3> carriers{{{1.0, 0.0}, {1.5, 0.0}, {0.75, 0.0}}};

  // scale: epsilon = 1/M, M ascending (epsilon descending)
  std::vector<int> M{16, 32, 64};
  int micro_n = 512;                          // micro points per axis at M.front()
  std::string micro_scaling = "proportional"; // proportional (to M) | fixed
  int macro_n = 64;

  // run
  double T0 = 1.0;
  double dt_macro = 1.0 / 64.0;
  double dt = 0.02;
  int snapshots_per_unit = 16;
  std::vector<double> residual_times{0.25, 0.5};
  int dno_order = 4;
  int error_N = 5;
  int workers = 0;  // 0: one per job

  // envelope, per wave
  std::array<EnvelopeSpec, 3> envelope{};

  // gates
  double h_min = 0.5;
  double a0 = 0.5;
  double resonance_tol = 1e-6;
  double near_gate = 1e-3;

  // output
  std::string output_dir = ".";
  std::string output_prefix = "run";
  int binary = 0;  // convergence: micro snapshots as flat binary fields
  unsigned seed = 1;

  bool operator==(const ExperimentConfig&) const = default;

  PhysicalParams params(int M_value) const;
  int micro_points(int M_value) const;
  // ConfigError naming the offending key
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& c);
// applies one `section.key=value` override (no validation)
void apply_override(ExperimentConfig& c, const std::string& assignment);
// every recognised key
const std::vector<std::string>& config_keys();

}  // namespace wavemod
