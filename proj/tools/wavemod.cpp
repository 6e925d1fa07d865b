// wavemod: experiment driver for the three-wave modulation system.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "wavemod/config.hpp"
#include "wavemod/csv.hpp"
#include "wavemod/error.hpp"
#include "wavemod/experiment.hpp"
#include "wavemod/resonance.hpp"

using namespace wavemod;

namespace {

enum Exit { kOk = 0, kUsage = 1, kGate = 2, kAbort = 3 };

struct Common {
  std::string config;
  std::vector<std::string> sets;
};

ExperimentConfig load(const Common& o) {
  ExperimentConfig c = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  for (const auto& s : o.sets) apply_override(c, s);
  c.validate();
  return c;
}

std::string out_path(const ExperimentConfig& c, const std::string& suffix) {
  std::filesystem::create_directories(c.output_dir);
  return (std::filesystem::path(c.output_dir) / (c.output_prefix + "_" + suffix + ".csv")).string();
}

void write(const CsvTable& t, const std::string& path) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, t);
    return;
  }
  emit_csv(t, path);
  std::cerr << "wrote " << path << "\n";
}

ScanRange parse_range(const std::string& s, const char* what) {
  ScanRange r;
  char tail;
  if (std::sscanf(s.c_str(), "%lf,%lf,%d%c", &r.min, &r.max, &r.count, &tail) != 3)
    throw ConfigError(std::string(what) + " expects min,max,count");
  return r;
}

void add_common(CLI::App* sub, Common& o) {
  sub->add_option("-c,--config", o.config, "configuration file (section.key = value lines)");
  sub->add_option("--set", o.sets, "override a configuration key, section.key=value");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-wave modulation experiments"};
  app.require_subcommand(1);

  Common c_sim, c_res, c_conv, c_dump;
  std::string output;

  auto* disp = app.add_subcommand("dispersion-table", "omega, g, b and velocities along xi");
  double mu = 1.0, inv_bond = 0.0, kmin = 0.05, kmax = 5.0;
  int count = 100;
  disp->add_option("--mu", mu, "shallowness");
  disp->add_option("--inv-bond", inv_bond, "1/Bo");
  disp->add_option("--kmin", kmin);
  disp->add_option("--kmax", kmax);
  disp->add_option("--count", count);
  disp->add_option("-o,--output", output, "CSV path, '-' for stdout");

  auto* scan = app.add_subcommand("resonance-scan", "near-resonance loci over (mu, 1/Bo, k)");
  std::string mu_range = "1,1,1", bond_range = "0,0,1", k_range = "0.1,5,200", mode = "self";
  int order = 2;
  scan->add_option("--mu-range", mu_range, "min,max,count");
  scan->add_option("--bond-range", bond_range, "min,max,count");
  scan->add_option("--k-range", k_range, "min,max,count");
  scan->add_option("--order", order, "2 or 3");
  scan->add_option("--mode", mode, "self | pair");
  scan->add_option("-o,--output", output, "CSV path, '-' for stdout");

  auto* sim = app.add_subcommand("simulate", "integrate the macroscopic system");
  add_common(sim, c_sim);
  auto* res = app.add_subcommand("residual", "consistency residuals of U_a and U_a1");
  add_common(res, c_res);
  auto* conv = app.add_subcommand("convergence", "error of eps U_a1 against the full evolution");
  add_common(conv, c_conv);
  auto* dump = app.add_subcommand("coeff-dump", "harmonic coefficients at t' = 0");
  add_common(dump, c_dump);
  dump->add_option("-o,--output", output, "CSV path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*disp) {
      PhysicalParams p;
      p.mu = mu;
      p.inv_bond = inv_bond;
      write(dispersion_table(p, kmin, kmax, count), output);
    } else if (*scan) {
      ScanRequest req;
      req.mu = parse_range(mu_range, "--mu-range");
      req.inv_bond = parse_range(bond_range, "--bond-range");
      req.k = parse_range(k_range, "--k-range");
      req.order = order;
      req.mode = mode;
      write(resonance_table(req), output);
    } else if (*sim) {
      ExperimentConfig c = load(c_sim);
      auto snaps = run_simulation(c);
      write(simulation_table(snaps), out_path(c, "simulate"));
      for (std::size_t k = 0; k < snaps.size(); ++k)
        write_macro_state((std::filesystem::path(c.output_dir) /
                           (c.output_prefix + "_simulate_" + std::to_string(k) + ".bin")).string(),
                          snaps[k].state);
      std::cerr << "wrote " << snaps.size() << " binary snapshots\n";
    } else if (*res) {
      ExperimentConfig c = load(c_res);
      ResidualReport r = run_residual(c);
      write(r.table(), out_path(c, "residual"));
      write(r.summary(), out_path(c, "residual_summary"));
      std::cout << "slope U_a " << r.fit_full.slope << "\nslope U_a1 " << r.fit_first.slope << "\n";
    } else if (*conv) {
      ExperimentConfig c = load(c_conv);
      ConvergenceReport r = run_convergence(c);
      write(r.snapshots(), out_path(c, "convergence"));
      write(r.summary(), out_path(c, "convergence_summary"));
      std::cout << "slope " << r.fit.slope << "\n";
    } else if (*dump) {
      ExperimentConfig c = load(c_dump);
      write(coefficient_dump(c), output.empty() ? out_path(c, "coefficients") : output);
    }
  } catch (const GateFailure& e) {
    std::cerr << "gate failure [" << e.hypothesis() << "]: " << e.what() << "\n";
    return kGate;
  } catch (const DepthViolationError& e) {
    std::cerr << "gate failure [depth]: " << e.what() << "\n";
    return kGate;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort at t = " << e.time() << ": " << e.what() << "\n";
    return kAbort;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
    std::cerr << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
