#include "wavemod/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "wavemod/error.hpp"

namespace wavemod {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back({});
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + key + ", got '" + v + "'", 0, key);
  }
}

long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for " + key + ", got '" + v + "'", 0, key);
  }
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split(v, ',')) out.push_back(to_double(key, s));
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s;
}

Vec2 to_vec(const std::string& key, const std::string& v) {
  auto x = to_doubles(key, v);
  if (x.empty() || x.size() > 2) throw ConfigError(key + " expects one or two components", 0, key);
  return {x[0], x.size() == 2 ? x[1] : 0.0};
}

std::string from_vec(const Vec2& v) { return v[1] == 0.0 ? fmt(v[0]) : fmt(v[0]) + "," + fmt(v[1]); }

struct Key {
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

using Registry = std::vector<std::pair<std::string, Key>>;

template <class T>
Key number(T ExperimentConfig::*field, const std::string& name) {
  return {[field](const ExperimentConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return fmt(c.*field);
            else return std::to_string(c.*field);
          },
          [field, name](ExperimentConfig& c, const std::string& v) {
            if constexpr (std::is_floating_point_v<T>) c.*field = to_double(name, v);
            else c.*field = T(to_int(name, v));
          }};
}

Key text(std::string ExperimentConfig::*field) {
  return {[field](const ExperimentConfig& c) { return c.*field; },
          [field](ExperimentConfig& c, const std::string& v) { c.*field = v; }};
}

const Registry& registry() {
  static const Registry r = [] {
    Registry r;
    auto add = [&r](const std::string& name, Key k) { r.emplace_back(name, std::move(k)); };
    add("params.mu", number(&ExperimentConfig::mu, "params.mu"));
    add("params.inv_bond", number(&ExperimentConfig::inv_bond, "params.inv_bond"));
    add("params.dim", number(&ExperimentConfig::dim, "params.dim"));
    for (int j = 0; j < 3; ++j) {
      std::string name = "carriers.xi" + std::to_string(j + 1);
      add(name, {[j](const ExperimentConfig& c) { return from_vec(c.carriers[j]); },
                 [j, name](ExperimentConfig& c, const std::string& v) { c.carriers[j] = to_vec(name, v); }});
    }
    add("scale.M", {[](const ExperimentConfig& c) {
                      std::vector<std::string> s;
                      for (int m : c.M) s.push_back(std::to_string(m));
                      return join(s);
                    },
                    [](ExperimentConfig& c, const std::string& v) {
                      c.M.clear();
                      for (const auto& s : split(v, ',')) c.M.push_back(int(to_int("scale.M", s)));
                    }});
    add("scale.micro_n", number(&ExperimentConfig::micro_n, "scale.micro_n"));
    add("scale.micro_scaling", text(&ExperimentConfig::micro_scaling));
    add("scale.macro_n", number(&ExperimentConfig::macro_n, "scale.macro_n"));
    add("run.T0", number(&ExperimentConfig::T0, "run.T0"));
    add("run.dt_macro", number(&ExperimentConfig::dt_macro, "run.dt_macro"));
    add("run.dt", number(&ExperimentConfig::dt, "run.dt"));
    add("run.snapshots_per_unit", number(&ExperimentConfig::snapshots_per_unit, "run.snapshots_per_unit"));
    add("run.residual_times", {[](const ExperimentConfig& c) {
                                 std::vector<std::string> s;
                                 for (double t : c.residual_times) s.push_back(fmt(t));
                                 return join(s);
                               },
                               [](ExperimentConfig& c, const std::string& v) {
                                 c.residual_times = to_doubles("run.residual_times", v);
                               }});
    add("run.dno_order", number(&ExperimentConfig::dno_order, "run.dno_order"));
    add("run.error_N", number(&ExperimentConfig::error_N, "run.error_N"));
    add("run.workers", number(&ExperimentConfig::workers, "run.workers"));
    add("run.seed", number(&ExperimentConfig::seed, "run.seed"));
    for (int j = 0; j < 3; ++j) {
      std::string s = std::to_string(j + 1);
      add("envelope.family" + s, {[j](const ExperimentConfig& c) { return c.envelope[j].family; },
                                  [j](ExperimentConfig& c, const std::string& v) { c.envelope[j].family = v; }});
      std::string an = "envelope.amplitude" + s;
      add(an, {[j](const ExperimentConfig& c) { return fmt(c.envelope[j].amplitude); },
               [j, an](ExperimentConfig& c, const std::string& v) { c.envelope[j].amplitude = to_double(an, v); }});
      std::string wn = "envelope.width" + s;
      add(wn, {[j](const ExperimentConfig& c) { return fmt(c.envelope[j].width); },
               [j, wn](ExperimentConfig& c, const std::string& v) { c.envelope[j].width = to_double(wn, v); }});
      std::string cn = "envelope.center" + s;
      add(cn, {[j](const ExperimentConfig& c) { return fmt(c.envelope[j].center); },
               [j, cn](ExperimentConfig& c, const std::string& v) { c.envelope[j].center = to_double(cn, v); }});
      std::string mn = "envelope.mode" + s;
      add(mn, {[j](const ExperimentConfig& c) {
                 const auto& m = c.envelope[j].mode;
                 return m[1] == 0 ? std::to_string(m[0]) : std::to_string(m[0]) + "," + std::to_string(m[1]);
               },
               [j, mn](ExperimentConfig& c, const std::string& v) {
                 auto parts = split(v, ',');
                 if (parts.empty() || parts.size() > 2) throw ConfigError(mn + " expects one or two integers", 0, mn);
                 c.envelope[j].mode = {int(to_int(mn, parts[0])), parts.size() == 2 ? int(to_int(mn, parts[1])) : 0};
               }});
    }
    add("gates.h_min", number(&ExperimentConfig::h_min, "gates.h_min"));
    add("gates.a0", number(&ExperimentConfig::a0, "gates.a0"));
    add("gates.resonance_tol", number(&ExperimentConfig::resonance_tol, "gates.resonance_tol"));
    add("gates.near_gate", number(&ExperimentConfig::near_gate, "gates.near_gate"));
    add("output.dir", text(&ExperimentConfig::output_dir));
    add("output.prefix", text(&ExperimentConfig::output_prefix));
    add("output.binary", number(&ExperimentConfig::binary, "output.binary"));
    return r;
  }();
  return r;
}

const Key* find_key(const std::string& name) {
  for (const auto& [k, v] : registry())
    if (k == name) return &v;
  return nullptr;
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& value, int line) {
  const Key* k = find_key(key);
  if (!k) throw ConfigError("unknown key '" + key + "'", line, key);
  try {
    k->set(c, value);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), line, key);
  }
}

bool integral(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

}  // namespace

PhysicalParams ExperimentConfig::params(int M_value) const {
  PhysicalParams p;
  p.mu = mu;
  p.inv_bond = inv_bond;
  p.dim = dim;
  p.epsilon = 1.0 / M_value;
  return p;
}

int ExperimentConfig::micro_points(int M_value) const {
  if (micro_scaling == "fixed" || M.empty()) return micro_n;
  return int(std::lround(double(micro_n) * M_value / M.front()));
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what, 0, key);
  };
  if (!(mu >= 1.0 && mu <= PhysicalParams::kMuMax)) fail("params.mu", "must be in [1, 1e8]");
  if (!(inv_bond >= 0.0)) fail("params.inv_bond", "must be non-negative");
  if (dim != 1 && dim != 2) fail("params.dim", "must be 1 or 2");
  if (M.empty()) fail("scale.M", "empty list");
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (M[i] < 1) fail("scale.M", "entries must be positive");
    if (i > 0 && M[i] <= M[i - 1]) fail("scale.M", "must be strictly ascending (epsilon descending)");
  }
  for (int j = 0; j < 3; ++j) {
    std::string key = "carriers.xi" + std::to_string(j + 1);
    const Vec2& x = carriers[j];
    if (norm2(x) == 0.0) fail(key, "carrier vanishes");
    if (dim == 1 && x[1] != 0.0) fail(key, "second component given for d = 1");
    for (int m : M)
      for (int a = 0; a < dim; ++a)
        if (!integral(m * x[a])) fail(key, "M xi not on the integer lattice for M = " + std::to_string(m));
    for (int i = 0; i < j; ++i)
      if (carriers[i] == x) fail(key, "coincides with another carrier");
  }
  if (micro_scaling != "proportional" && micro_scaling != "fixed")
    fail("scale.micro_scaling", "must be proportional or fixed");
  for (int m : M) {
    int n = micro_points(m);
    if (n < 8 || (n & (n - 1)) != 0) fail("scale.micro_n", "micro grid points must be a power of two >= 8");
  }
  if (macro_n < 8 || (macro_n & (macro_n - 1)) != 0) fail("scale.macro_n", "must be a power of two >= 8");
  if (!(T0 > 0.0)) fail("run.T0", "must be positive");
  if (!(dt_macro > 0.0)) fail("run.dt_macro", "must be positive");
  if (!(dt > 0.0)) fail("run.dt", "must be positive");
  if (snapshots_per_unit < 1) fail("run.snapshots_per_unit", "must be positive");
  for (double t : residual_times)
    if (!(t >= 0.0 && t <= T0)) fail("run.residual_times", "times must lie in [0, T0]");
  if (dno_order < 1 || dno_order > 8) fail("run.dno_order", "must be in 1..8");
  if (error_N < 2) fail("run.error_N", "must be >= 2");
  if (workers < 0) fail("run.workers", "must be non-negative");
  for (int j = 0; j < 3; ++j) {
    const auto& e = envelope[j];
    std::string s = std::to_string(j + 1);
    if (e.family != "zero" && e.family != "mode" && e.family != "bump" && e.family != "random")
      fail("envelope.family" + s, "unknown family '" + e.family + "'");
    if (!(e.width > 0.0)) fail("envelope.width" + s, "must be positive");
  }
  if (!(h_min > 0.0 && h_min < 1.0)) fail("gates.h_min", "must be in (0, 1)");
  if (!(a0 > 0.0)) fail("gates.a0", "must be positive");
  if (!(resonance_tol > 0.0)) fail("gates.resonance_tol", "must be positive");
  if (!(near_gate > 0.0)) fail("gates.near_gate", "must be positive");
  if (output_prefix.empty()) fail("output.prefix", "must not be empty");
  if (binary != 0 && binary != 1) fail("output.binary", "must be 0 or 1");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string raw;
  int line = 0, assignments = 0;
  while (std::getline(is, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'section.key = value'", line);
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.find('.') == std::string::npos) throw ConfigError("key '" + key + "' lacks a section", line, key);
    set_key(c, key, value, line);
    ++assignments;
  }
  if (assignments == 0) throw ConfigError("configuration is empty", line);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open configuration '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::string out;
  std::string section;
  for (const auto& [k, v] : registry()) {
    std::string sec = k.substr(0, k.find('.'));
    if (sec != section) {
      if (!section.empty()) out += "\n";
      section = sec;
    }
    out += k + " = " + v.get(c) + "\n";
  }
  return out;
}

void apply_override(ExperimentConfig& c, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override must read section.key=value: '" + assignment + "'");
  set_key(c, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), 0);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : registry()) k.push_back(e.first);
    return k;
  }();
  return keys;
}

}  // namespace wavemod
