#pragma once

// Scenario configuration: flat INI text with [section] headers, key = value
// lines and # comments. Every key must be known; values are parsed strictly.

#include <charconv>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "funcgauge/grid.hpp"
#include "funcgauge/stationary.hpp"

namespace funcgauge::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> c = {"stationary",    "evolve",         "ir-scan",        "gauge-check",
                                             "variational",   "superposition",  "microcausality", "invariants"};
  return c;
}

inline bool is_command(const std::string& c) {
  for (const auto& k : known_commands())
    if (k == c) return true;
  return false;
}

struct ScenarioConfig {
  std::string command;
  struct {
    int n_sites = 1;
    double spacing_a = 1.0;
    int n_phi = 128;
    double phi_max = 8.0;
  } grid;
  struct {
    double mass_m = 1.0;
    double quartic_lambda = 0.0;
    double length_l = 100.0;
    double coupling_f = 1.0;
    std::optional<double> entropy_S;
    std::string s_mode = "charge_neutral";
  } model;
  struct {
    double dt = 1e-3;
    int n_steps = 1000;
    double eps_P = 1e-3;
    std::string mode = "coupled";
    double tol_omega = 1e-9;
    double tol_rho = 1e-8;
    double poisson_tol = 1e-10;
    double mixing_alpha = 0.3;
    int max_iter = 500;
    int target_index = 0;
    std::uint64_t seed = 1;
  } numerics;
  struct {
    std::optional<std::string> directory;
    int record_stride = 10;
    bool dump_states = true;
  } output;
  struct {
    double shift = 0.5;   ///< initial Gaussian centre (evolve)
    double kick = 0.5;    ///< initial phase gradient (evolve)
    double s_offset = 0.0;  ///< added to the matched S in charge-neutral evolve
    std::vector<double> l_values{2, 4, 8, 16, 32, 64};
    double sigma_lo = 0.3;
    double sigma_hi = 1.5;
    bool compare_scf = true;
    double well_separation = 5.0;
    double control_separation = 1.0;
    int kick_site = 0;
    double kick_eps = 0.1;
    double t_spread = 0.5;
    double prefactor_margin = 3.0;
  } scenario;

  ModelParams model_params() const {
    ModelParams p;
    p.mass_m = model.mass_m;
    p.quartic_lambda = model.quartic_lambda;
    p.length_l = model.length_l;
    p.coupling_f = model.coupling_f;
    p.entropy_S = model.entropy_S.value_or(0.0);
    return p;
  }
  SMode s_mode() const { return model.s_mode == "fixed" ? SMode::fixed : SMode::charge_neutral; }
  SCFConfig scf() const {
    SCFConfig c;
    c.mode = s_mode();
    c.mixing_alpha = numerics.mixing_alpha;
    c.tol_omega = numerics.tol_omega;
    c.tol_rho = numerics.tol_rho;
    c.max_iter = numerics.max_iter;
    c.target_index = numerics.target_index;
    c.poisson_tol = numerics.poisson_tol;
    return c;
  }
  Grid make_grid() const { return Grid(grid.n_sites, grid.spacing_a, grid.n_phi, grid.phi_max); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double to_double(const std::string& v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("not a number: '" + v + "'");
  return out;
}

inline long long to_int(const std::string& v) {
  long long out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("not an integer: '" + v + "'");
  return out;
}

inline int to_int32(const std::string& v) {
  const long long x = to_int(v);
  if (x < INT_MIN || x > INT_MAX) throw ConfigError("integer out of range: '" + v + "'");
  return static_cast<int>(x);
}

inline bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("not a boolean: '" + v + "'");
}

inline std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

inline std::string one_of(const std::string& v, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (v == a) return v;
  std::string msg = "expected one of";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw ConfigError(msg + ", got '" + v + "'");
}

using Setter = std::function<void(ScenarioConfig&, const std::string&)>;

inline const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s = {
      {"grid.n_sites", [](ScenarioConfig& c, const std::string& v) { c.grid.n_sites = to_int32(v); }},
      {"grid.spacing_a", [](ScenarioConfig& c, const std::string& v) { c.grid.spacing_a = to_double(v); }},
      {"grid.n_phi", [](ScenarioConfig& c, const std::string& v) { c.grid.n_phi = to_int32(v); }},
      {"grid.phi_max", [](ScenarioConfig& c, const std::string& v) { c.grid.phi_max = to_double(v); }},
      {"model.mass_m", [](ScenarioConfig& c, const std::string& v) { c.model.mass_m = to_double(v); }},
      {"model.quartic_lambda", [](ScenarioConfig& c, const std::string& v) { c.model.quartic_lambda = to_double(v); }},
      {"model.length_l", [](ScenarioConfig& c, const std::string& v) { c.model.length_l = to_double(v); }},
      {"model.coupling_f", [](ScenarioConfig& c, const std::string& v) { c.model.coupling_f = to_double(v); }},
      {"model.entropy_S", [](ScenarioConfig& c, const std::string& v) { c.model.entropy_S = to_double(v); }},
      {"model.s_mode",
       [](ScenarioConfig& c, const std::string& v) { c.model.s_mode = one_of(v, {"charge_neutral", "fixed"}); }},
      {"numerics.dt", [](ScenarioConfig& c, const std::string& v) { c.numerics.dt = to_double(v); }},
      {"numerics.n_steps", [](ScenarioConfig& c, const std::string& v) { c.numerics.n_steps = to_int32(v); }},
      {"numerics.eps_P", [](ScenarioConfig& c, const std::string& v) { c.numerics.eps_P = to_double(v); }},
      {"numerics.mode",
       [](ScenarioConfig& c, const std::string& v) { c.numerics.mode = one_of(v, {"coupled", "linear"}); }},
      {"numerics.tol_omega", [](ScenarioConfig& c, const std::string& v) { c.numerics.tol_omega = to_double(v); }},
      {"numerics.tol_rho", [](ScenarioConfig& c, const std::string& v) { c.numerics.tol_rho = to_double(v); }},
      {"numerics.poisson_tol", [](ScenarioConfig& c, const std::string& v) { c.numerics.poisson_tol = to_double(v); }},
      {"numerics.mixing_alpha", [](ScenarioConfig& c, const std::string& v) { c.numerics.mixing_alpha = to_double(v); }},
      {"numerics.max_iter", [](ScenarioConfig& c, const std::string& v) { c.numerics.max_iter = to_int32(v); }},
      {"numerics.target_index", [](ScenarioConfig& c, const std::string& v) { c.numerics.target_index = to_int32(v); }},
      {"numerics.seed",
       [](ScenarioConfig& c, const std::string& v) {
         const long long s = to_int(v);
         if (s < 0) throw ConfigError("seed must be >= 0");
         c.numerics.seed = static_cast<std::uint64_t>(s);
       }},
      {"output.directory", [](ScenarioConfig& c, const std::string& v) { c.output.directory = v; }},
      {"output.record_stride", [](ScenarioConfig& c, const std::string& v) { c.output.record_stride = to_int32(v); }},
      {"output.dump_states", [](ScenarioConfig& c, const std::string& v) { c.output.dump_states = to_bool(v); }},
      {"scenario.shift", [](ScenarioConfig& c, const std::string& v) { c.scenario.shift = to_double(v); }},
      {"scenario.kick", [](ScenarioConfig& c, const std::string& v) { c.scenario.kick = to_double(v); }},
      {"scenario.s_offset", [](ScenarioConfig& c, const std::string& v) { c.scenario.s_offset = to_double(v); }},
      {"scenario.l_values", [](ScenarioConfig& c, const std::string& v) { c.scenario.l_values = to_list(v); }},
      {"scenario.sigma_lo", [](ScenarioConfig& c, const std::string& v) { c.scenario.sigma_lo = to_double(v); }},
      {"scenario.sigma_hi", [](ScenarioConfig& c, const std::string& v) { c.scenario.sigma_hi = to_double(v); }},
      {"scenario.compare_scf", [](ScenarioConfig& c, const std::string& v) { c.scenario.compare_scf = to_bool(v); }},
      {"scenario.well_separation",
       [](ScenarioConfig& c, const std::string& v) { c.scenario.well_separation = to_double(v); }},
      {"scenario.control_separation",
       [](ScenarioConfig& c, const std::string& v) { c.scenario.control_separation = to_double(v); }},
      {"scenario.kick_site", [](ScenarioConfig& c, const std::string& v) { c.scenario.kick_site = to_int32(v); }},
      {"scenario.kick_eps", [](ScenarioConfig& c, const std::string& v) { c.scenario.kick_eps = to_double(v); }},
      {"scenario.t_spread", [](ScenarioConfig& c, const std::string& v) { c.scenario.t_spread = to_double(v); }},
      {"scenario.prefactor_margin",
       [](ScenarioConfig& c, const std::string& v) { c.scenario.prefactor_margin = to_double(v); }},
  };
  return s;
}

inline void assign(ScenarioConfig& c, const std::string& key, const std::string& value, const std::string& where) {
  const auto& s = setters();
  const auto it = s.find(key);
  if (it == s.end()) throw ConfigError(where + ": unknown key '" + key + "'");
  try {
    it->second(c, value);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + key + ": " + e.what());
  }
}

}  // namespace detail

/// Parses INI text. `source` names the input in error messages.
inline ScenarioConfig parse_config(std::istream& in, const std::string& source = "<config>") {
  ScenarioConfig c;
  std::string line, section;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    const std::string t = detail::trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where + ": malformed section header");
      section = detail::trim(std::string_view(t).substr(1, t.size() - 2));
      static const std::set<std::string> sections = {"grid", "model", "numerics", "output", "scenario"};
      if (!sections.count(section)) throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside of a section");
    const std::string key = section + "." + detail::trim(std::string_view(t).substr(0, eq));
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    detail::assign(c, key, detail::trim(std::string_view(t).substr(eq + 1)), where);
  }
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(f, path);
}

/// Applies a `section.key=value` override.
inline void apply_override(ScenarioConfig& c, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + kv + "': expected section.key=value");
  detail::assign(c, detail::trim(std::string_view(kv).substr(0, eq)), detail::trim(std::string_view(kv).substr(eq + 1)),
                 "override '" + kv + "'");
}

/// Checks the module preconditions that apply to c.command.
inline void validate(const ScenarioConfig& c) {
  if (!is_command(c.command)) throw ConfigError("unknown command '" + c.command + "'");
  Grid g(1, 1.0, 3, 1.0);
  try {
    g = c.make_grid();
    c.model_params().validate();
    c.scf().validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (c.s_mode() == SMode::fixed && !c.model.entropy_S) throw ConfigError("model.s_mode = fixed needs model.entropy_S");
  if (!(c.numerics.dt > 0.0)) throw ConfigError("numerics.dt must be > 0");
  if (!(c.numerics.eps_P > 0.0)) throw ConfigError("numerics.eps_P must be > 0");
  if (c.output.record_stride < 1) throw ConfigError("output.record_stride must be >= 1");
  const std::string& cmd = c.command;
  const bool dense = cmd == "stationary" || cmd == "ir-scan" || cmd == "superposition" ||
                     (cmd == "variational" && c.scenario.compare_scf);
  if (dense && g.size() > kDenseCap)
    throw ConfigError("grid has " + std::to_string(g.size()) + " points; " + cmd + " needs at most " +
                      std::to_string(kDenseCap));
  if (dense && c.numerics.target_index >= static_cast<int>(g.size()))
    throw ConfigError("numerics.target_index exceeds the grid size");
  if (cmd == "evolve") {
    if (c.numerics.n_steps < 2 * c.output.record_stride || c.numerics.n_steps % c.output.record_stride != 0)
      throw ConfigError("numerics.n_steps must be a multiple of output.record_stride and at least twice it");
  }
  if (cmd == "ir-scan") {
    const auto& l = c.scenario.l_values;
    if (l.size() < 4) throw ConfigError("scenario.l_values needs at least 4 entries");
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (!(l[k] > 0.0)) throw ConfigError("scenario.l_values must be > 0");
      if (k > 0 && !(l[k] > l[k - 1])) throw ConfigError("scenario.l_values must be strictly ascending");
    }
  }
  if ((cmd == "variational" || cmd == "superposition") && c.grid.n_sites != 1)
    throw ConfigError(cmd + " needs grid.n_sites = 1");
  if (cmd == "variational" && !(c.scenario.sigma_lo > 0.0 && c.scenario.sigma_hi > c.scenario.sigma_lo))
    throw ConfigError("scenario.sigma_lo/sigma_hi must satisfy 0 < lo < hi");
  if (cmd == "superposition" && !(c.scenario.well_separation > 0.0 && c.scenario.control_separation > 0.0))
    throw ConfigError("scenario.well_separation and control_separation must be > 0");
  if (cmd == "microcausality") {
    if (c.grid.n_sites < 2) throw ConfigError("microcausality needs grid.n_sites >= 2");
    if (c.scenario.kick_site < 0 || c.scenario.kick_site >= c.grid.n_sites)
      throw ConfigError("scenario.kick_site out of range");
    if (!(c.scenario.t_spread > 0.0)) throw ConfigError("scenario.t_spread must be > 0");
    const double steps = c.scenario.t_spread / c.numerics.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * steps || std::round(steps) < 2)
      throw ConfigError("scenario.t_spread must be a multiple of numerics.dt (at least 2 steps)");
  }
}

/// Output directory: explicit --out, then output.directory, then the
/// FUNCGAUGE_OUT environment variable, then ./funcgauge_out.
inline std::string resolve_output_dir(const ScenarioConfig& c, const std::optional<std::string>& cli_out) {
  if (cli_out) return *cli_out;
  if (c.output.directory) return *c.output.directory;
  if (const char* env = std::getenv("FUNCGAUGE_OUT"); env && *env) return env;
  return "funcgauge_out";
}

inline nlohmann::ordered_json to_json(const ScenarioConfig& c, const std::string& out_dir) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["grid"] = {{"n_sites", c.grid.n_sites},
               {"spacing_a", c.grid.spacing_a},
               {"n_phi", c.grid.n_phi},
               {"phi_max", c.grid.phi_max}};
  j["model"] = {{"mass_m", c.model.mass_m},
                {"quartic_lambda", c.model.quartic_lambda},
                {"length_l", c.model.length_l},
                {"coupling_f", c.model.coupling_f},
                {"entropy_S", c.model.entropy_S ? nlohmann::ordered_json(*c.model.entropy_S) : nullptr},
                {"s_mode", c.model.s_mode}};
  j["numerics"] = {{"dt", c.numerics.dt},
                   {"n_steps", c.numerics.n_steps},
                   {"eps_P", c.numerics.eps_P},
                   {"mode", c.numerics.mode},
                   {"tol_omega", c.numerics.tol_omega},
                   {"tol_rho", c.numerics.tol_rho},
                   {"poisson_tol", c.numerics.poisson_tol},
                   {"mixing_alpha", c.numerics.mixing_alpha},
                   {"max_iter", c.numerics.max_iter},
                   {"target_index", c.numerics.target_index},
                   {"seed", c.numerics.seed}};
  j["output"] = {{"directory", out_dir},
                 {"record_stride", c.output.record_stride},
                 {"dump_states", c.output.dump_states}};
  j["scenario"] = {{"shift", c.scenario.shift},
                   {"kick", c.scenario.kick},
                   {"s_offset", c.scenario.s_offset},
                   {"l_values", c.scenario.l_values},
                   {"sigma_lo", c.scenario.sigma_lo},
                   {"sigma_hi", c.scenario.sigma_hi},
                   {"compare_scf", c.scenario.compare_scf},
                   {"well_separation", c.scenario.well_separation},
                   {"control_separation", c.scenario.control_separation},
                   {"kick_site", c.scenario.kick_site},
                   {"kick_eps", c.scenario.kick_eps},
                   {"t_spread", c.scenario.t_spread},
                   {"prefactor_margin", c.scenario.prefactor_margin}};
  return j;
}

}  // namespace funcgauge::cli
