#include "esbgk/core/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "esbgk/core/error.hpp"

namespace esbgk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
  }
  return v;
}

long parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(key, item));
  return out;
}

Vec parse_vec(const std::string& key, const std::string& text) {
  const auto xs = parse_list(key, text);
  if (xs.empty() || xs.size() > static_cast<std::size_t>(kMaxDim)) {
    throw ConfigError("key '" + key + "': expected 1 to 3 comma-separated numbers");
  }
  Vec v{};
  std::copy(xs.begin(), xs.end(), v.begin());
  return v;
}

template <typename Enum>
Enum parse_enum(const std::string& key, const std::string& text,
                const std::vector<std::pair<std::string, Enum>>& names) {
  const std::string t = trim(text);
  for (const auto& [name, value] : names) {
    if (name == t) return value;
  }
  std::string allowed;
  for (const auto& n : names) allowed += (allowed.empty() ? "" : "|") + n.first;
  throw ConfigError("key '" + key + "': expected " + allowed + ", got '" + text + "'");
}

const std::vector<std::pair<std::string, Comparison>> kComparisons = {
    {"none", Comparison::None}, {"euler", Comparison::Euler}, {"ns", Comparison::Ns}};
const std::vector<std::pair<std::string, Limiter>> kLimiters = {
    {"minmod", Limiter::Minmod}, {"vanleer", Limiter::VanLeer}};
const std::vector<std::pair<std::string, CollisionModel>> kModels = {
    {"esbgk", CollisionModel::EsBgk}, {"bgk", CollisionModel::Bgk}};
const std::vector<std::pair<std::string, InvalidStatePolicy>> kPolicies = {
    {"abort", InvalidStatePolicy::Abort}, {"clamp", InvalidStatePolicy::Clamp}};
const std::vector<std::pair<std::string, BoundaryKind>> kBoundaries = {
    {"outflow", BoundaryKind::Outflow}, {"periodic", BoundaryKind::Periodic}};
const std::vector<std::pair<std::string, KappaModel>> kKappa = {
    {"chapman_enskog", KappaModel::ChapmanEnskog}, {"rho_t", KappaModel::RhoT}};
const std::vector<std::pair<std::string, Scenario>> kScenarios = {
    {"smooth_periodic", Scenario::SmoothPeriodic},
    {"riemann", Scenario::Riemann},
    {"cylinder", Scenario::Cylinder},
    {"custom", Scenario::Custom}};

template <typename Enum>
std::string name_of(Enum value, const std::vector<std::pair<std::string, Enum>>& names) {
  for (const auto& [n, v] : names) {
    if (v == value) return n;
  }
  return "?";
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const Scenario s = parse_enum(k, v, kScenarios);
         if (s != c.scenario) throw ConfigError("key 'scenario' cannot change after the preset");
       }},
      {"dv",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.dim_v = static_cast<int>(parse_int(k, v));
       }},
      {"nx",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const auto parts = split(v, ',');
         if (parts.empty() || parts.size() > 2) throw ConfigError("key 'nx': expected N or N,N");
         c.n_x[0] = static_cast<int>(parse_int(k, parts[0]));
         c.n_x[1] = parts.size() == 2 ? static_cast<int>(parse_int(k, parts[1]))
                                      : (c.dim_x == 2 ? c.n_x[0] : 1);
       }},
      {"nv",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.n_v = static_cast<int>(parse_int(k, v));
       }},
      {"vmax",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.v_max = trim(v) == "auto" ? 0.0 : parse_double(k, v);
       }},
      {"eps", [](ScenarioConfig& c, const std::string& k,
                 const std::string& v) { c.eps = parse_double(k, v); }},
      {"nu", [](ScenarioConfig& c, const std::string& k,
                const std::string& v) { c.nu = parse_double(k, v); }},
      {"tau_coeff", [](ScenarioConfig& c, const std::string& k,
                       const std::string& v) { c.tau.coeff = parse_double(k, v); }},
      {"tau_omega", [](ScenarioConfig& c, const std::string& k,
                       const std::string& v) { c.tau.omega = parse_double(k, v); }},
      {"cfl", [](ScenarioConfig& c, const std::string& k,
                 const std::string& v) { c.cfl = parse_double(k, v); }},
      {"cfl_limit", [](ScenarioConfig& c, const std::string& k,
                       const std::string& v) { c.cfl_limit = parse_double(k, v); }},
      {"t_end", [](ScenarioConfig& c, const std::string& k,
                   const std::string& v) { c.t_end = parse_double(k, v); }},
      {"snapshots", [](ScenarioConfig& c, const std::string& k,
                       const std::string& v) { c.snapshots = parse_list(k, v); }},
      {"out", [](ScenarioConfig& c, const std::string&,
                 const std::string& v) { c.out_dir = trim(v); }},
      {"compare", [](ScenarioConfig& c, const std::string& k,
                     const std::string& v) { c.compare = parse_enum(k, v, kComparisons); }},
      {"kappa_model", [](ScenarioConfig& c, const std::string& k,
                         const std::string& v) { c.kappa_model = parse_enum(k, v, kKappa); }},
      {"limiter", [](ScenarioConfig& c, const std::string& k,
                     const std::string& v) { c.limiter = parse_enum(k, v, kLimiters); }},
      {"model", [](ScenarioConfig& c, const std::string& k,
                   const std::string& v) { c.model = parse_enum(k, v, kModels); }},
      {"invalid_state",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.invalid_state = parse_enum(k, v, kPolicies);
       }},
      {"spd_floor_limit", [](ScenarioConfig& c, const std::string& k,
                             const std::string& v) { c.spd_floor_limit = parse_int(k, v); }},
      {"conservative_equilibrium",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.conservative_equilibrium =
             parse_enum(k, v, std::vector<std::pair<std::string, bool>>{{"true", true},
                                                                        {"false", false}});
       }},
      {"amplitude", [](ScenarioConfig& c, const std::string& k,
                       const std::string& v) { c.amplitude = parse_double(k, v); }},
      {"t0", [](ScenarioConfig& c, const std::string& k,
                const std::string& v) { c.t0 = parse_double(k, v); }},
      {"u0", [](ScenarioConfig& c, const std::string& k,
                const std::string& v) { c.u0 = parse_vec(k, v); }},
      {"rho_l", [](ScenarioConfig& c, const std::string& k,
                   const std::string& v) { c.left.rho = parse_double(k, v); }},
      {"u_l", [](ScenarioConfig& c, const std::string& k,
                 const std::string& v) { c.left.u = parse_vec(k, v); }},
      {"t_l", [](ScenarioConfig& c, const std::string& k,
                 const std::string& v) { c.left.T = parse_double(k, v); }},
      {"rho_r", [](ScenarioConfig& c, const std::string& k,
                   const std::string& v) { c.right.rho = parse_double(k, v); }},
      {"u_r", [](ScenarioConfig& c, const std::string& k,
                 const std::string& v) { c.right.u = parse_vec(k, v); }},
      {"t_r", [](ScenarioConfig& c, const std::string& k,
                 const std::string& v) { c.right.T = parse_double(k, v); }},
      {"x_min", [](ScenarioConfig& c, const std::string& k,
                   const std::string& v) { c.lo[0] = parse_double(k, v); }},
      {"x_max", [](ScenarioConfig& c, const std::string& k,
                   const std::string& v) { c.hi[0] = parse_double(k, v); }},
      {"boundary", [](ScenarioConfig& c, const std::string& k,
                      const std::string& v) { c.boundary = parse_enum(k, v, kBoundaries); }},
      {"mach",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.mach = parse_double(k, v);
         if (c.scenario == Scenario::Riemann) c.left.u = Vec{c.mach * std::numbers::sqrt2, 0.0, 0.0};
       }},
      {"wall_temperature", [](ScenarioConfig& c, const std::string& k,
                              const std::string& v) { c.wall_temperature = parse_double(k, v); }},
  };
  return table;
}

std::string num(double v) { return fmt::format("{}", v); }

std::string vec_text(const Vec& v, int dim) {
  std::string s;
  for (int i = 0; i < dim; ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

std::vector<double> riemann_snapshots(double eps) {
  if (eps <= 1e-3) return {0.1, 0.2, 0.3};
  return {0.1, 0.25, 0.4};
}

}  // namespace

std::string to_string(Scenario s) { return name_of(s, kScenarios); }

Scenario scenario_from_string(const std::string& name) {
  return parse_enum("scenario", name, kScenarios);
}

ScenarioConfig preset(Scenario s) {
  ScenarioConfig c;
  c.scenario = s;
  switch (s) {
    case Scenario::SmoothPeriodic:
      c.dim_x = 1;
      c.n_x = {100, 1};
      c.lo = {-1.0, 0.0};
      c.hi = {1.0, 1.0};
      c.n_v = 32;
      c.eps = 1e-2;
      c.nu = -1.0;
      c.t_end = 20.0;
      c.snapshots = {5.0, 10.0, 20.0};
      c.boundary = BoundaryKind::Periodic;
      break;
    case Scenario::Riemann:
      c.dim_x = 1;
      c.n_x = {200, 1};
      c.lo = {-1.0, 0.0};
      c.hi = {1.0, 1.0};
      c.n_v = 32;
      c.eps = 0.5;
      c.nu = 0.5;
      c.mach = 2.5;
      c.left = {1.0, Vec{c.mach * std::numbers::sqrt2, 0.0, 0.0}, 1.0};
      c.right = {1.0, Vec{}, 1.05};
      c.boundary = BoundaryKind::Outflow;
      break;
    case Scenario::Cylinder:
      c.dim_x = 2;
      c.n_x = {64, 64};
      c.lo = {-8.0, -8.0};
      c.hi = {8.0, 8.0};
      c.n_v = 24;
      c.eps = 1e-2;
      c.nu = -1.0;
      c.mach = 0.5;
      c.t_end = 30.0;
      c.snapshots = {1.0, 6.0, 16.0, 30.0};
      c.wall_temperature = 1.05;
      break;
    case Scenario::Custom:
      c.dim_x = 1;
      c.boundary = BoundaryKind::Outflow;
      c.left = {1.0, Vec{}, 1.0};
      c.right = {1.0, Vec{}, 1.0};
      c.t_end = -1.0;
      c.eps = -1.0;
      c.n_x = {0, 1};
      c.n_v = 0;
      break;
  }
  return c;
}

void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(trim(key));
  if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
  it->second(cfg, it->first, value);
  cfg.explicit_keys.insert(it->first);
}

std::vector<MomentSet> ScenarioConfig::reference_states() const {
  std::vector<MomentSet> s;
  const int d = dim_v;
  switch (scenario) {
    case Scenario::SmoothPeriodic: {
      Vec minus{};
      for (int i = 0; i < d; ++i) minus[i] = -u0[i];
      s.push_back(MomentSet::from_primitive(d, 1.0, u0, t0));
      s.push_back(MomentSet::from_primitive(d, 1.0, minus, t0));
      s.push_back(MomentSet::from_primitive(d, 1.0, Vec{}, t0 + dot(u0, u0, d) / d));
      break;
    }
    case Scenario::Cylinder:
      s.push_back(MomentSet::from_primitive(
          d, 1.0, Vec{mach * std::sqrt(2.0 * 1.0), 0.0, 0.0}, 1.0));
      s.push_back(MomentSet::from_primitive(d, 1.0, Vec{}, wall_temperature));
      break;
    case Scenario::Riemann:
    case Scenario::Custom:
      s.push_back(MomentSet::from_primitive(d, left.rho, left.u, left.T));
      s.push_back(MomentSet::from_primitive(d, right.rho, right.u, right.T));
      break;
  }
  return s;
}

double ScenarioConfig::resolved_v_max() const {
  if (v_max > 0.0) return v_max;
  const auto states = reference_states();
  return velocity_cutoff(states);
}

void finalize(ScenarioConfig& c) {
  const auto has = [&](const char* k) { return c.explicit_keys.count(k) > 0; };
  if (c.scenario == Scenario::Custom) {
    std::vector<std::string> missing;
    for (const char* k : {"t_end", "eps", "nx", "nv"}) {
      if (!has(k)) missing.emplace_back(k);
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw ConfigError("custom scenario requires key(s): " + list);
    }
  }
  if (c.scenario == Scenario::Riemann) {
    if (!has("snapshots")) c.snapshots = riemann_snapshots(c.eps);
    if (!has("t_end")) {
      c.t_end = c.snapshots.empty() ? 0.0 : *std::max_element(c.snapshots.begin(), c.snapshots.end());
    }
  }
  if (c.dim_x == 1) c.n_x[1] = 1;
  if (!has("snapshots")) {
    std::erase_if(c.snapshots, [&](double s) { return s > c.t_end; });
  }

  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("key '" + key + "': " + why);
  };
  if (c.dim_v < 1 || c.dim_v > kMaxDim) fail("dv", "must be 1, 2 or 3");
  if (c.dim_v < c.dim_x) fail("dv", "must be at least the space dimension");
  if (!(c.eps > 0.0)) fail("eps", "must be > 0");
  if (!(c.nu >= -1.0)) fail("nu", "must be >= -1");
  if (!(c.nu < 1.0)) fail("nu", "must be < 1 (Pr = 1/(1-nu) is singular at nu = 1)");
  if (c.n_v < 4) fail("nv", "must be >= 4");
  if (c.n_x[0] < 2 || (c.dim_x == 2 && c.n_x[1] < 2)) fail("nx", "needs at least 2 cells per axis");
  if (c.v_max < 0.0) fail("vmax", "must be > 0 or auto");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) fail("cfl", "must lie in (0, 1]");
  if (!(c.cfl_limit > 0.0 && c.cfl_limit <= 1.0)) fail("cfl_limit", "must lie in (0, 1]");
  if (c.cfl > c.cfl_limit) fail("cfl", "exceeds cfl_limit");
  if (!(c.t_end >= 0.0)) fail("t_end", "must be >= 0");
  for (double s : c.snapshots) {
    if (s < 0.0 || s > c.t_end) fail("snapshots", "times must lie in [0, t_end]");
  }
  if (!(c.tau.coeff > 0.0)) fail("tau_coeff", "must be > 0");
  if (c.spd_floor_limit < 0) fail("spd_floor_limit", "must be >= 0");
  if (c.compare != Comparison::None && c.dim_x != 1) {
    fail("compare", "fluid reference is available for 1-D scenarios only");
  }
  if (c.out_dir.empty()) fail("out", "must not be empty");
  if (!(c.hi[0] > c.lo[0])) fail("x_max", "must exceed x_min");
  switch (c.scenario) {
    case Scenario::SmoothPeriodic:
      if (!(c.amplitude >= 0.0 && c.amplitude < 1.0)) fail("amplitude", "must lie in [0, 1)");
      if (!(c.t0 > 0.0)) fail("t0", "must be > 0");
      break;
    case Scenario::Riemann:
    case Scenario::Custom:
      if (!(c.left.rho > 0.0)) fail("rho_l", "must be > 0");
      if (!(c.left.T > 0.0)) fail("t_l", "must be > 0");
      if (!(c.right.rho > 0.0)) fail("rho_r", "must be > 0");
      if (!(c.right.T > 0.0)) fail("t_r", "must be > 0");
      break;
    case Scenario::Cylinder:
      if (!(c.mach >= 0.0)) fail("mach", "must be >= 0");
      if (!(c.wall_temperature > 0.0)) fail("wall_temperature", "must be > 0");
      break;
  }
  std::sort(c.snapshots.begin(), c.snapshots.end());
  c.snapshots.erase(std::unique(c.snapshots.begin(), c.snapshots.end()), c.snapshots.end());
}

std::vector<std::string> ScenarioConfig::echo() const {
  std::vector<std::string> lines;
  auto add = [&](const std::string& k, const std::string& v) { lines.push_back(k + "=" + v); };
  add("scenario", to_string(scenario));
  add("dv", std::to_string(dim_v));
  add("nx", dim_x == 2 ? fmt::format("{},{}", n_x[0], n_x[1]) : std::to_string(n_x[0]));
  add("nv", std::to_string(n_v));
  add("vmax", num(resolved_v_max()));
  add("eps", num(eps));
  add("nu", num(nu));
  add("tau_coeff", num(tau.coeff));
  add("tau_omega", num(tau.omega));
  add("cfl", num(cfl));
  add("cfl_limit", num(cfl_limit));
  add("t_end", num(t_end));
  std::string snaps;
  for (double s : snapshots) snaps += (snaps.empty() ? "" : ",") + num(s);
  add("snapshots", snaps);
  add("out", out_dir);
  add("compare", name_of(compare, kComparisons));
  add("kappa_model", name_of(kappa_model, kKappa));
  add("limiter", name_of(limiter, kLimiters));
  add("model", name_of(model, kModels));
  add("invalid_state", name_of(invalid_state, kPolicies));
  add("spd_floor_limit", std::to_string(spd_floor_limit));
  add("conservative_equilibrium", conservative_equilibrium ? "true" : "false");
  switch (scenario) {
    case Scenario::SmoothPeriodic:
      add("amplitude", num(amplitude));
      add("t0", num(t0));
      add("u0", vec_text(u0, dim_v));
      break;
    case Scenario::Riemann:
    case Scenario::Custom:
      if (scenario == Scenario::Riemann) add("mach", num(mach));
      add("rho_l", num(left.rho));
      add("u_l", vec_text(left.u, dim_v));
      add("t_l", num(left.T));
      add("rho_r", num(right.rho));
      add("u_r", vec_text(right.u, dim_v));
      add("t_r", num(right.T));
      add("x_min", num(lo[0]));
      add("x_max", num(hi[0]));
      if (scenario == Scenario::Custom) add("boundary", name_of(boundary, kBoundaries));
      break;
    case Scenario::Cylinder:
      add("mach", num(mach));
      add("wall_temperature", num(wall_temperature));
      break;
  }
  return lines;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Settings out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

ScenarioConfig parse_config(const std::optional<std::string>& file, const Settings& overrides) {
  Settings from_file;
  if (file) from_file = read_config_file(*file);

  std::optional<std::string> scenario;
  for (const auto& [k, v] : from_file) {
    if (k == "scenario") scenario = v;
  }
  for (const auto& [k, v] : overrides) {
    if (k == "scenario") scenario = v;
  }
  if (!scenario) throw ConfigError("key 'scenario' is required");

  ScenarioConfig cfg = preset(scenario_from_string(*scenario));
  // Resolution order: preset < file < overrides. Mach is applied first so
  // explicit velocities win over the Mach-derived default.
  auto apply_all = [&](const Settings& settings) {
    for (const auto& [k, v] : settings) {
      if (k == "scenario") continue;
      if (k == "mach") apply_setting(cfg, k, v);
    }
    for (const auto& [k, v] : settings) {
      if (k == "scenario" || k == "mach") continue;
      apply_setting(cfg, k, v);
    }
  };
  apply_all(from_file);
  apply_all(overrides);
  finalize(cfg);
  return cfg;
}

}  // namespace esbgk
