#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "esbgk/core/fluid_ref.hpp"
#include "esbgk/core/relaxation.hpp"
#include "esbgk/core/transport.hpp"
#include "esbgk/core/velocity_space.hpp"

namespace esbgk {

enum class Scenario { SmoothPeriodic, Riemann, Cylinder, Custom };
enum class Comparison { None, Euler, Ns };
enum class InvalidStatePolicy { Abort, Clamp };

/// Primitive description of a Maxwellian state.
struct PrimitiveState {
  double rho = 1.0;
  Vec u{};
  double T = 1.0;
};

/// Complete run description. Presets fill every field; `explicit_keys`
/// records what the user set on top of the preset.
struct ScenarioConfig {
  Scenario scenario = Scenario::Custom;
  int dim_x = 1;
  int dim_v = 2;
  std::array<int, 2> n_x{100, 1};
  std::array<double, 2> lo{-1.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  int n_v = 32;
  double v_max = 0.0;  ///< 0 selects the |u| + 8 sqrt(T) rule
  double eps = 1.0;
  double nu = 0.0;
  TauModel tau;
  double cfl = 0.5;
  double cfl_limit = 0.9;
  double t_end = 0.0;
  std::vector<double> snapshots;
  std::string out_dir = "out";
  Comparison compare = Comparison::None;
  KappaModel kappa_model = KappaModel::ChapmanEnskog;
  Limiter limiter = Limiter::Minmod;
  CollisionModel model = CollisionModel::EsBgk;
  InvalidStatePolicy invalid_state = InvalidStatePolicy::Abort;
  long spd_floor_limit = 100;
  bool conservative_equilibrium = true;

  // smooth_periodic
  double amplitude = 0.5;
  double t0 = 0.125;
  Vec u0{0.5, 0.5, 0.0};
  // riemann / custom
  PrimitiveState left;
  PrimitiveState right;
  BoundaryKind boundary = BoundaryKind::Outflow;
  // riemann / cylinder
  double mach = 0.0;
  // cylinder
  double wall_temperature = 1.05;
  double cylinder_radius = 1.0;

  std::set<std::string> explicit_keys;

  /// Effective configuration as key=value lines, parseable by parse_config.
  std::vector<std::string> echo() const;
  /// States the v_max rule is evaluated on.
  std::vector<MomentSet> reference_states() const;
  /// v_max, resolving the automatic rule.
  double resolved_v_max() const;
};

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// Preset for a named scenario (custom leaves required keys unset).
ScenarioConfig preset(Scenario s);

/// Applies one key=value setting. Throws ConfigError for unknown keys and
/// unparsable values.
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// Fills derived defaults (eps-dependent snapshot times, t_end) and validates.
/// Throws ConfigError naming the offending key.
void finalize(ScenarioConfig& cfg);

using Settings = std::vector<std::pair<std::string, std::string>>;

/// Reads a flat UTF-8 key=value file; '#' starts a comment.
Settings read_config_file(const std::string& path);

/// Preset (from the `scenario` key of overrides, else of the file) + file
/// settings + overrides, then finalize.
ScenarioConfig parse_config(const std::optional<std::string>& file, const Settings& overrides);

}  // namespace esbgk
