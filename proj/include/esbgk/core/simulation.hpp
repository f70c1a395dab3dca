#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "esbgk/core/config.hpp"
#include "esbgk/core/diagnostics.hpp"
#include "esbgk/core/fluid_ref.hpp"
#include "esbgk/core/transport.hpp"
#include "esbgk/core/velocity_space.hpp"

namespace esbgk {

/// Initial distribution of a scenario on the given grids.
DistributionField initial_distribution(const ScenarioConfig& cfg, const SpatialGrid& grid,
                                       const VelocityGrid& vgrid);

SpatialGrid make_spatial_grid(const ScenarioConfig& cfg);
BoundarySpec make_boundary(const ScenarioConfig& cfg, int dim_v);

/// Time loop for one scenario: transport, moments, tau, Sigma, G, relax.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig cfg);

  const ScenarioConfig& config() const { return cfg_; }
  const SpatialGrid& grid() const { return grid_; }
  const VelocityGrid& vgrid() const { return vgrid_; }
  const BoundarySpec& boundary() const { return bc_; }

  const DistributionField& distribution() const { return f_; }
  const std::vector<MomentSet>& cell_moments() const { return m_; }
  double time() const { return t_; }
  std::size_t step_count() const { return steps_; }
  /// CFL step; depends on the grids only.
  double dt() const { return dt_; }
  const RunLog& log() const { return log_; }
  const GlobalMaxwellian& global_state() const { return global_; }
  double domain_volume() const;
  long spd_floor_count() const { return spd_floors_; }
  long clamp_count() const { return clamps_; }
  /// Cells whose relaxation target could not be moment-matched.
  long unmatched_count() const { return unmatched_; }

  /// Transported distribution and Sigma* of the most recent step.
  const DistributionField& last_transported() const { return f_star_; }
  const std::vector<Tensor>& last_sigma_star() const { return sigma_star_; }

  /// Replaces f; the global state and the diagnostics restart from it.
  void set_distribution(const DistributionField& f);

  void step(double dt);
  void step() { step(dt_); }
  /// Steps until t, shortening the last step to land on it exactly.
  void advance_to(double t);

  /// Q per cell, (1/eps) int |v-u|^2/2 (v-u) f dv.
  std::vector<Vec> heat_flux() const;

 private:
  void step_to(double dt, double t_new);
  void record(double dt, const std::vector<MomentSet>* before);
  void relax_all(const TransportResult& tr, double dt, DistributionField& f_next,
                 std::vector<MomentSet>& m_next);

  ScenarioConfig cfg_;
  SpatialGrid grid_;
  VelocityGrid vgrid_;
  BoundarySpec bc_;
  double dt_ = 0.0;
  double t_ = 0.0;
  std::size_t steps_ = 0;
  DistributionField f_;
  std::vector<MomentSet> m_;
  DistributionField f_star_;
  std::vector<Tensor> sigma_star_;
  RunLog log_;
  GlobalMaxwellian global_;
  long spd_floors_ = 0;
  long clamps_ = 0;
  long unmatched_ = 0;
};

/// Fluid reference advanced alongside a 1-D kinetic run.
class FluidCompanion {
 public:
  FluidCompanion(const ScenarioConfig& cfg, const std::vector<MomentSet>& initial);

  const FluidState& state() const { return state_; }
  const FluidGrid& grid() const { return grid_; }
  const ViscousModel& model() const { return model_; }
  double time() const { return t_; }
  void advance_to(double t);

 private:
  ScenarioConfig cfg_;
  FluidGrid grid_;
  ViscousModel model_;
  FluidState state_;
  double t_ = 0.0;
};

/// Output times of a run: 0, the configured snapshots and t_end.
std::vector<double> output_times(const ScenarioConfig& cfg);

struct RunSummary {
  std::size_t steps = 0;
  double t = 0.0;
  std::vector<std::string> files;
};

/// Runs a scenario to t_end and writes series.csv plus snapshots into
/// cfg.out_dir. `progress` (optional) is called after every step.
RunSummary run(const ScenarioConfig& cfg,
               const std::function<void(const Simulation&)>& progress = {});

}  // namespace esbgk
