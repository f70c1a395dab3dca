#include "esbgk/core/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "esbgk/core/error.hpp"
#include "esbgk/core/output.hpp"
#include "esbgk/core/relaxation.hpp"

namespace esbgk {

namespace {

MomentSet state_of(const PrimitiveState& s, int dim) {
  return MomentSet::from_primitive(dim, s.rho, s.u, s.T);
}

MomentSet cylinder_inflow(const ScenarioConfig& cfg) {
  const double T = 1.0;
  return MomentSet::from_primitive(cfg.dim_v, 1.0, Vec{cfg.mach * std::sqrt(2.0 * T), 0.0, 0.0},
                                   T);
}

}  // namespace

SpatialGrid make_spatial_grid(const ScenarioConfig& cfg) {
  SpatialGrid grid(cfg.dim_x, cfg.n_x, cfg.lo, cfg.hi);
  if (cfg.scenario == Scenario::Cylinder) grid.mask_disc({0.0, 0.0}, cfg.cylinder_radius);
  return grid;
}

BoundarySpec make_boundary(const ScenarioConfig& cfg, int dim_v) {
  BoundarySpec bc;
  bc.wall_temperature = cfg.wall_temperature;
  switch (cfg.scenario) {
    case Scenario::SmoothPeriodic:
      bc = BoundarySpec::all(BoundaryKind::Periodic);
      break;
    case Scenario::Riemann:
    case Scenario::Custom: {
      bc = BoundarySpec::all(cfg.boundary);
      bc.sides[0].inflow = state_of(cfg.left, dim_v);
      bc.sides[1].inflow = state_of(cfg.right, dim_v);
      break;
    }
    case Scenario::Cylinder: {
      const MomentSet inflow = cylinder_inflow(cfg);
      for (auto& s : bc.sides) {
        s.kind = BoundaryKind::Inflow;
        s.inflow = inflow;
      }
      bc.sides[1].kind = BoundaryKind::Outflow;
      break;
    }
  }
  bc.wall_temperature = cfg.wall_temperature;
  return bc;
}

DistributionField initial_distribution(const ScenarioConfig& cfg, const SpatialGrid& grid,
                                       const VelocityGrid& vgrid) {
  const int d = vgrid.dim();
  DistributionField f(grid.size(), vgrid.size());
  switch (cfg.scenario) {
    case Scenario::SmoothPeriodic: {
      Vec minus{};
      for (int i = 0; i < d; ++i) minus[i] = -cfg.u0[i];
      const auto plus_m = maxwellian(MomentSet::from_primitive(d, 1.0, cfg.u0, cfg.t0), vgrid);
      const auto minus_m = maxwellian(MomentSet::from_primitive(d, 1.0, minus, cfg.t0), vgrid);
      for (std::size_t c = 0; c < grid.size(); ++c) {
        const double x = grid.center(c)[0];
        const double a = 1.0 + cfg.amplitude * std::sin(std::numbers::pi * x);
        auto cell = f.cell(c);
        for (std::size_t k = 0; k < cell.size(); ++k) cell[k] = a * (plus_m[k] + minus_m[k]);
      }
      break;
    }
    case Scenario::Riemann:
    case Scenario::Custom: {
      const double x_mid = 0.5 * (cfg.lo[0] + cfg.hi[0]);
      const auto left = maxwellian(state_of(cfg.left, d), vgrid);
      const auto right = maxwellian(state_of(cfg.right, d), vgrid);
      for (std::size_t c = 0; c < grid.size(); ++c) {
        const auto& src = grid.center(c)[0] < x_mid ? left : right;
        std::copy(src.begin(), src.end(), f.cell(c).begin());
      }
      break;
    }
    case Scenario::Cylinder: {
      const auto inflow = maxwellian(cylinder_inflow(cfg), vgrid);
      for (std::size_t c = 0; c < grid.size(); ++c) {
        if (grid.is_solid(c)) continue;
        std::copy(inflow.begin(), inflow.end(), f.cell(c).begin());
      }
      break;
    }
  }
  return f;
}

Simulation::Simulation(ScenarioConfig cfg)
    : cfg_(std::move(cfg)),
      grid_(make_spatial_grid(cfg_)),
      vgrid_(cfg_.dim_v, cfg_.resolved_v_max(), cfg_.n_v),
      bc_(make_boundary(cfg_, cfg_.dim_v)) {
  dt_ = cfl_dt(grid_, vgrid_.max_speed(), cfg_.cfl);
  set_distribution(initial_distribution(cfg_, grid_, vgrid_));
}

double Simulation::domain_volume() const {
  return static_cast<double>(grid_.fluid_count()) * grid_.cell_volume();
}

void Simulation::set_distribution(const DistributionField& f) {
  if (f.n_cells() != grid_.size() || f.n_vel() != vgrid_.size()) {
    throw DomainError("distribution shape does not match the grids");
  }
  f_ = f;
  m_ = moments(f_, vgrid_);
  for (std::size_t c = 0; c < grid_.size(); ++c) {
    if (!grid_.is_solid(c) && !m_[c].valid) {
      throw NumericalError("initial state has non-positive density or temperature", steps_, c);
    }
  }
  global_ = global_maxwellian(conserved_totals(m_, grid_), domain_volume(), vgrid_);
  log_ = RunLog{};
  record(0.0, nullptr);
}

void Simulation::record(double dt, const std::vector<MomentSet>* before) {
  RunLogRow row;
  row.step = steps_;
  row.t = t_;
  row.totals = conserved_totals(m_, grid_);
  row.oscillation = oscillation_functional(m_, global_.state.rho, grid_);
  row.eq_distance = equilibrium_distance(f_, m_, grid_, vgrid_);
  row.rate_inf = before ? rate_of_change(*before, m_, dt, grid_) : 0.0;
  log_.append(row);
}

void Simulation::relax_all(const TransportResult& tr, double dt, DistributionField& f_next,
                           std::vector<MomentSet>& m_next) {
  RelaxationParams params;
  params.eps = cfg_.eps;
  params.nu = cfg_.nu;
  params.tau = cfg_.tau;
  params.dt = dt;
  params.conservative = cfg_.conservative_equilibrium;
  params.validate();

  sigma_star_.assign(grid_.size(), Tensor::zero(vgrid_.dim()));
  m_next.assign(grid_.size(), MomentSet{});
  for (std::size_t c = 0; c < grid_.size(); ++c) {
    if (grid_.is_solid(c)) continue;
    sigma_star_[c] = second_moment(f_.cell(c), vgrid_) - dt * tr.sigma_flux[c];
    try {
      const auto r = relax_cell(tr.f_star.cell(c), sigma_star_[c], params, vgrid_, cfg_.model,
                                f_next.cell(c));
      m_next[c] = r.u_next;
      if (r.outcome.unmatched) ++unmatched_;
      if (r.outcome.spd_floored) {
        ++spd_floors_;
        if (spd_floors_ > cfg_.spd_floor_limit) {
          throw SpdError("SPD guard floored the corrected tensor more often than spd_floor_limit",
                         steps_, c);
        }
      }
    } catch (const SpdError&) {
      throw;
    } catch (const Error& e) {
      if (cfg_.invalid_state != InvalidStatePolicy::Clamp) {
        throw NumericalError(e.what(), steps_, c);
      }
      // Keep the positive part of f*; fall back to a cold floor state.
      auto out = f_next.cell(c);
      const auto in = tr.f_star.cell(c);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(in[k], 0.0);
      m_next[c] = moments(out, vgrid_);
      if (!m_next[c].valid) {
        const MomentSet floor =
            MomentSet::from_primitive(vgrid_.dim(), 1e3 * kRhoFloor, Vec{}, 1.0);
        maxwellian(floor, vgrid_, out);
        m_next[c] = moments(out, vgrid_);
      }
      ++clamps_;
    }
  }
}

void Simulation::step(double dt) { step_to(dt, t_ + dt); }

void Simulation::step_to(double dt, double t_new) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  TransportOptions options;
  options.limiter = cfg_.limiter;
  options.cfl_limit = cfg_.cfl_limit;
  TransportResult tr = [&] {
    try {
      return transport_step(f_, grid_, vgrid_, bc_, dt, options);
    } catch (const NumericalError& e) {
      throw NumericalError(e.what(), steps_, e.cell());
    }
  }();

  DistributionField f_next(grid_.size(), vgrid_.size());
  std::vector<MomentSet> m_next;
  relax_all(tr, dt, f_next, m_next);

  std::vector<MomentSet> before = std::move(m_);
  f_star_ = std::move(tr.f_star);
  f_ = std::move(f_next);
  m_ = std::move(m_next);
  t_ = t_new;
  ++steps_;
  for (std::size_t c = 0; c < m_.size(); ++c) {
    if (grid_.is_solid(c)) continue;
    const MomentSet& m = m_[c];
    if (!m.valid || !std::isfinite(m.energy)) {
      throw NumericalError("non-finite or non-positive state after relaxation", steps_, c);
    }
  }
  record(dt, &before);
}

void Simulation::advance_to(double t) {
  while (t - t_ > 1e-12 * std::max(1.0, std::fabs(t))) {
    const double remaining = t - t_;
    if (remaining <= dt_ * (1.0 + 1e-9)) {
      step_to(remaining, t);
    } else {
      step(dt_);
    }
  }
}

std::vector<Vec> Simulation::heat_flux() const {
  std::vector<Vec> q(grid_.size(), Vec{});
  for (std::size_t c = 0; c < grid_.size(); ++c) {
    if (grid_.is_solid(c) || !m_[c].valid) continue;
    q[c] = esbgk::heat_flux(f_.cell(c), m_[c], vgrid_, cfg_.eps);
  }
  return q;
}

FluidCompanion::FluidCompanion(const ScenarioConfig& cfg, const std::vector<MomentSet>& initial)
    : cfg_(cfg) {
  grid_.n = cfg.n_x[0];
  grid_.lo = cfg.lo[0];
  grid_.hi = cfg.hi[0];
  const bool periodic = cfg.scenario == Scenario::SmoothPeriodic ||
                        (cfg.scenario == Scenario::Custom && cfg.boundary == BoundaryKind::Periodic);
  grid_.boundary = periodic ? FluidBoundary::Periodic : FluidBoundary::Outflow;
  model_.nu = cfg.nu;
  model_.tau = cfg.tau;
  model_.kappa_model = cfg.kappa_model;
  state_ = FluidState::from_moments(initial);
}

void FluidCompanion::advance_to(double t) {
  const bool viscous = cfg_.compare == Comparison::Ns;
  while (t - t_ > 1e-12 * std::max(1.0, std::fabs(t))) {
    double h = viscous ? fluid_dt(state_, grid_, 0.4, &model_, cfg_.eps)
                       : fluid_dt(state_, grid_, 0.4);
    h = std::min(h, t - t_);
    state_ = viscous ? ns_step(state_, grid_, h, model_, cfg_.eps) : euler_step(state_, grid_, h);
    t_ += h;
  }
  t_ = t;
}

std::vector<double> output_times(const ScenarioConfig& cfg) {
  std::vector<double> times{0.0};
  for (double s : cfg.snapshots) times.push_back(s);
  times.push_back(cfg.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

RunSummary run(const ScenarioConfig& cfg, const std::function<void(const Simulation&)>& progress) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + cfg.out_dir + "': " + ec.message());

  Simulation sim(cfg);
  const auto header = sim.config().echo();
  std::optional<FluidCompanion> fluid;
  if (cfg.compare != Comparison::None) fluid.emplace(cfg, sim.cell_moments());

  RunSummary summary;
  const fs::path dir(cfg.out_dir);
  auto series = [&] {
    auto h = header;
    h.push_back("global_mass_defect=" + format_number(sim.global_state().mass_defect));
    const std::string path = (dir / "series.csv").string();
    write_series(path, sim.log(), h);
    return path;
  };

  try {
    for (double target : output_times(cfg)) {
      while (target - sim.time() > 1e-12 * std::max(1.0, std::fabs(target))) {
        sim.advance_to(std::min(target, sim.time() + sim.dt()));
        if (progress) progress(sim);
      }
      auto h = header;
      h.push_back("t=" + format_number(sim.time()));
      const std::string stem = snapshot_stem(target);
      if (cfg.dim_x == 1) {
        const auto q = sim.heat_flux();
        const std::string path = (dir / (stem + ".csv")).string();
        write_profile_csv(path, sim.grid(), sim.cell_moments(), q, h);
        summary.files.push_back(path);
        if (fluid) {
          fluid->advance_to(target);
          std::vector<double> q1;
          if (cfg.compare == Comparison::Ns) {
            q1 = fluid_heat_flux(fluid->state(), fluid->grid(), fluid->model());
          }
          const std::string ref = (dir / ("ref_t" + stem.substr(6) + ".csv")).string();
          write_reference_csv(ref, fluid->grid(), fluid->state(), q1, h);
          summary.files.push_back(ref);
        }
      } else {
        std::string title;
        for (const auto& line : h) title += (title.empty() ? "" : " ") + line;
        const std::string path = (dir / (stem + ".vtk")).string();
        write_vtk(path, sim.grid(), sim.cell_moments(), title);
        summary.files.push_back(path);
      }
    }
  } catch (const NumericalError&) {
    series();
    throw;
  }
  summary.files.insert(summary.files.begin(), series());
  summary.steps = sim.step_count();
  summary.t = sim.time();
  return summary;
}

}  // namespace esbgk
