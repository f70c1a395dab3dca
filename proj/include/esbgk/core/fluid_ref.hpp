#pragma once

#include <vector>

#include "esbgk/core/relaxation.hpp"
#include "esbgk/core/tensor.hpp"
#include "esbgk/core/velocity_space.hpp"

namespace esbgk {

/// Conserved (rho, rho u, E) on a 1-D grid, u carrying d_v components.
/// gamma = (d_v + 2) / d_v and p = (gamma - 1)(E - rho |u|^2 / 2).
struct FluidState {
  int dim = 2;
  std::vector<double> rho;
  std::vector<Vec> momentum;
  std::vector<double> energy;

  std::size_t size() const { return rho.size(); }
  double gamma() const { return (dim + 2.0) / dim; }
  MomentSet cell(std::size_t i) const;

  static FluidState from_moments(const std::vector<MomentSet>& m);
};

enum class FluidBoundary { Periodic, Outflow };

struct FluidGrid {
  int n = 0;
  double lo = 0.0;
  double hi = 1.0;
  FluidBoundary boundary = FluidBoundary::Outflow;

  double dx() const { return (hi - lo) / n; }
  double center(int i) const { return lo + (i + 0.5) * dx(); }
};

/// Heat conductivity law for the reference: the Chapman-Enskog value
/// (d_v + 2) p / (2 tau), or kappa = rho T.
enum class KappaModel { ChapmanEnskog, RhoT };

struct ViscousModel {
  double nu = 0.0;
  TauModel tau;
  KappaModel kappa_model = KappaModel::ChapmanEnskog;

  TransportCoeffs coeffs(const MomentSet& m) const;
};

/// One SSP-RK2 step of the Euler equations: minmod MUSCL on primitive
/// variables, HLL flux. Throws NumericalError on loss of positivity.
FluidState euler_step(const FluidState& state, const FluidGrid& grid, double dt);

/// As euler_step plus the eps-scaled viscous stress and heat flux, discretized
/// with second-order central differences. eps = 0 reproduces euler_step.
FluidState ns_step(const FluidState& state, const FluidGrid& grid, double dt,
                   const ViscousModel& model, double eps);

/// Largest stable step: min of cfl dx / max(|u| + c) and, when eps > 0, the
/// explicit parabolic bound cfl dx^2 / (2 max D).
double fluid_dt(const FluidState& state, const FluidGrid& grid, double cfl,
                const ViscousModel* model = nullptr, double eps = 0.0);

/// Face heat flux -kappa dT/dx at cell centres (central differences), used to
/// compare against the kinetic Q1.
std::vector<double> fluid_heat_flux(const FluidState& state, const FluidGrid& grid,
                                    const ViscousModel& model);

}  // namespace esbgk
