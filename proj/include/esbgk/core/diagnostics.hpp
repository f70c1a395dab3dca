#pragma once

#include <span>
#include <vector>

#include "esbgk/core/tensor.hpp"
#include "esbgk/core/transport.hpp"
#include "esbgk/core/velocity_space.hpp"

namespace esbgk {

/// Domain integrals of (rho, rho u, E) over non-solid cells.
struct Totals {
  double mass = 0.0;
  Vec momentum{};
  double energy = 0.0;
};

struct RunLogRow {
  std::size_t step = 0;
  double t = 0.0;
  Totals totals;
  double oscillation = 0.0;  ///< || rho - rho_g ||_L1
  double eq_distance = 0.0;  ///< || f - M[f] ||_L1(x, v)
  double rate_inf = 0.0;     ///< || (U^{n+1} - U^n) / dt ||_inf, 0 on the first row
};

/// Time series of scalar diagnostics. Timestamps are strictly increasing.
class RunLog {
 public:
  void append(const RunLogRow& row);
  const std::vector<RunLogRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const RunLogRow& back() const { return rows_.back(); }

 private:
  std::vector<RunLogRow> rows_;
};

Totals conserved_totals(std::span<const MomentSet> m, const SpatialGrid& grid);

/// Discrete L1 distance to the local Maxwellian over phase space. Solid or
/// invalid cells are skipped.
double equilibrium_distance(const DistributionField& f, std::span<const MomentSet> m,
                            const SpatialGrid& grid, const VelocityGrid& vgrid);

/// sum_x |rho - rho_g| dx over non-solid cells.
double oscillation_functional(std::span<const MomentSet> m, double rho_g, const SpatialGrid& grid);

/// Global equilibrium fixed by the conserved totals of the initial data,
/// together with the relative discrete mass defect of its samples.
struct GlobalMaxwellian {
  MomentSet state;
  double mass_defect = 0.0;
};

GlobalMaxwellian global_maxwellian(const Totals& totals, double domain_volume,
                                   const VelocityGrid& vgrid);

/// M = |u| / sqrt(gamma T) with gamma = (d_v + 2) / d_v.
double mach_number(const MomentSet& m);
std::vector<double> mach_field(std::span<const MomentSet> m);

/// max over cells and components of |U^{n+1} - U^n| / dt.
double rate_of_change(std::span<const MomentSet> before, std::span<const MomentSet> after,
                      double dt, const SpatialGrid& grid);

/// First-order stress (rho Theta - p I) / eps, i.e. rho Theta_1.
Tensor non_equilibrium_stress(std::span<const double> f, const MomentSet& m,
                              const VelocityGrid& vgrid, double eps);

/// Least-squares coefficient c in response = -c * gradient.
double fit_gradient_law(std::span<const double> response, std::span<const double> gradient);

/// Second-order central derivative on a periodic 1-D profile.
std::vector<double> periodic_derivative(std::span<const double> values, double dx);

}  // namespace esbgk
