#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "esbgk/core/tensor.hpp"
#include "esbgk/core/velocity_space.hpp"

namespace esbgk {

/// Fluid cells evolve; boundary cells are fluid cells touching a solid cell;
/// solid cells never hold evolving f.
enum class CellKind : std::uint8_t { Fluid, Boundary, Solid };

/// Uniform Cartesian grid in 1 or 2 space dimensions with an optional solid mask.
class SpatialGrid {
 public:
  SpatialGrid(int dim, std::array<int, 2> n, std::array<double, 2> lo, std::array<double, 2> hi);

  int dim() const { return dim_; }
  int n(int axis) const { return n_[axis]; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double dx(int axis) const { return dx_[axis]; }
  double min_dx() const;
  double cell_volume() const;
  std::size_t size() const { return kind_.size(); }

  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_[0]) * j;
  }
  std::array<double, 2> center(std::size_t c) const;

  CellKind kind(std::size_t c) const { return kind_[c]; }
  bool is_solid(std::size_t c) const { return kind_[c] == CellKind::Solid; }
  std::span<const CellKind> kinds() const { return kind_; }
  std::size_t fluid_count() const;

  /// Marks every cell whose center lies strictly inside the disc as solid
  /// and tags the fluid cells sharing a face with it as boundary cells.
  void mask_disc(std::array<double, 2> center, double radius);

 private:
  void tag_boundary_cells();

  int dim_;
  std::array<int, 2> n_{1, 1};
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{1.0, 1.0};
  std::array<double, 2> dx_{1.0, 1.0};
  std::vector<CellKind> kind_;
};

enum class BoundaryKind { Periodic, Inflow, Outflow };

struct SideCondition {
  BoundaryKind kind = BoundaryKind::Outflow;
  MomentSet inflow;  ///< used when kind == Inflow
};

/// Conditions on the outer edges, ordered x-, x+, y-, y+, plus the diffusive
/// wall temperature applied on every fluid/solid interface.
struct BoundarySpec {
  std::array<SideCondition, 4> sides;
  double wall_temperature = 1.05;

  static BoundarySpec all(BoundaryKind kind);
};

enum class Limiter { Minmod, VanLeer };

struct TransportOptions {
  Limiter limiter = Limiter::Minmod;
  double cfl_limit = 0.9;
};

struct TransportResult {
  DistributionField f_star;
  /// Per cell: int v (x) v D dv with D = (f - f_star) / dt the discrete
  /// transport divergence actually applied.
  std::vector<Tensor> sigma_flux;
};

/// dt = cfl * min(dx) / v_max. Never depends on eps.
double cfl_dt(const SpatialGrid& grid, double v_max, double cfl);

/// f_star = f - dt v.grad f by dimension-split upwind MUSCL with the
/// time-centred face value f_face = f_up +- (1 - |lambda|) s / 2.
/// Throws CflError if dt max|v| / dx exceeds options.cfl_limit.
TransportResult transport_step(const DistributionField& f, const SpatialGrid& grid,
                               const VelocityGrid& vgrid, const BoundarySpec& bc, double dt,
                               const TransportOptions& options = {});

/// Fills `ghost` with the wall-emitted distribution for a wall whose unit
/// normal `normal` points into the gas: nodes with v.n < 0 copy `f`, nodes
/// with v.n > 0 get rho_w M_{T_w}. rho_w balances the discrete mass flux
/// exactly; it is returned. Throws NumericalError if the incident flux is
/// not positive.
double apply_diffusive_wall(std::span<const double> f, const Vec& normal, double wall_temperature,
                            const VelocityGrid& vgrid, std::span<double> ghost);

enum class LineBoundary { Periodic, Outflow };

/// Advects one scalar profile with constant speed; same kernel as
/// transport_step. Used for convergence studies.
void advect_line(std::span<double> q, double speed, double dt, double dx, Limiter limiter,
                 LineBoundary boundary);

}  // namespace esbgk
