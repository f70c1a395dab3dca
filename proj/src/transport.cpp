#include "esbgk/core/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "esbgk/core/error.hpp"

namespace esbgk {

SpatialGrid::SpatialGrid(int dim, std::array<int, 2> n, std::array<double, 2> lo,
                         std::array<double, 2> hi)
    : dim_(dim) {
  if (dim != 1 && dim != 2) throw DomainError("spatial grid dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 2) throw DomainError("spatial grid needs at least 2 cells per axis");
    if (!(hi[a] > lo[a])) throw DomainError("spatial grid needs hi > lo");
    n_[a] = n[a];
    lo_[a] = lo[a];
    hi_[a] = hi[a];
    dx_[a] = (hi[a] - lo[a]) / n[a];
  }
  kind_.assign(static_cast<std::size_t>(n_[0]) * n_[1], CellKind::Fluid);
}

double SpatialGrid::min_dx() const {
  return dim_ == 1 ? dx_[0] : std::min(dx_[0], dx_[1]);
}

double SpatialGrid::cell_volume() const {
  return dim_ == 1 ? dx_[0] : dx_[0] * dx_[1];
}

std::array<double, 2> SpatialGrid::center(std::size_t c) const {
  const auto i = static_cast<int>(c % n_[0]);
  const auto j = static_cast<int>(c / n_[0]);
  return {lo_[0] + (i + 0.5) * dx_[0], dim_ == 2 ? lo_[1] + (j + 0.5) * dx_[1] : 0.0};
}

std::size_t SpatialGrid::fluid_count() const {
  return static_cast<std::size_t>(
      std::count_if(kind_.begin(), kind_.end(), [](CellKind k) { return k != CellKind::Solid; }));
}

void SpatialGrid::mask_disc(std::array<double, 2> c0, double radius) {
  for (std::size_t c = 0; c < kind_.size(); ++c) {
    const auto x = center(c);
    const double dx = x[0] - c0[0];
    const double dy = x[1] - c0[1];
    if (dx * dx + dy * dy < radius * radius) kind_[c] = CellKind::Solid;
  }
  tag_boundary_cells();
}

void SpatialGrid::tag_boundary_cells() {
  for (int j = 0; j < n_[1]; ++j)
    for (int i = 0; i < n_[0]; ++i) {
      const std::size_t c = index(i, j);
      if (kind_[c] == CellKind::Solid) continue;
      const bool touches = (i > 0 && is_solid(index(i - 1, j))) ||
                           (i + 1 < n_[0] && is_solid(index(i + 1, j))) ||
                           (j > 0 && is_solid(index(i, j - 1))) ||
                           (j + 1 < n_[1] && is_solid(index(i, j + 1)));
      kind_[c] = touches ? CellKind::Boundary : CellKind::Fluid;
    }
}

BoundarySpec BoundarySpec::all(BoundaryKind kind) {
  BoundarySpec bc;
  for (auto& s : bc.sides) s.kind = kind;
  return bc;
}

double cfl_dt(const SpatialGrid& grid, double v_max, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  if (!(v_max > 0.0)) throw DomainError("v_max must be > 0");
  return cfl * grid.min_dx() / v_max;
}

double apply_diffusive_wall(std::span<const double> f, const Vec& normal, double wall_temperature,
                            const VelocityGrid& vgrid, std::span<double> ghost) {
  const int dim = vgrid.dim();
  const MomentSet wall = MomentSet::from_primitive(dim, 1.0, Vec{}, wall_temperature);
  double incident = 0.0;
  double emitted = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double vn = dot(vgrid.node(k), normal, dim);
    if (vn < 0.0) {
      incident -= vn * f[k];
    } else if (vn > 0.0) {
      emitted += vn * maxwellian_value(wall, vgrid.node(k));
    }
  }
  if (!(incident > 0.0)) {
    throw NumericalError("diffusive wall: incident mass flux is not positive (vacuum at wall)");
  }
  const double rho_w = incident / emitted;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double vn = dot(vgrid.node(k), normal, dim);
    ghost[k] = vn > 0.0 ? rho_w * maxwellian_value(wall, vgrid.node(k)) : f[k];
  }
  return rho_w;
}

namespace {

inline double limit(double a, double b, Limiter limiter) {
  if (a * b <= 0.0) return 0.0;
  if (limiter == Limiter::Minmod) return a > 0.0 ? std::min(a, b) : std::max(a, b);
  return 2.0 * a * b / (a + b);
}

constexpr double kNoWall = std::numeric_limits<double>::quiet_NaN();

/// One velocity along one line. `ext` holds L cells padded with two ghosts
/// per side; `wall[p]` is the face value on the face between ext[p] and
/// ext[p+1] when that face is a fluid/solid interface, NaN otherwise.
void advect_kernel(std::span<const double> ext, std::span<const bool> solid,
                   std::span<const double> wall, double speed, double dt, double dx,
                   Limiter limiter, std::span<double> slope, std::span<double> flux,
                   std::span<double> out) {
  const std::size_t n = ext.size();
  for (std::size_t p = 1; p + 1 < n; ++p) {
    if (solid[p] || solid[p - 1] || solid[p + 1]) {
      slope[p] = 0.0;
    } else {
      slope[p] = limit(ext[p] - ext[p - 1], ext[p + 1] - ext[p], limiter);
    }
  }
  const double lambda = speed * dt / dx;
  for (std::size_t p = 1; p + 2 < n; ++p) {
    if (!std::isnan(wall[p])) {
      flux[p] = speed * wall[p];
    } else if (solid[p] && solid[p + 1]) {
      flux[p] = 0.0;
    } else if (speed >= 0.0) {
      flux[p] = speed * (ext[p] + 0.5 * (1.0 - lambda) * slope[p]);
    } else {
      flux[p] = speed * (ext[p + 1] - 0.5 * (1.0 + lambda) * slope[p + 1]);
    }
  }
  const double r = dt / dx;
  for (std::size_t p = 2; p + 2 < n; ++p) {
    out[p - 2] = solid[p] ? ext[p] : ext[p] - r * (flux[p] - flux[p - 1]);
  }
}

struct Line {
  std::vector<std::size_t> cells;
};

std::vector<Line> lines_along(const SpatialGrid& grid, int axis) {
  std::vector<Line> lines;
  const int other = axis == 0 ? 1 : 0;
  const int n_lines = grid.dim() == 2 ? grid.n(other) : 1;
  lines.resize(n_lines);
  for (int l = 0; l < n_lines; ++l) {
    auto& cells = lines[l].cells;
    cells.resize(grid.n(axis));
    for (int p = 0; p < grid.n(axis); ++p) {
      cells[p] = axis == 0 ? grid.index(p, l) : grid.index(l, p);
    }
  }
  return lines;
}

/// One dimensional sweep along `axis`: src -> dst.
void sweep(const DistributionField& src, DistributionField& dst, const SpatialGrid& grid,
           const VelocityGrid& vgrid, const BoundarySpec& bc, int axis, double dt,
           Limiter limiter) {
  const std::size_t nv = vgrid.size();
  const double dx = grid.dx(axis);
  const SideCondition& lo_side = bc.sides[2 * axis];
  const SideCondition& hi_side = bc.sides[2 * axis + 1];
  if ((lo_side.kind == BoundaryKind::Periodic) != (hi_side.kind == BoundaryKind::Periodic)) {
    throw DomainError("periodic boundaries must be paired on an axis");
  }
  std::vector<double> inflow_lo;
  std::vector<double> inflow_hi;
  if (lo_side.kind == BoundaryKind::Inflow) inflow_lo = maxwellian(lo_side.inflow, vgrid);
  if (hi_side.kind == BoundaryKind::Inflow) inflow_hi = maxwellian(hi_side.inflow, vgrid);

  const auto lines = lines_along(grid, axis);
  const std::size_t len = static_cast<std::size_t>(grid.n(axis));
  const std::size_t n_ext = len + 4;

  std::vector<double> ext(n_ext);
  std::vector<double> slope(n_ext);
  std::vector<double> flux(n_ext);
  std::vector<double> out(len);
  std::vector<double> wall_face(n_ext);
  std::vector<std::vector<double>> wall_ghost;  // per wall face, nv values
  std::vector<int> wall_slot(n_ext);
  std::unique_ptr<bool[]> solid(new bool[n_ext]);

  for (const auto& line : lines) {
    for (std::size_t p = 0; p < n_ext; ++p) solid[p] = false;
    for (std::size_t p = 0; p < len; ++p) solid[p + 2] = grid.is_solid(line.cells[p]);

    // Diffusive-wall ghost states for every fluid/solid face on the line.
    wall_ghost.clear();
    std::fill(wall_slot.begin(), wall_slot.end(), -1);
    for (std::size_t p = 2; p + 1 < len + 2; ++p) {
      if (solid[p] == solid[p + 1]) continue;
      const bool fluid_on_right = solid[p];
      const std::size_t fluid_cell = line.cells[(fluid_on_right ? p + 1 : p) - 2];
      Vec normal{};
      normal[axis] = fluid_on_right ? 1.0 : -1.0;
      std::vector<double> ghost(nv);
      try {
        apply_diffusive_wall(src.cell(fluid_cell), normal, bc.wall_temperature, vgrid, ghost);
      } catch (const NumericalError& e) {
        throw NumericalError(e.what(), NumericalError::npos, fluid_cell);
      }
      wall_slot[p] = static_cast<int>(wall_ghost.size());
      wall_ghost.push_back(std::move(ghost));
    }

    for (std::size_t k = 0; k < nv; ++k) {
      const double speed = vgrid.node(k)[axis];
      for (std::size_t p = 0; p < len; ++p) ext[p + 2] = src(line.cells[p], k);
      switch (lo_side.kind) {
        case BoundaryKind::Periodic:
          ext[0] = ext[len];
          ext[1] = ext[len + 1];
          ext[len + 2] = ext[2];
          ext[len + 3] = ext[3];
          break;
        case BoundaryKind::Inflow:
          ext[0] = ext[1] = inflow_lo[k];
          break;
        case BoundaryKind::Outflow:
          ext[0] = ext[1] = ext[2];
          break;
      }
      switch (hi_side.kind) {
        case BoundaryKind::Periodic:
          break;
        case BoundaryKind::Inflow:
          ext[len + 2] = ext[len + 3] = inflow_hi[k];
          break;
        case BoundaryKind::Outflow:
          ext[len + 2] = ext[len + 3] = ext[len + 1];
          break;
      }
      for (std::size_t p = 0; p < n_ext; ++p) {
        wall_face[p] = wall_slot[p] >= 0 ? wall_ghost[wall_slot[p]][k] : kNoWall;
      }
      advect_kernel(ext, std::span<const bool>(solid.get(), n_ext), wall_face, speed, dt, dx,
                    limiter, slope, flux, out);
      for (std::size_t p = 0; p < len; ++p) dst(line.cells[p], k) = out[p];
    }
  }
}

}  // namespace

TransportResult transport_step(const DistributionField& f, const SpatialGrid& grid,
                               const VelocityGrid& vgrid, const BoundarySpec& bc, double dt,
                               const TransportOptions& options) {
  if (!(dt > 0.0)) throw DomainError("transport: dt must be > 0");
  if (f.n_cells() != grid.size() || f.n_vel() != vgrid.size()) {
    throw DomainError("transport: field shape does not match grids");
  }
  const double courant = dt * vgrid.max_speed() / grid.min_dx();
  if (courant > options.cfl_limit) {
    throw CflError("transport: CFL number " + std::to_string(courant) + " exceeds limit " +
                   std::to_string(options.cfl_limit));
  }

  TransportResult result;
  result.f_star = f;
  sweep(f, result.f_star, grid, vgrid, bc, 0, dt, options.limiter);
  if (grid.dim() == 2) {
    const DistributionField half = result.f_star;
    sweep(half, result.f_star, grid, vgrid, bc, 1, dt, options.limiter);
  }

  result.sigma_flux.assign(grid.size(), Tensor::zero(vgrid.dim()));
  std::vector<double> divergence(vgrid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (grid.is_solid(c)) continue;
    const auto before = f.cell(c);
    const auto after = result.f_star.cell(c);
    for (std::size_t k = 0; k < divergence.size(); ++k) {
      divergence[k] = (before[k] - after[k]) / dt;
    }
    result.sigma_flux[c] = second_moment(divergence, vgrid);
  }
  return result;
}

void advect_line(std::span<double> q, double speed, double dt, double dx, Limiter limiter,
                 LineBoundary boundary) {
  const std::size_t len = q.size();
  if (len < 2) throw DomainError("advect_line needs at least 2 cells");
  const std::size_t n_ext = len + 4;
  std::vector<double> ext(n_ext);
  std::unique_ptr<bool[]> solid(new bool[n_ext]());
  std::vector<double> wall(n_ext, kNoWall);
  std::vector<double> slope(n_ext);
  std::vector<double> flux(n_ext);
  std::vector<double> out(len);
  for (std::size_t p = 0; p < len; ++p) ext[p + 2] = q[p];
  if (boundary == LineBoundary::Periodic) {
    ext[0] = ext[len];
    ext[1] = ext[len + 1];
    ext[len + 2] = ext[2];
    ext[len + 3] = ext[3];
  } else {
    ext[0] = ext[1] = ext[2];
    ext[len + 2] = ext[len + 3] = ext[len + 1];
  }
  advect_kernel(ext, std::span<const bool>(solid.get(), n_ext), wall, speed, dt, dx, limiter,
                slope, flux, out);
  std::copy(out.begin(), out.end(), q.begin());
}

}  // namespace esbgk
