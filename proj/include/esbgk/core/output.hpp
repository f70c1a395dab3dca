#pragma once

#include <span>
#include <string>
#include <vector>

#include "esbgk/core/diagnostics.hpp"
#include "esbgk/core/fluid_ref.hpp"
#include "esbgk/core/transport.hpp"
#include "esbgk/core/velocity_space.hpp"

namespace esbgk {

/// Numbers are written with 12 significant digits.
std::string format_number(double v);

/// `snap_t<t>` with t in shortest %g form.
std::string snapshot_stem(double t);

/// RunLog as CSV, preceded by "# key=value" header lines.
void write_series(const std::string& path, const RunLog& log,
                  const std::vector<std::string>& header);

/// 1-D profile: x, rho, u, T, Q1. Invalid cells are written as nan.
void write_profile_csv(const std::string& path, const SpatialGrid& grid,
                       std::span<const MomentSet> m, std::span<const Vec> q,
                       const std::vector<std::string>& header);

/// Fluid reference profile with the same columns.
void write_reference_csv(const std::string& path, const FluidGrid& grid, const FluidState& state,
                         std::span<const double> q1, const std::vector<std::string>& header);

/// 2-D fields rho, mach, T and the solid mask as legacy ASCII VTK
/// structured points. Solid cells carry zeros.
void write_vtk(const std::string& path, const SpatialGrid& grid, std::span<const MomentSet> m,
               const std::string& title);

}  // namespace esbgk
