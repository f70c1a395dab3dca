#include "esbgk/core/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "esbgk/core/error.hpp"

namespace esbgk {

namespace {

std::ofstream open(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

void write_header(std::ofstream& out, const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

std::string snapshot_stem(double t) { return fmt::format("snap_t{:g}", t); }

void write_series(const std::string& path, const RunLog& log,
                  const std::vector<std::string>& header) {
  auto out = open(path);
  write_header(out, header);
  out << "step,t,mass,momentum_x,momentum_y,energy,oscillation,eq_distance,rate_inf\n";
  for (const auto& r : log.rows()) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", r.step, format_number(r.t),
                       format_number(r.totals.mass), format_number(r.totals.momentum[0]),
                       format_number(r.totals.momentum[1]), format_number(r.totals.energy),
                       format_number(r.oscillation), format_number(r.eq_distance),
                       format_number(r.rate_inf));
  }
  finish(out, path);
}

void write_profile_csv(const std::string& path, const SpatialGrid& grid,
                       std::span<const MomentSet> m, std::span<const Vec> q,
                       const std::vector<std::string>& header) {
  auto out = open(path);
  write_header(out, header);
  out << "x,rho,u,T,Q1\n";
  for (std::size_t c = 0; c < m.size(); ++c) {
    const bool ok = m[c].valid && !grid.is_solid(c);
    out << fmt::format("{},{},{},{},{}\n", format_number(grid.center(c)[0]),
                       format_number(ok ? m[c].rho : kNan), format_number(ok ? m[c].u[0] : kNan),
                       format_number(ok ? m[c].T : kNan), format_number(ok ? q[c][0] : kNan));
  }
  finish(out, path);
}

void write_reference_csv(const std::string& path, const FluidGrid& grid, const FluidState& state,
                         std::span<const double> q1, const std::vector<std::string>& header) {
  auto out = open(path);
  write_header(out, header);
  out << "x,rho,u,T,Q1\n";
  for (std::size_t i = 0; i < state.size(); ++i) {
    const MomentSet m = state.cell(i);
    out << fmt::format("{},{},{},{},{}\n", format_number(grid.center(static_cast<int>(i))),
                       format_number(m.rho), format_number(m.u[0]), format_number(m.T),
                       format_number(q1.empty() ? 0.0 : q1[i]));
  }
  finish(out, path);
}

void write_vtk(const std::string& path, const SpatialGrid& grid, std::span<const MomentSet> m,
               const std::string& title) {
  auto out = open(path);
  std::string line = title.substr(0, 255);
  for (auto& ch : line) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  const int nx = grid.n(0);
  const int ny = grid.dim() == 2 ? grid.n(1) : 1;
  const double dy = grid.dim() == 2 ? grid.dx(1) : 1.0;
  const double y0 = grid.dim() == 2 ? grid.lo(1) + 0.5 * dy : 0.0;
  out << "# vtk DataFile Version 3.0\n" << line << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  out << fmt::format("DIMENSIONS {} {} 1\n", nx, ny);
  out << fmt::format("ORIGIN {} {} 0\n", format_number(grid.lo(0) + 0.5 * grid.dx(0)),
                     format_number(y0));
  out << fmt::format("SPACING {} {} 1\n", format_number(grid.dx(0)), format_number(dy));
  out << fmt::format("POINT_DATA {}\n", m.size());
  auto field = [&](const char* name, auto value) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t c = 0; c < m.size(); ++c) {
      const bool ok = m[c].valid && !grid.is_solid(c);
      out << format_number(ok ? value(m[c]) : 0.0) << '\n';
    }
  };
  field("rho", [](const MomentSet& s) { return s.rho; });
  field("mach", [](const MomentSet& s) { return mach_number(s); });
  field("T", [](const MomentSet& s) { return s.T; });
  out << "SCALARS solid int 1\nLOOKUP_TABLE default\n";
  for (std::size_t c = 0; c < m.size(); ++c) out << (grid.is_solid(c) ? 1 : 0) << '\n';
  finish(out, path);
}

}  // namespace esbgk
