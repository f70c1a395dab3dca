#include "esbgk/core/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "esbgk/core/error.hpp"
#include "esbgk/core/summation.hpp"

namespace esbgk {

void RunLog::append(const RunLogRow& row) {
  if (!rows_.empty() && !(row.t > rows_.back().t)) {
    throw DomainError("run log timestamps must be strictly increasing");
  }
  rows_.push_back(row);
}

Totals conserved_totals(std::span<const MomentSet> m, const SpatialGrid& grid) {
  const int dim = m.empty() ? 0 : m.front().dim;
  std::vector<double> buf;
  buf.reserve(m.size());
  auto integrate = [&](auto&& field) {
    buf.clear();
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (!grid.is_solid(c)) buf.push_back(field(m[c]));
    }
    return pairwise_sum(buf) * grid.cell_volume();
  };
  Totals t;
  t.mass = integrate([](const MomentSet& s) { return s.rho; });
  t.energy = integrate([](const MomentSet& s) { return s.energy; });
  for (int d = 0; d < dim; ++d) {
    t.momentum[d] = integrate([d](const MomentSet& s) { return s.momentum[d]; });
  }
  return t;
}

double equilibrium_distance(const DistributionField& f, std::span<const MomentSet> m,
                            const SpatialGrid& grid, const VelocityGrid& vgrid) {
  std::vector<double> per_cell;
  per_cell.reserve(f.n_cells());
  std::vector<double> eq(vgrid.size());
  for (std::size_t c = 0; c < f.n_cells(); ++c) {
    if (grid.is_solid(c) || !m[c].valid) continue;
    maxwellian(m[c], vgrid, eq);
    const auto fc = f.cell(c);
    double s = 0.0;
    for (std::size_t k = 0; k < eq.size(); ++k) s += std::fabs(fc[k] - eq[k]);
    per_cell.push_back(s);
  }
  return pairwise_sum(per_cell) * vgrid.weight() * grid.cell_volume();
}

double oscillation_functional(std::span<const MomentSet> m, double rho_g, const SpatialGrid& grid) {
  std::vector<double> buf;
  buf.reserve(m.size());
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (!grid.is_solid(c)) buf.push_back(std::fabs(m[c].rho - rho_g));
  }
  return pairwise_sum(buf) * grid.cell_volume();
}

GlobalMaxwellian global_maxwellian(const Totals& totals, double domain_volume,
                                   const VelocityGrid& vgrid) {
  const int dim = vgrid.dim();
  Vec mom{};
  for (int d = 0; d < dim; ++d) mom[d] = totals.momentum[d] / domain_volume;
  GlobalMaxwellian g;
  g.state = MomentSet::from_conserved(dim, totals.mass / domain_volume, mom,
                                      totals.energy / domain_volume);
  if (!g.state.valid) throw DomainError("global Maxwellian: initial data has no valid state");
  const auto samples = maxwellian(g.state, vgrid);
  const double mass = pairwise_sum(samples) * vgrid.weight();
  g.mass_defect = std::fabs(mass - g.state.rho) / g.state.rho;
  return g;
}

double mach_number(const MomentSet& m) {
  if (!(m.T > 0.0)) throw DomainError("mach number requires T > 0");
  const double gamma = (m.dim + 2.0) / m.dim;
  return std::sqrt(dot(m.u, m.u, m.dim) / (gamma * m.T));
}

std::vector<double> mach_field(std::span<const MomentSet> m) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (m[c].valid) out[c] = mach_number(m[c]);
  }
  return out;
}

double rate_of_change(std::span<const MomentSet> before, std::span<const MomentSet> after,
                      double dt, const SpatialGrid& grid) {
  double r = 0.0;
  for (std::size_t c = 0; c < before.size(); ++c) {
    if (grid.is_solid(c)) continue;
    const auto& a = before[c];
    const auto& b = after[c];
    r = std::max(r, std::fabs(b.rho - a.rho));
    r = std::max(r, std::fabs(b.energy - a.energy));
    for (int d = 0; d < a.dim; ++d) r = std::max(r, std::fabs(b.momentum[d] - a.momentum[d]));
  }
  return r / dt;
}

Tensor non_equilibrium_stress(std::span<const double> f, const MomentSet& m,
                              const VelocityGrid& vgrid, double eps) {
  Tensor s = m.rho * centered_tensor(second_moment(f, vgrid), m);
  s -= Tensor::identity(vgrid.dim(), m.p);
  s *= 1.0 / eps;
  return s;
}

double fit_gradient_law(std::span<const double> response, std::span<const double> gradient) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < response.size(); ++i) {
    num += response[i] * gradient[i];
    den += gradient[i] * gradient[i];
  }
  if (!(den > 0.0)) throw DomainError("fit_gradient_law: gradient vanishes");
  return -num / den;
}

std::vector<double> periodic_derivative(std::span<const double> values, double dx) {
  const std::size_t n = values.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = (values[(i + 1) % n] - values[(i + n - 1) % n]) / (2.0 * dx);
  }
  return d;
}

}  // namespace esbgk
