#include "esbgk/core/fluid_ref.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "esbgk/core/error.hpp"

namespace esbgk {

namespace {

constexpr int kMaxVars = kMaxDim + 2;
using Cons = std::array<double, kMaxVars>;

struct Primitive {
  double rho = 0.0;
  Vec u{};
  double p = 0.0;
};

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

Primitive to_primitive(const FluidState& s, std::size_t i) {
  Primitive w;
  w.rho = s.rho[i];
  double ke = 0.0;
  for (int d = 0; d < s.dim; ++d) {
    w.u[d] = s.momentum[i][d] / w.rho;
    ke += w.u[d] * s.momentum[i][d];
  }
  w.p = (s.gamma() - 1.0) * (s.energy[i] - 0.5 * ke);
  return w;
}

Cons to_conserved(const Primitive& w, int dim, double gamma) {
  Cons u{};
  u[0] = w.rho;
  double u2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    u[1 + d] = w.rho * w.u[d];
    u2 += w.u[d] * w.u[d];
  }
  u[dim + 1] = w.p / (gamma - 1.0) + 0.5 * w.rho * u2;
  return u;
}

Cons physical_flux(const Primitive& w, const Cons& u, int dim) {
  Cons f{};
  const double ux = w.u[0];
  f[0] = w.rho * ux;
  for (int d = 0; d < dim; ++d) f[1 + d] = u[1 + d] * ux;
  f[1] += w.p;
  f[dim + 1] = (u[dim + 1] + w.p) * ux;
  return f;
}

Cons hll(const Primitive& wl, const Primitive& wr, int dim, double gamma) {
  const Cons ul = to_conserved(wl, dim, gamma);
  const Cons ur = to_conserved(wr, dim, gamma);
  const double cl = std::sqrt(gamma * wl.p / wl.rho);
  const double cr = std::sqrt(gamma * wr.p / wr.rho);
  const double sl = std::min(wl.u[0] - cl, wr.u[0] - cr);
  const double sr = std::max(wl.u[0] + cl, wr.u[0] + cr);
  const Cons fl = physical_flux(wl, ul, dim);
  const Cons fr = physical_flux(wr, ur, dim);
  if (sl >= 0.0) return fl;
  if (sr <= 0.0) return fr;
  Cons f{};
  for (int v = 0; v < dim + 2; ++v) {
    f[v] = (sr * fl[v] - sl * fr[v] + sl * sr * (ur[v] - ul[v])) / (sr - sl);
  }
  return f;
}

/// Index into the padded array (two ghosts per side).
std::size_t wrap(long p, std::size_t n, FluidBoundary bc) {
  const long len = static_cast<long>(n);
  if (bc == FluidBoundary::Periodic) return static_cast<std::size_t>(((p % len) + len) % len);
  return static_cast<std::size_t>(std::clamp(p, 0L, len - 1));
}

/// dU/dt at every cell.
std::vector<Cons> rhs(const FluidState& s, const FluidGrid& grid, const ViscousModel* model,
                      double eps) {
  const std::size_t n = s.size();
  const int dim = s.dim;
  const double gamma = s.gamma();
  const double dx = grid.dx();

  std::vector<Primitive> w(n + 4);
  for (long p = -2; p < static_cast<long>(n) + 2; ++p) {
    w[p + 2] = to_primitive(s, wrap(p, n, grid.boundary));
  }
  // Limited slopes of primitive variables for p = 1 .. n + 2 (padded index).
  std::vector<Primitive> slope(n + 4);
  for (std::size_t p = 1; p + 1 < n + 4; ++p) {
    slope[p].rho = minmod(w[p].rho - w[p - 1].rho, w[p + 1].rho - w[p].rho);
    slope[p].p = minmod(w[p].p - w[p - 1].p, w[p + 1].p - w[p].p);
    for (int d = 0; d < dim; ++d) {
      slope[p].u[d] = minmod(w[p].u[d] - w[p - 1].u[d], w[p + 1].u[d] - w[p].u[d]);
    }
  }

  // Face f sits between padded cells f+1 and f+2, i.e. cells f-1 and f.
  std::vector<Cons> flux(n + 1);
  for (std::size_t f = 0; f <= n; ++f) {
    const std::size_t l = f + 1;
    const std::size_t r = f + 2;
    Primitive wl = w[l];
    Primitive wr = w[r];
    wl.rho += 0.5 * slope[l].rho;
    wl.p += 0.5 * slope[l].p;
    wr.rho -= 0.5 * slope[r].rho;
    wr.p -= 0.5 * slope[r].p;
    for (int d = 0; d < dim; ++d) {
      wl.u[d] += 0.5 * slope[l].u[d];
      wr.u[d] -= 0.5 * slope[r].u[d];
    }
    if (!(wl.rho > 0.0 && wl.p > 0.0 && wr.rho > 0.0 && wr.p > 0.0)) {
      wl = w[l];
      wr = w[r];
    }
    flux[f] = hll(wl, wr, dim, gamma);

    if (model != nullptr && eps > 0.0) {
      const Primitive& a = w[l];
      const Primitive& b = w[r];
      const MomentSet ma = MomentSet::from_primitive(dim, a.rho, a.u, a.p / a.rho);
      const MomentSet mb = MomentSet::from_primitive(dim, b.rho, b.u, b.p / b.rho);
      const TransportCoeffs ca = model->coeffs(ma);
      const TransportCoeffs cb = model->coeffs(mb);
      const double mu = 0.5 * (ca.mu + cb.mu);
      const double kappa = 0.5 * (ca.kappa + cb.kappa);
      Vec du{};
      Vec uf{};
      for (int d = 0; d < dim; ++d) {
        du[d] = (b.u[d] - a.u[d]) / dx;
        uf[d] = 0.5 * (a.u[d] + b.u[d]);
      }
      const double dT = (mb.T - ma.T) / dx;
      // sigma_x. in 1-D: sigma_xx = (2 - 2/d) du_x/dx, sigma_xj = du_j/dx.
      Vec sigma{};
      sigma[0] = (2.0 - 2.0 / dim) * du[0];
      for (int d = 1; d < dim; ++d) sigma[d] = du[d];
      for (int d = 0; d < dim; ++d) flux[f][1 + d] -= eps * mu * sigma[d];
      flux[f][dim + 1] -= eps * (mu * dot(sigma, uf, dim) + kappa * dT);
    }
  }

  std::vector<Cons> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int v = 0; v < dim + 2; ++v) out[i][v] = -(flux[i + 1][v] - flux[i][v]) / dx;
  }
  return out;
}

FluidState axpy(const FluidState& s, const std::vector<Cons>& k, double dt) {
  FluidState o = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    o.rho[i] += dt * k[i][0];
    for (int d = 0; d < s.dim; ++d) o.momentum[i][d] += dt * k[i][1 + d];
    o.energy[i] += dt * k[i][s.dim + 1];
  }
  return o;
}

void check_positive(const FluidState& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Primitive w = to_primitive(s, i);
    if (!(w.rho > 0.0 && w.p > 0.0) || !std::isfinite(w.p)) {
      throw NumericalError("fluid reference: loss of positivity at cell " + std::to_string(i),
                           NumericalError::npos, i);
    }
  }
}

FluidState rk2(const FluidState& s, const FluidGrid& grid, double dt, const ViscousModel* model,
               double eps) {
  if (static_cast<int>(s.size()) != grid.n) throw DomainError("fluid state/grid size mismatch");
  const FluidState s1 = axpy(s, rhs(s, grid, model, eps), dt);
  check_positive(s1);
  FluidState s2 = axpy(s1, rhs(s1, grid, model, eps), dt);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s2.rho[i] = 0.5 * (s.rho[i] + s2.rho[i]);
    for (int d = 0; d < s.dim; ++d) s2.momentum[i][d] = 0.5 * (s.momentum[i][d] + s2.momentum[i][d]);
    s2.energy[i] = 0.5 * (s.energy[i] + s2.energy[i]);
  }
  check_positive(s2);
  return s2;
}

}  // namespace

MomentSet FluidState::cell(std::size_t i) const {
  return MomentSet::from_conserved(dim, rho[i], momentum[i], energy[i]);
}

FluidState FluidState::from_moments(const std::vector<MomentSet>& m) {
  FluidState s;
  if (!m.empty()) s.dim = m.front().dim;
  for (const auto& c : m) {
    s.rho.push_back(c.rho);
    s.momentum.push_back(c.momentum);
    s.energy.push_back(c.energy);
  }
  return s;
}

TransportCoeffs ViscousModel::coeffs(const MomentSet& m) const {
  TransportCoeffs c = chapman_enskog_coefficients(m, nu, tau);
  if (kappa_model == KappaModel::RhoT) c.kappa = m.rho * m.T;
  return c;
}

FluidState euler_step(const FluidState& state, const FluidGrid& grid, double dt) {
  return rk2(state, grid, dt, nullptr, 0.0);
}

FluidState ns_step(const FluidState& state, const FluidGrid& grid, double dt,
                   const ViscousModel& model, double eps) {
  return rk2(state, grid, dt, &model, eps);
}

double fluid_dt(const FluidState& state, const FluidGrid& grid, double cfl,
                const ViscousModel* model, double eps) {
  const double dx = grid.dx();
  double speed = 0.0;
  double diffusivity = 0.0;
  const int dim = state.dim;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const MomentSet m = state.cell(i);
    speed = std::max(speed, std::fabs(m.u[0]) + std::sqrt(state.gamma() * m.T));
    if (model != nullptr && eps > 0.0) {
      const TransportCoeffs c = model->coeffs(m);
      const double momentum_d = eps * c.mu * std::max(1.0, 2.0 - 2.0 / dim) / m.rho;
      const double thermal_d = eps * c.kappa / (0.5 * dim * m.rho);
      diffusivity = std::max({diffusivity, momentum_d, thermal_d});
    }
  }
  double dt = cfl * dx / speed;
  if (diffusivity > 0.0) dt = std::min(dt, cfl * dx * dx / (2.0 * diffusivity));
  return dt;
}

std::vector<double> fluid_heat_flux(const FluidState& state, const FluidGrid& grid,
                                    const ViscousModel& model) {
  const std::size_t n = state.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto lo = wrap(static_cast<long>(i) - 1, n, grid.boundary);
    const auto hi = wrap(static_cast<long>(i) + 1, n, grid.boundary);
    const double width = grid.boundary == FluidBoundary::Periodic || (i > 0 && i + 1 < n)
                             ? 2.0 * grid.dx()
                             : grid.dx();
    const MomentSet m = state.cell(i);
    q[i] = -model.coeffs(m).kappa * (state.cell(hi).T - state.cell(lo).T) / width;
  }
  return q;
}

}  // namespace esbgk
