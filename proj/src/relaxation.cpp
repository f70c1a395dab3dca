#include "esbgk/core/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "esbgk/core/error.hpp"

namespace esbgk {

double TauModel::operator()(const MomentSet& m) const {
  if (omega == 1.0) return coeff * m.rho;
  return coeff * m.rho * std::pow(m.T, 1.0 - omega);
}

double TauModel::boltzmann_matched_coeff() {
  return 3.0 * std::numbers::pi / (2.0 * std::numbers::sqrt2) * 0.436;
}

void RelaxationParams::validate() const {
  if (!(eps > 0.0)) throw DomainError("relaxation: eps must be > 0");
  if (!(dt > 0.0)) throw DomainError("relaxation: dt must be > 0");
  if (!(nu >= -1.0 && nu < 1.0)) throw DomainError("relaxation: nu must lie in [-1, 1)");
  if (!(tau.coeff > 0.0)) throw DomainError("relaxation: tau coefficient must be > 0");
}

TransportCoeffs chapman_enskog_coefficients(const MomentSet& m, double nu, const TauModel& tau) {
  const double t = tau(m);
  return {m.p / ((1.0 - nu) * t), 0.5 * (m.dim + 2) * m.p / t};
}

double prandtl_number(const TransportCoeffs& c, int dim) {
  return 0.5 * (dim + 2) * c.mu / c.kappa;
}

MomentSet update_moments(std::span<const double> f_star, const VelocityGrid& grid) {
  return moments(f_star, grid);
}

Tensor update_sigma(const Tensor& sigma_star, const MomentSet& u_next,
                    const RelaxationParams& params) {
  const double relax = (1.0 - params.nu) * params.tau(u_next) * params.dt;
  const double keep = params.eps / (params.eps + relax);
  const double toward = relax / (params.eps + relax);
  Tensor target = Tensor::identity(sigma_star.dim, u_next.T);
  target += Tensor::outer(u_next.u, u_next.u, sigma_star.dim);
  target *= u_next.rho;
  Tensor out = keep * sigma_star + toward * target;
  for (int i = 0; i < out.dim; ++i)
    for (int j = i + 1; j < out.dim; ++j) out(j, i) = out(i, j) = 0.5 * (out(i, j) + out(j, i));
  return out;
}

namespace {

RelaxOutcome blend(std::span<const double> f_star, const MomentSet& u_next,
                   const RelaxationParams& params, const VelocityGrid& grid,
                   std::span<double> target_then_f, bool floored) {
  const bool unmatched =
      params.conservative && !match_conserved_moments(u_next, grid, target_then_f);
  const double relax = params.tau(u_next) * params.dt;
  const double keep = params.eps / (params.eps + relax);
  const double toward = relax / (params.eps + relax);
  RelaxOutcome out;
  out.spd_floored = floored;
  out.unmatched = unmatched;
  for (std::size_t k = 0; k < f_star.size(); ++k) {
    const double g = target_then_f[k];
    out.target_sup = std::max(out.target_sup, g);
    target_then_f[k] = keep * f_star[k] + toward * g;
  }
  return out;
}

}  // namespace

RelaxOutcome relax(std::span<const double> f_star, const MomentSet& u_next,
                   const Tensor& sigma_next, const RelaxationParams& params,
                   const VelocityGrid& grid, std::span<double> f_next) {
  const Tensor theta = centered_tensor(sigma_next, u_next);
  const Tensor t_corr = corrected_tensor(u_next, theta, params.nu);
  const bool floored = gaussian(u_next, t_corr, grid, f_next);
  return blend(f_star, u_next, params, grid, f_next, floored);
}

RelaxOutcome relax_bgk(std::span<const double> f_star, const MomentSet& u_next,
                       const RelaxationParams& params, const VelocityGrid& grid,
                       std::span<double> f_next) {
  maxwellian(u_next, grid, f_next);
  return blend(f_star, u_next, params, grid, f_next, false);
}

CellRelaxation relax_cell(std::span<const double> f_star, const Tensor& sigma_star,
                          const RelaxationParams& params, const VelocityGrid& grid,
                          CollisionModel model, std::span<double> f_next) {
  CellRelaxation r;
  r.u_next = update_moments(f_star, grid);
  if (!r.u_next.valid) {
    throw NumericalError("relaxation: invalid moments (rho=" + std::to_string(r.u_next.rho) +
                         ", T=" + std::to_string(r.u_next.T) + ")");
  }
  r.tau = params.tau(r.u_next);
  if (model == CollisionModel::Bgk) {
    r.sigma_next = sigma_star;
    r.outcome = relax_bgk(f_star, r.u_next, params, grid, f_next);
    return r;
  }
  r.sigma_next = update_sigma(sigma_star, r.u_next, params);
  r.outcome = relax(f_star, r.u_next, r.sigma_next, params, grid, f_next);
  return r;
}

}  // namespace esbgk
