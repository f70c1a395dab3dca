#pragma once

#include <numbers>
#include <span>

#include "esbgk/core/tensor.hpp"
#include "esbgk/core/velocity_space.hpp"

namespace esbgk {

/// Collision frequency law tau = coeff * rho * T^(1 - omega).
///
/// omega = 1 gives the temperature-independent law used in the benchmark
/// scenarios; coeff defaults to 0.9 pi / 2.
struct TauModel {
  double coeff = 0.9 * std::numbers::pi / 2.0;
  double omega = 1.0;

  double operator()(const MomentSet& m) const;

  /// Coefficient matching the Maxwell-molecule Boltzmann viscosity,
  /// 3 pi / (2 sqrt 2) * A2(5) with A2(5) = 0.436.
  static double boltzmann_matched_coeff();
};

/// Selects the relaxation target: anisotropic Gaussian (ES-BGK) or the
/// isotropic Maxwellian (classical BGK).
enum class CollisionModel { EsBgk, Bgk };

struct RelaxationParams {
  double eps = 1.0;
  double nu = 0.0;
  TauModel tau;
  double dt = 0.0;
  /// Rescale the sampled target so its discrete (rho, rho u, E) equal U^{n+1}.
  /// Without it the truncated grid leaks mass and energy through the target.
  bool conservative = true;

  /// Throws DomainError unless eps > 0, dt > 0 and nu in [-1, 1).
  void validate() const;
};

/// Navier-Stokes coefficients produced by the Chapman-Enskog expansion of the
/// scheme: mu = p / ((1 - nu) tau), kappa = (d_v + 2) p / (2 tau).
struct TransportCoeffs {
  double mu = 0.0;
  double kappa = 0.0;
};

TransportCoeffs chapman_enskog_coefficients(const MomentSet& m, double nu, const TauModel& tau);
/// ((d_v + 2) / 2) mu / kappa.
double prandtl_number(const TransportCoeffs& c, int dim);

/// U^{n+1}: moments of the transported distribution. Independent of eps and tau.
MomentSet update_moments(std::span<const double> f_star, const VelocityGrid& grid);

/// Closed-form implicit update of the raw second moment:
///   a sigma_star + (1 - a) rho (T I + u (x) u),  a = eps / (eps + (1 - nu) tau dt)
/// with tau evaluated on u_next.
Tensor update_sigma(const Tensor& sigma_star, const MomentSet& u_next,
                    const RelaxationParams& params);

struct RelaxOutcome {
  bool spd_floored = false;
  double target_sup = 0.0;  ///< max over nodes of the relaxation target
  bool unmatched = false;   ///< moment matching requested but did not converge
};

/// f^{n+1} = b f_star + (1 - b) G[f^{n+1}],  b = eps / (eps + tau dt).
/// The Gaussian is built from u_next and Theta^{n+1} = sigma_next / rho - u (x) u.
/// `f_next` may not alias `f_star`.
RelaxOutcome relax(std::span<const double> f_star, const MomentSet& u_next,
                   const Tensor& sigma_next, const RelaxationParams& params,
                   const VelocityGrid& grid, std::span<double> f_next);

/// Classical BGK-IMEX update: U^{n+1} alone defines M[f^{n+1}].
RelaxOutcome relax_bgk(std::span<const double> f_star, const MomentSet& u_next,
                       const RelaxationParams& params, const VelocityGrid& grid,
                       std::span<double> f_next);

struct CellRelaxation {
  MomentSet u_next;
  Tensor sigma_next;
  double tau = 0.0;
  RelaxOutcome outcome;
};

/// Full implicit relaxation of one cell in the order U -> tau -> Sigma ->
/// T_corr -> G -> f. `sigma_star` is Sigma^n - dt int v (x) v v.grad f^n dv.
/// Throws NumericalError when U^{n+1} is not a valid state.
CellRelaxation relax_cell(std::span<const double> f_star, const Tensor& sigma_star,
                          const RelaxationParams& params, const VelocityGrid& grid,
                          CollisionModel model, std::span<double> f_next);

}  // namespace esbgk
