#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "esbgk/core/tensor.hpp"

namespace esbgk {

inline constexpr double kRhoFloor = 1e-12;
inline constexpr double kTemperatureFloor = 1e-12;
/// Eigenvalues of the corrected tensor are floored at kSpdGuard * T.
inline constexpr double kSpdGuard = 1e-10;

/// Truncated uniform Cartesian velocity grid with midpoint nodes.
///
/// Nodes are ordered with axis 0 fastest: k = i0 + n*i1 (+ n*n*i2). The grid
/// covers [-v_max, v_max]^dim with n_v cells per axis, so every node v has a
/// mirror node -v.
class VelocityGrid {
 public:
  VelocityGrid(int dim, double v_max, int n_v);

  int dim() const { return dim_; }
  double v_max() const { return v_max_; }
  int n_v() const { return n_v_; }
  double spacing() const { return spacing_; }
  /// Quadrature weight (dv)^dim shared by every node.
  double weight() const { return weight_; }
  std::size_t size() const { return nodes_.size(); }

  std::span<const double> axis() const { return axis_; }
  const Vec& node(std::size_t k) const { return nodes_[k]; }
  const std::vector<Vec>& nodes() const { return nodes_; }
  /// Index of the node -v for node k.
  std::size_t mirror(std::size_t k) const;
  /// Largest |v_i| over nodes and axes.
  double max_speed() const { return v_max_ - 0.5 * spacing_; }

 private:
  int dim_;
  double v_max_;
  int n_v_;
  double spacing_;
  double weight_;
  std::vector<double> axis_;
  std::vector<Vec> nodes_;
};

/// f(x, v) sampled on spatial cells x velocity nodes, cell-major.
class DistributionField {
 public:
  DistributionField() = default;
  DistributionField(std::size_t n_cells, std::size_t n_vel, double value = 0.0)
      : n_cells_(n_cells), n_vel_(n_vel), data_(n_cells * n_vel, value) {}

  std::size_t n_cells() const { return n_cells_; }
  std::size_t n_vel() const { return n_vel_; }

  std::span<double> cell(std::size_t c) { return {data_.data() + c * n_vel_, n_vel_}; }
  std::span<const double> cell(std::size_t c) const {
    return {data_.data() + c * n_vel_, n_vel_};
  }
  double& operator()(std::size_t c, std::size_t k) { return data_[c * n_vel_ + k]; }
  double operator()(std::size_t c, std::size_t k) const { return data_[c * n_vel_ + k]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

 private:
  std::size_t n_cells_ = 0;
  std::size_t n_vel_ = 0;
  std::vector<double> data_;
};

/// Conserved fields U = (rho, rho u, E) of one cell plus derived u, T, p.
struct MomentSet {
  int dim = 2;
  double rho = 0.0;
  Vec momentum{};
  double energy = 0.0;
  Vec u{};
  double T = 0.0;
  double p = 0.0;
  bool valid = false;

  /// Builds a state from primitive variables; valid iff rho and T exceed
  /// their floors.
  static MomentSet from_primitive(int dim, double rho, const Vec& u, double T);
  /// Builds a state from conserved variables and derives u, T, p.
  static MomentSet from_conserved(int dim, double rho, const Vec& momentum, double energy);
};

/// Second-moment tensors of one cell.
struct StressState {
  Tensor sigma;   ///< raw second moment, int v (x) v f dv
  Tensor theta;   ///< centered tensor sigma/rho - u (x) u
  Tensor t_corr;  ///< (1 - nu) T I + nu theta
};

MomentSet moments(std::span<const double> f, const VelocityGrid& grid);
std::vector<MomentSet> moments(const DistributionField& f, const VelocityGrid& grid);

Tensor second_moment(std::span<const double> f, const VelocityGrid& grid);

/// Theta = sigma/rho - u (x) u.
Tensor centered_tensor(const Tensor& sigma, const MomentSet& m);
/// (1 - nu) T I + nu theta.
Tensor corrected_tensor(const MomentSet& m, const Tensor& theta, double nu);
StressState stress_state(std::span<const double> f, const VelocityGrid& grid, double nu);

/// Samples the local Maxwellian of `m` at every node into `out`.
/// Throws DomainError unless rho > 0 and T > 0.
void maxwellian(const MomentSet& m, const VelocityGrid& grid, std::span<double> out);
std::vector<double> maxwellian(const MomentSet& m, const VelocityGrid& grid);
/// Pointwise value of the Maxwellian at one velocity.
double maxwellian_value(const MomentSet& m, const Vec& v);

/// Symmetric positive-definite factorization of a corrected tensor, after
/// flooring its eigenvalues at kSpdGuard * T.
struct GaussianShape {
  Tensor inverse;
  double determinant = 0.0;
  bool floored = false;
};

/// Throws SpdError when t_corr is not finite or the guarded factorization
/// still fails.
GaussianShape factor_corrected_tensor(const Tensor& t_corr, double T);

/// Samples the anisotropic Gaussian with density/velocity of `m` and
/// covariance `t_corr`. Returns true when the SPD guard floored an eigenvalue.
bool gaussian(const MomentSet& m, const Tensor& t_corr, const VelocityGrid& grid,
              std::span<double> out);
std::vector<double> gaussian(const MomentSet& m, const Tensor& t_corr, const VelocityGrid& grid);

/// Rescales samples g by exp(a + b.(v-u) + c|v-u|^2/2) so that their
/// discrete mass, momentum and energy equal those of `target` to round-off.
/// Keeps g positive. Returns false if Newton did not converge (g untouched).
bool match_conserved_moments(const MomentSet& target, const VelocityGrid& grid,
                             std::span<double> g);

/// (1/eps) int |v-u|^2/2 (v-u) f dv.
Vec heat_flux(std::span<const double> f, const MomentSet& m, const VelocityGrid& grid,
              double eps);

/// Rule used by the presets: max over states of |u| + 8 sqrt(T).
double velocity_cutoff(std::span<const MomentSet> states, double thermal_widths = 8.0);

}  // namespace esbgk
