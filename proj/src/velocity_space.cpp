#include "esbgk/core/velocity_space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "esbgk/core/error.hpp"

namespace esbgk {

namespace {

using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

void require_positive_state(const MomentSet& m, const char* what) {
  if (!(m.rho > 0.0) || !(m.T > 0.0) || !std::isfinite(m.rho) || !std::isfinite(m.T)) {
    throw DomainError(std::string(what) + ": requires rho > 0 and T > 0 (rho=" +
                      std::to_string(m.rho) + ", T=" + std::to_string(m.T) + ")");
  }
}

}  // namespace

VelocityGrid::VelocityGrid(int dim, double v_max, int n_v)
    : dim_(dim), v_max_(v_max), n_v_(n_v) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("velocity grid dimension must be 1..3");
  if (n_v < 4) throw DomainError("velocity grid needs n_v >= 4");
  if (!(v_max > 0.0) || !std::isfinite(v_max)) throw DomainError("velocity grid needs v_max > 0");

  spacing_ = 2.0 * v_max / n_v;
  weight_ = std::pow(spacing_, dim);
  axis_.resize(n_v);
  for (int i = 0; i < n_v; ++i) axis_[i] = -v_max + (i + 0.5) * spacing_;
  // Exact antisymmetry of the node set.
  for (int i = 0; i < n_v / 2; ++i) axis_[n_v - 1 - i] = -axis_[i];

  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n_v);
  nodes_.resize(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t r = k;
    Vec v{};
    for (int d = 0; d < dim; ++d) {
      v[d] = axis_[r % n_v];
      r /= n_v;
    }
    nodes_[k] = v;
  }
}

std::size_t VelocityGrid::mirror(std::size_t k) const {
  std::size_t r = k;
  std::size_t out = 0;
  std::size_t stride = 1;
  for (int d = 0; d < dim_; ++d) {
    const std::size_t i = r % n_v_;
    r /= n_v_;
    out += (n_v_ - 1 - i) * stride;
    stride *= n_v_;
  }
  return out;
}

MomentSet MomentSet::from_primitive(int dim, double rho, const Vec& u, double T) {
  MomentSet m;
  m.dim = dim;
  m.rho = rho;
  m.u = u;
  for (int i = dim; i < kMaxDim; ++i) m.u[i] = 0.0;
  m.T = T;
  m.p = rho * T;
  for (int i = 0; i < dim; ++i) m.momentum[i] = rho * m.u[i];
  m.energy = 0.5 * rho * dot(m.u, m.u, dim) + 0.5 * dim * rho * T;
  m.valid = rho > kRhoFloor && T > kTemperatureFloor && std::isfinite(rho) && std::isfinite(T);
  return m;
}

MomentSet MomentSet::from_conserved(int dim, double rho, const Vec& momentum, double energy) {
  MomentSet m;
  m.dim = dim;
  m.rho = rho;
  m.energy = energy;
  for (int i = 0; i < dim; ++i) m.momentum[i] = momentum[i];
  if (rho > kRhoFloor && std::isfinite(rho)) {
    for (int i = 0; i < dim; ++i) m.u[i] = momentum[i] / rho;
    m.T = (2.0 * energy / rho - dot(m.u, m.u, dim)) / dim;
    m.p = rho * m.T;
    m.valid = m.T > kTemperatureFloor && std::isfinite(m.T);
  }
  return m;
}

MomentSet moments(std::span<const double> f, const VelocityGrid& grid) {
  const int dim = grid.dim();
  double rho = 0.0;
  double energy = 0.0;
  Vec mom{};
  const auto& nodes = grid.nodes();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Vec& v = nodes[k];
    const double fk = f[k];
    rho += fk;
    double v2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      mom[i] += fk * v[i];
      v2 += v[i] * v[i];
    }
    energy += fk * v2;
  }
  const double w = grid.weight();
  for (int i = 0; i < dim; ++i) mom[i] *= w;
  return MomentSet::from_conserved(dim, rho * w, mom, 0.5 * energy * w);
}

std::vector<MomentSet> moments(const DistributionField& f, const VelocityGrid& grid) {
  std::vector<MomentSet> out(f.n_cells());
  for (std::size_t c = 0; c < f.n_cells(); ++c) out[c] = moments(f.cell(c), grid);
  return out;
}

Tensor second_moment(std::span<const double> f, const VelocityGrid& grid) {
  const int dim = grid.dim();
  Tensor s = Tensor::zero(dim);
  const auto& nodes = grid.nodes();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Vec& v = nodes[k];
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) s(i, j) += f[k] * v[i] * v[j];
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      s(i, j) *= grid.weight();
      s(j, i) = s(i, j);
    }
  return s;
}

Tensor centered_tensor(const Tensor& sigma, const MomentSet& m) {
  Tensor theta = (1.0 / m.rho) * sigma;
  theta -= Tensor::outer(m.u, m.u, sigma.dim);
  return theta;
}

Tensor corrected_tensor(const MomentSet& m, const Tensor& theta, double nu) {
  Tensor t = Tensor::identity(theta.dim, (1.0 - nu) * m.T);
  t += nu * theta;
  return t;
}

StressState stress_state(std::span<const double> f, const VelocityGrid& grid, double nu) {
  const MomentSet m = moments(f, grid);
  StressState s;
  s.sigma = second_moment(f, grid);
  s.theta = centered_tensor(s.sigma, m);
  s.t_corr = corrected_tensor(m, s.theta, nu);
  return s;
}

double maxwellian_value(const MomentSet& m, const Vec& v) {
  require_positive_state(m, "maxwellian");
  Vec d{};
  for (int i = 0; i < m.dim; ++i) d[i] = v[i] - m.u[i];
  const double norm = m.rho / std::pow(2.0 * std::numbers::pi * m.T, 0.5 * m.dim);
  return norm * std::exp(-dot(d, d, m.dim) / (2.0 * m.T));
}

void maxwellian(const MomentSet& m, const VelocityGrid& grid, std::span<double> out) {
  require_positive_state(m, "maxwellian");
  const int dim = grid.dim();
  const int n = grid.n_v();
  const auto axis = grid.axis();
  // Separable: one exponential per axis node.
  std::array<std::vector<double>, kMaxDim> factor;
  for (int d = 0; d < dim; ++d) {
    factor[d].resize(n);
    for (int i = 0; i < n; ++i) {
      const double c = axis[i] - m.u[d];
      factor[d][i] = std::exp(-c * c / (2.0 * m.T));
    }
  }
  const double norm = m.rho / std::pow(2.0 * std::numbers::pi * m.T, 0.5 * dim);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::size_t r = k;
    double value = norm;
    for (int d = 0; d < dim; ++d) {
      value *= factor[d][r % n];
      r /= n;
    }
    out[k] = value;
  }
}

std::vector<double> maxwellian(const MomentSet& m, const VelocityGrid& grid) {
  std::vector<double> out(grid.size());
  maxwellian(m, grid, out);
  return out;
}

GaussianShape factor_corrected_tensor(const Tensor& t_corr, double T) {
  const int dim = t_corr.dim;
  SmallMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (!std::isfinite(t_corr(i, j))) throw SpdError("corrected tensor is not finite");
      a(i, j) = 0.5 * (t_corr(i, j) + t_corr(j, i));
    }
  if (!(T > 0.0) || !std::isfinite(T)) throw SpdError("corrected tensor needs T > 0");

  Eigen::SelfAdjointEigenSolver<SmallMatrix> eig(a);
  if (eig.info() != Eigen::Success) throw SpdError("eigen-decomposition of corrected tensor failed");

  const double floor = kSpdGuard * T;
  auto lambda = eig.eigenvalues().eval();
  GaussianShape shape;
  for (int i = 0; i < dim; ++i) {
    if (lambda(i) < floor) {
      lambda(i) = floor;
      shape.floored = true;
    }
  }
  const SmallMatrix& q = eig.eigenvectors();
  const SmallMatrix guarded = q * lambda.asDiagonal() * q.transpose();
  Eigen::LLT<SmallMatrix> llt(guarded);
  if (llt.info() != Eigen::Success) throw SpdError("corrected tensor is not positive definite");

  const SmallMatrix inv = q * lambda.cwiseInverse().asDiagonal() * q.transpose();
  shape.inverse = Tensor::zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) shape.inverse(i, j) = 0.5 * (inv(i, j) + inv(j, i));
  shape.determinant = lambda.prod();
  return shape;
}

bool gaussian(const MomentSet& m, const Tensor& t_corr, const VelocityGrid& grid,
              std::span<double> out) {
  require_positive_state(m, "gaussian");
  const GaussianShape shape = factor_corrected_tensor(t_corr, m.T);
  const int dim = grid.dim();
  const double norm =
      m.rho / std::sqrt(std::pow(2.0 * std::numbers::pi, dim) * shape.determinant);
  const auto& nodes = grid.nodes();
  const Tensor& a = shape.inverse;
  for (std::size_t k = 0; k < out.size(); ++k) {
    Vec c{};
    for (int i = 0; i < dim; ++i) c[i] = nodes[k][i] - m.u[i];
    double q = 0.0;
    for (int i = 0; i < dim; ++i) {
      q += a(i, i) * c[i] * c[i];
      for (int j = i + 1; j < dim; ++j) q += 2.0 * a(i, j) * c[i] * c[j];
    }
    out[k] = norm * std::exp(-0.5 * q);
  }
  return shape.floored;
}

std::vector<double> gaussian(const MomentSet& m, const Tensor& t_corr, const VelocityGrid& grid) {
  std::vector<double> out(grid.size());
  gaussian(m, t_corr, grid, out);
  return out;
}

bool match_conserved_moments(const MomentSet& target, const VelocityGrid& grid,
                             std::span<double> g) {
  using Small = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim + 2, 1>;
  using Square = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim + 2, kMaxDim + 2>;
  const int dim = grid.dim();
  const int n = dim + 2;
  const auto& nodes = grid.nodes();
  const double w = grid.weight();

  Small want = Small::Zero(n);
  want(0) = target.rho;
  want(n - 1) = 0.5 * dim * target.rho * target.T;

  std::vector<double> trial(g.size());
  Small alpha = Small::Zero(n);
  Small phi(n);
  auto basis = [&](std::size_t k) {
    phi(0) = 1.0;
    double c2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double c = nodes[k][i] - target.u[i];
      phi(1 + i) = c;
      c2 += c * c;
    }
    phi(n - 1) = 0.5 * c2;
  };
  // Newton stops at round-off: exact tolerance, or once the residual stalls.
  const double scale = std::abs(want(0)) + std::abs(want(n - 1));
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_trial(g.size());
  for (int iter = 0; iter < 40; ++iter) {
    Small have = Small::Zero(n);
    Square jac = Square::Zero(n, n);
    for (std::size_t k = 0; k < g.size(); ++k) {
      basis(k);
      trial[k] = g[k] * std::exp(alpha.dot(phi));
      have.noalias() += (w * trial[k]) * phi;
      jac.noalias() += (w * trial[k]) * phi * phi.transpose();
    }
    const double res = (have - want).cwiseAbs().maxCoeff();
    if (!std::isfinite(res)) break;
    if (res < best) {
      if (res > 0.5 * best && best <= 1e-13 * scale) {
        std::copy(trial.begin(), trial.end(), g.begin());
        return true;
      }
      best = res;
      best_trial.swap(trial);
      trial.resize(g.size());
      if (res <= 4e-16 * scale) break;
    } else if (best <= 1e-13 * scale) {
      break;
    }
    Eigen::LDLT<Square> ldlt(jac);
    if (ldlt.info() != Eigen::Success) break;
    alpha -= ldlt.solve(have - want);
  }
  if (!(best <= 1e-13 * scale)) return false;
  std::copy(best_trial.begin(), best_trial.end(), g.begin());
  return true;
}

Vec heat_flux(std::span<const double> f, const MomentSet& m, const VelocityGrid& grid,
              double eps) {
  const int dim = grid.dim();
  Vec q{};
  const auto& nodes = grid.nodes();
  for (std::size_t k = 0; k < f.size(); ++k) {
    Vec c{};
    for (int i = 0; i < dim; ++i) c[i] = nodes[k][i] - m.u[i];
    const double half_c2 = 0.5 * dot(c, c, dim);
    for (int i = 0; i < dim; ++i) q[i] += f[k] * half_c2 * c[i];
  }
  const double scale = grid.weight() / eps;
  for (int i = 0; i < dim; ++i) q[i] *= scale;
  return q;
}

double velocity_cutoff(std::span<const MomentSet> states, double thermal_widths) {
  double v = 0.0;
  for (const auto& s : states) {
    v = std::max(v, std::sqrt(dot(s.u, s.u, s.dim)) + thermal_widths * std::sqrt(s.T));
  }
  return v;
}

}  // namespace esbgk
