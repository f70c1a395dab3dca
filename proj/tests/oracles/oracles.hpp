#pragma once

// Independent reference computations used by the tests. None of these call
// into the solver's numerics.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Moments {
  double rho = 0.0;
  std::array<double, 3> mom{};
  double energy = 0.0;
  std::array<double, 3> u{};
  double T = 0.0;
};

// Midpoint nodes of [-vmax, vmax]^dim, axis 0 fastest.
inline std::vector<std::array<double, 3>> nodes(int dim, double vmax, int n) {
  const double dv = 2.0 * vmax / n;
  std::vector<std::array<double, 3>> out;
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= n;
  for (std::size_t k = 0; k < total; ++k) {
    std::array<double, 3> v{};
    std::size_t r = k;
    for (int d = 0; d < dim; ++d) {
      v[d] = -vmax + (static_cast<double>(r % n) + 0.5) * dv;
      r /= n;
    }
    out.push_back(v);
  }
  return out;
}

// Straight left-to-right sums.
inline Moments direct_moments(const std::vector<double>& f,
                              const std::vector<std::array<double, 3>>& v, double w, int dim) {
  Moments m;
  for (std::size_t k = 0; k < f.size(); ++k) {
    m.rho += w * f[k];
    double v2 = 0.0;
    for (int d = 0; d < dim; ++d) {
      m.mom[d] += w * f[k] * v[k][d];
      v2 += v[k][d] * v[k][d];
    }
    m.energy += 0.5 * w * f[k] * v2;
  }
  double u2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    m.u[d] = m.mom[d] / m.rho;
    u2 += m.u[d] * m.u[d];
  }
  m.T = (2.0 * m.energy / m.rho - u2) / dim;
  return m;
}

inline double gauss_density(const std::array<double, 3>& v, double rho,
                            const std::array<double, 3>& u, double T, int dim) {
  double c2 = 0.0;
  for (int d = 0; d < dim; ++d) c2 += (v[d] - u[d]) * (v[d] - u[d]);
  return rho * std::exp(-c2 / (2.0 * T)) / std::pow(2.0 * std::numbers::pi * T, 0.5 * dim);
}

// Sampled Maxwellian whose discrete (rho, rho u, E) equal the requested
// values: Newton on the parameters (rho', u', T') with a finite-difference
// Jacobian.
inline std::vector<double> discrete_maxwellian(double rho, const std::array<double, 3>& u,
                                               double T, const std::vector<std::array<double, 3>>& v,
                                               double w, int dim) {
  const int n = dim + 2;
  std::vector<double> p(n);
  p[0] = rho;
  for (int d = 0; d < dim; ++d) p[1 + d] = u[d];
  p[n - 1] = T;
  double u2 = 0.0;
  for (int d = 0; d < dim; ++d) u2 += u[d] * u[d];
  std::vector<double> want(n);
  want[0] = rho;
  for (int d = 0; d < dim; ++d) want[1 + d] = rho * u[d];
  want[n - 1] = 0.5 * rho * (u2 + dim * T);

  auto sample = [&](const std::vector<double>& q) {
    std::array<double, 3> uu{};
    for (int d = 0; d < dim; ++d) uu[d] = q[1 + d];
    std::vector<double> f(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) f[k] = gauss_density(v[k], q[0], uu, q[n - 1], dim);
    return f;
  };
  auto resid = [&](const std::vector<double>& q) {
    const Moments m = direct_moments(sample(q), v, w, dim);
    std::vector<double> r(n);
    r[0] = m.rho - want[0];
    for (int d = 0; d < dim; ++d) r[1 + d] = m.mom[d] - want[1 + d];
    r[n - 1] = m.energy - want[n - 1];
    return r;
  };
  for (int iter = 0; iter < 40; ++iter) {
    const auto r = resid(p);
    double rn = 0.0;
    for (double x : r) rn = std::max(rn, std::fabs(x));
    if (rn < 1e-15 * (rho + want[n - 1])) break;
    std::vector<std::vector<double>> J(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
      auto q = p;
      const double h = 1e-7 * std::max(1.0, std::fabs(p[j]));
      q[j] += h;
      const auto rp = resid(q);
      q[j] = p[j] - h;
      const auto rm = resid(q);
      for (int i = 0; i < n; ++i) J[i][j] = (rp[i] - rm[i]) / (2.0 * h);
    }
    // Gaussian elimination with partial pivoting.
    std::vector<double> b = r;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int i = c + 1; i < n; ++i)
        if (std::fabs(J[i][c]) > std::fabs(J[piv][c])) piv = i;
      std::swap(J[c], J[piv]);
      std::swap(b[c], b[piv]);
      for (int i = c + 1; i < n; ++i) {
        const double f = J[i][c] / J[c][c];
        for (int j = c; j < n; ++j) J[i][j] -= f * J[c][j];
        b[i] -= f * b[c];
      }
    }
    for (int c = n - 1; c >= 0; --c) {
      for (int j = c + 1; j < n; ++j) b[c] -= J[c][j] * b[j];
      b[c] /= J[c][c];
    }
    for (int i = 0; i < n; ++i) p[i] -= b[i];
  }
  return sample(p);
}

// Exact solution of the 1-D Riemann problem for a gamma-law gas
// (two-rarefaction / two-shock Newton iteration on the star pressure).
class ExactRiemann {
 public:
  struct State {
    double rho, u, p;
  };

  ExactRiemann(State l, State r, double gamma) : l_(l), r_(r), g_(gamma) {
    cl_ = std::sqrt(g_ * l_.p / l_.rho);
    cr_ = std::sqrt(g_ * r_.p / r_.rho);
    solve();
  }

  double p_star() const { return ps_; }
  double u_star() const { return us_; }

  // State at similarity coordinate s = x / t.
  State sample(double s) const {
    const double g = g_;
    if (s <= us_) {
      if (ps_ > l_.p) {
        const double q = (ps_ / l_.p);
        const double sl = l_.u - cl_ * std::sqrt((g + 1) / (2 * g) * q + (g - 1) / (2 * g));
        if (s <= sl) return l_;
        const double rho = l_.rho * (q + (g - 1) / (g + 1)) / ((g - 1) / (g + 1) * q + 1);
        return {rho, us_, ps_};
      }
      const double shl = l_.u - cl_;
      if (s <= shl) return l_;
      const double cs = cl_ * std::pow(ps_ / l_.p, (g - 1) / (2 * g));
      const double stl = us_ - cs;
      if (s > stl) return {l_.rho * std::pow(ps_ / l_.p, 1 / g), us_, ps_};
      const double c = 2 / (g + 1) * (cl_ + (g - 1) / 2 * (l_.u - s));
      const double u = 2 / (g + 1) * (cl_ + (g - 1) / 2 * l_.u + s);
      const double rho = l_.rho * std::pow(c / cl_, 2 / (g - 1));
      return {rho, u, l_.p * std::pow(c / cl_, 2 * g / (g - 1))};
    }
    if (ps_ > r_.p) {
      const double q = ps_ / r_.p;
      const double sr = r_.u + cr_ * std::sqrt((g + 1) / (2 * g) * q + (g - 1) / (2 * g));
      if (s >= sr) return r_;
      const double rho = r_.rho * (q + (g - 1) / (g + 1)) / ((g - 1) / (g + 1) * q + 1);
      return {rho, us_, ps_};
    }
    const double shr = r_.u + cr_;
    if (s >= shr) return r_;
    const double cs = cr_ * std::pow(ps_ / r_.p, (g - 1) / (2 * g));
    const double str = us_ + cs;
    if (s < str) return {r_.rho * std::pow(ps_ / r_.p, 1 / g), us_, ps_};
    const double c = 2 / (g + 1) * (cr_ - (g - 1) / 2 * (r_.u - s));
    const double u = 2 / (g + 1) * (-cr_ + (g - 1) / 2 * r_.u + s);
    const double rho = r_.rho * std::pow(c / cr_, 2 / (g - 1));
    return {rho, u, r_.p * std::pow(c / cr_, 2 * g / (g - 1))};
  }

 private:
  double f_side(double p, const State& s, double c, double* df) const {
    const double g = g_;
    if (p > s.p) {
      const double a = 2 / ((g + 1) * s.rho);
      const double b = (g - 1) / (g + 1) * s.p;
      const double q = std::sqrt(a / (p + b));
      *df = q * (1 - (p - s.p) / (2 * (b + p)));
      return (p - s.p) * q;
    }
    *df = 1 / (s.rho * c) * std::pow(p / s.p, -(g + 1) / (2 * g));
    return 2 * c / (g - 1) * (std::pow(p / s.p, (g - 1) / (2 * g)) - 1);
  }

  void solve() {
    double p = 0.5 * (l_.p + r_.p);
    for (int i = 0; i < 200; ++i) {
      double dl = 0, dr = 0;
      const double f = f_side(p, l_, cl_, &dl) + f_side(p, r_, cr_, &dr) + r_.u - l_.u;
      double next = p - f / (dl + dr);
      if (next <= 0) next = 1e-8 * p;
      if (std::fabs(next - p) < 1e-15 * p) {
        p = next;
        break;
      }
      p = next;
    }
    double dl = 0, dr = 0;
    ps_ = p;
    us_ = 0.5 * (l_.u + r_.u) + 0.5 * (f_side(p, r_, cr_, &dr) - f_side(p, l_, cl_, &dl));
  }

  State l_, r_;
  double g_;
  double cl_ = 0, cr_ = 0, ps_ = 0, us_ = 0;
};

// Cell averages of q(x - shift) on [lo, hi) with n cells, given an
// antiderivative Q of a periodic q with period (hi - lo).
inline std::vector<double> shifted_averages(const std::function<double(double)>& Q, double lo,
                                            double hi, int n, double shift) {
  const double dx = (hi - lo) / n;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * dx - shift;
    out[i] = (Q(a + dx) - Q(a)) / dx;
  }
  return out;
}

}  // namespace oracle
