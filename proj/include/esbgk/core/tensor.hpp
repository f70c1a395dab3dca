#pragma once

#include <array>
#include <cmath>

namespace esbgk {

inline constexpr int kMaxDim = 3;

/// Fixed-capacity vector; only the first `dim` components are meaningful.
using Vec = std::array<double, kMaxDim>;

inline double dot(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

/// Dense dim x dim tensor stored row-major in a 3x3 block.
struct Tensor {
  int dim = 2;
  std::array<double, kMaxDim * kMaxDim> m{};

  double& operator()(int i, int j) { return m[kMaxDim * i + j]; }
  double operator()(int i, int j) const { return m[kMaxDim * i + j]; }

  static Tensor zero(int dim) {
    Tensor t;
    t.dim = dim;
    return t;
  }

  static Tensor identity(int dim, double scale = 1.0) {
    Tensor t = zero(dim);
    for (int i = 0; i < dim; ++i) t(i, i) = scale;
    return t;
  }

  static Tensor outer(const Vec& a, const Vec& b, int dim) {
    Tensor t = zero(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) t(i, j) = a[i] * b[j];
    return t;
  }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += (*this)(i, i);
    return s;
  }

  Tensor& operator+=(const Tensor& o) {
    for (auto k = 0u; k < m.size(); ++k) m[k] += o.m[k];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (auto k = 0u; k < m.size(); ++k) m[k] -= o.m[k];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (auto& x : m) x *= s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }

  /// Largest |A_ij - A_ji|.
  double asymmetry() const {
    double e = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) e = std::fmax(e, std::fabs((*this)(i, j) - (*this)(j, i)));
    return e;
  }

  /// Largest |A_ij - B_ij|.
  double max_abs_diff(const Tensor& o) const {
    double e = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) e = std::fmax(e, std::fabs((*this)(i, j) - o(i, j)));
    return e;
  }
};

}  // namespace esbgk
