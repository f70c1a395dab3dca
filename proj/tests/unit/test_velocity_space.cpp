#include <doctest.h>

#include <cmath>
#include <vector>

#include "esbgk/core/error.hpp"
#include "esbgk/core/velocity_space.hpp"
#include "oracles/oracles.hpp"

using namespace esbgk;

namespace {

std::vector<double> as_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

oracle::Moments oracle_moments(const std::vector<double>& f, const VelocityGrid& g) {
  return oracle::direct_moments(f, oracle::nodes(g.dim(), g.v_max(), g.n_v()), g.weight(),
                                g.dim());
}

}  // namespace

TEST_CASE("velocity grid nodes are midpoints with exact mirrors") {
  VelocityGrid g(2, 8.0, 32);
  CHECK(g.size() == 1024);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.weight() == doctest::Approx(0.25));
  const auto ref = oracle::nodes(2, 8.0, 32);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(g.node(k)[0] == doctest::Approx(ref[k][0]).epsilon(1e-15));
    CHECK(g.node(k)[1] == doctest::Approx(ref[k][1]).epsilon(1e-15));
    const auto& m = g.node(g.mirror(k));
    CHECK(m[0] == -g.node(k)[0]);
    CHECK(m[1] == -g.node(k)[1]);
  }
  CHECK(g.max_speed() == doctest::Approx(7.75));
}

TEST_CASE("invalid velocity grids are rejected") {
  CHECK_THROWS_AS(VelocityGrid(0, 8.0, 32), DomainError);
  CHECK_THROWS_AS(VelocityGrid(2, -1.0, 32), DomainError);
  CHECK_THROWS_AS(VelocityGrid(2, 8.0, 1), DomainError);
}

TEST_CASE("moments of a well-resolved Maxwellian recover the parameters") {
  // n_v = 256 on [-10, 10]: quadrature error far below the checked tolerance.
  for (int dim : {1, 2, 3}) {
    const int n = dim == 3 ? 64 : 256;
    VelocityGrid g(dim, 10.0, n);
    const MomentSet target = MomentSet::from_primitive(dim, 1.3, Vec{0.4, -0.7, 0.2}, 0.9);
    const auto f = maxwellian(target, g);
    const MomentSet m = moments(f, g);
    CHECK(m.valid);
    CHECK(m.rho == doctest::Approx(1.3).epsilon(1e-10));
    for (int i = 0; i < dim; ++i) CHECK(m.u[i] == doctest::Approx(target.u[i]).epsilon(1e-10));
    CHECK(m.T == doctest::Approx(0.9).epsilon(1e-10));
    CHECK(m.p == doctest::Approx(1.3 * 0.9).epsilon(1e-10));
  }
}

TEST_CASE("pairwise moments agree with direct summation") {
  VelocityGrid g(2, 6.0, 40);
  std::vector<double> f(g.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = 0.1 + std::fabs(std::sin(0.37 * k));
  const MomentSet m = moments(f, g);
  const auto o = oracle_moments(f, g);
  CHECK(m.rho == doctest::Approx(o.rho).epsilon(1e-13));
  CHECK(m.momentum[0] == doctest::Approx(o.mom[0]).epsilon(1e-12));
  CHECK(m.momentum[1] == doctest::Approx(o.mom[1]).epsilon(1e-12));
  CHECK(m.energy == doctest::Approx(o.energy).epsilon(1e-13));
  CHECK(m.T == doctest::Approx(o.T).epsilon(1e-12));
}

TEST_CASE("centered tensor of a Maxwellian is T I and its trace gives T") {
  VelocityGrid g(2, 10.0, 200);
  const MomentSet target = MomentSet::from_primitive(2, 1.0, Vec{0.5, 0.25, 0.0}, 0.6);
  const auto f = maxwellian(target, g);
  const StressState s = stress_state(f, g, 0.5);
  CHECK(s.theta(0, 0) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(s.theta(1, 1) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(std::fabs(s.theta(0, 1)) < 1e-10);
  CHECK(s.theta.trace() / 2 == doctest::Approx(moments(f, g).T).epsilon(1e-12));
  CHECK(s.t_corr.max_abs_diff(s.theta) < 1e-9);
}

TEST_CASE("anisotropic Gaussian has the requested covariance") {
  VelocityGrid g(2, 10.0, 200);
  const MomentSet m = MomentSet::from_primitive(2, 2.0, Vec{0.3, -0.2, 0.0}, 1.0);
  Tensor t = Tensor::zero(2);
  t(0, 0) = 1.4;
  t(1, 1) = 0.6;
  t(0, 1) = t(1, 0) = 0.3;
  const auto f = gaussian(m, t, g);
  const MomentSet fm = moments(f, g);
  CHECK(fm.rho == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fm.u[0] == doctest::Approx(0.3).epsilon(1e-10));
  const Tensor theta = centered_tensor(second_moment(f, g), fm);
  CHECK(theta.max_abs_diff(t) < 1e-9);
}

TEST_CASE("Gaussian with T_corr = T I equals the Maxwellian") {
  VelocityGrid g(2, 8.0, 32);
  const MomentSet m = MomentSet::from_primitive(2, 1.0, Vec{0.5, 0.0, 0.0}, 1.2);
  const auto a = gaussian(m, Tensor::identity(2, 1.2), g);
  const auto b = maxwellian(m, g);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-14));
}

TEST_CASE("SPD guard floors non-positive eigenvalues") {
  Tensor t = Tensor::zero(2);
  t(0, 0) = 1.0;
  t(1, 1) = -0.5;
  const auto shape = factor_corrected_tensor(t, 1.0);
  CHECK(shape.floored);
  CHECK(shape.determinant == doctest::Approx(kSpdGuard).epsilon(1e-12));
  Tensor ok = Tensor::identity(2, 2.0);
  const auto s2 = factor_corrected_tensor(ok, 2.0);
  CHECK_FALSE(s2.floored);
  CHECK(s2.determinant == doctest::Approx(4.0));
  CHECK(s2.inverse(0, 0) == doctest::Approx(0.5));
  Tensor bad = Tensor::identity(2, 1.0);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(factor_corrected_tensor(bad, 1.0), SpdError);
}

TEST_CASE("Maxwellian and Gaussian require positive density and temperature") {
  VelocityGrid g(2, 8.0, 16);
  std::vector<double> out(g.size());
  MomentSet bad = MomentSet::from_primitive(2, 1.0, Vec{}, 1.0);
  bad.T = 0.0;
  CHECK_THROWS_AS(maxwellian(bad, g, out), DomainError);
  bad.T = 1.0;
  bad.rho = -1.0;
  CHECK_THROWS_AS(gaussian(bad, Tensor::identity(2), g, out), DomainError);
  CHECK_FALSE(MomentSet::from_primitive(2, 1.0, Vec{}, -1.0).valid);
  CHECK_FALSE(MomentSet::from_conserved(2, 0.0, Vec{}, 1.0).valid);
}

TEST_CASE("conserved and primitive constructors are inverse") {
  const MomentSet a = MomentSet::from_primitive(3, 0.8, Vec{0.1, 0.2, 0.3}, 1.7);
  const MomentSet b = MomentSet::from_conserved(3, a.rho, a.momentum, a.energy);
  CHECK(b.T == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(b.u[2] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(a.energy == doctest::Approx(0.5 * 0.8 * (0.14 + 3 * 1.7)).epsilon(1e-14));
}

TEST_CASE("moment matching makes the discrete target conservative") {
  // Truncated grid: the raw Gaussian loses mass; the matched one does not.
  VelocityGrid g(2, 6.0, 24);
  const MomentSet m = MomentSet::from_primitive(2, 1.0, Vec{2.0, 0.5, 0.0}, 2.0);
  Tensor t = Tensor::identity(2, 2.0);
  t(0, 0) = 2.6;
  t(1, 1) = 1.4;
  auto f = gaussian(m, t, g);
  const double raw_defect = std::fabs(moments(f, g).rho - 1.0);
  CHECK(raw_defect > 1e-6);
  REQUIRE(match_conserved_moments(m, g, f));
  const MomentSet fm = moments(f, g);
  CHECK(std::fabs(fm.rho - m.rho) < 1e-14);
  CHECK(std::fabs(fm.momentum[0] - m.momentum[0]) < 1e-13);
  CHECK(std::fabs(fm.momentum[1] - m.momentum[1]) < 1e-13);
  CHECK(std::fabs(fm.energy - m.energy) < 1e-13);
  for (double x : f) CHECK(x >= 0.0);
}

TEST_CASE("matched Maxwellian equals the independent discrete Maxwellian") {
  VelocityGrid g(2, 5.0, 20);
  const MomentSet m = MomentSet::from_primitive(2, 1.2, Vec{1.0, -0.5, 0.0}, 1.5);
  auto f = maxwellian(m, g);
  REQUIRE(match_conserved_moments(m, g, f));
  const auto ref = oracle::discrete_maxwellian(1.2, {1.0, -0.5, 0.0}, 1.5,
                                               oracle::nodes(2, 5.0, 20), g.weight(), 2);
  double err = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    err = std::max(err, std::fabs(f[k] - ref[k]));
    norm = std::max(norm, ref[k]);
  }
  CHECK(err / norm < 1e-10);
}

TEST_CASE("heat flux vanishes for a Maxwellian and flips with the mirror") {
  VelocityGrid g(2, 8.0, 32);
  const MomentSet m = MomentSet::from_primitive(2, 1.0, Vec{0.0, 0.0, 0.0}, 1.0);
  const auto f = maxwellian(m, g);
  const Vec q = heat_flux(f, moments(f, g), g, 0.1);
  CHECK(std::fabs(q[0]) < 1e-13);
  CHECK(std::fabs(q[1]) < 1e-13);

  std::vector<double> h(g.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = f[k] * (1.0 + 0.1 * g.node(k)[0]);
  std::vector<double> hm(g.size());
  for (std::size_t k = 0; k < h.size(); ++k) hm[k] = h[g.mirror(k)];
  const Vec a = heat_flux(h, moments(h, g), g, 1.0);
  const Vec b = heat_flux(hm, moments(hm, g), g, 1.0);
  CHECK(a[0] != 0.0);
  CHECK(a[0] == doctest::Approx(-b[0]).epsilon(1e-12));
}

TEST_CASE("velocity cutoff rule") {
  std::vector<MomentSet> s{MomentSet::from_primitive(2, 1.0, Vec{3.0, 4.0, 0.0}, 1.0),
                           MomentSet::from_primitive(2, 1.0, Vec{}, 4.0)};
  CHECK(velocity_cutoff(s) == doctest::Approx(16.0));
  CHECK(velocity_cutoff(s, 4.0) == doctest::Approx(9.0));
}

TEST_CASE("distribution field layout is cell-major") {
  DistributionField f(3, 4, 0.0);
  f(1, 2) = 5.0;
  CHECK(f.cell(1)[2] == 5.0);
  CHECK(f.values()[6] == 5.0);
  CHECK(as_vec(f.cell(2)).size() == 4);
}
