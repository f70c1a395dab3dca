#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "esbgk/core/diagnostics.hpp"
#include "esbgk/core/error.hpp"
#include "esbgk/core/summation.hpp"

using namespace esbgk;

TEST_CASE("run log requires increasing time") {
  RunLog log;
  RunLogRow r;
  r.t = 0.0;
  log.append(r);
  r.t = 0.1;
  log.append(r);
  CHECK(log.size() == 2);
  r.t = 0.1;
  CHECK_THROWS_AS(log.append(r), DomainError);
}

TEST_CASE("pairwise summation is exact on integers and close to long double") {
  std::vector<double> v(1000);
  long double ref = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = 1.0 / (1.0 + i);
    ref += v[i];
  }
  CHECK(std::fabs(pairwise_sum(v) - static_cast<double>(ref)) < 1e-14);
  std::vector<double> ones(777, 1.0);
  CHECK(pairwise_sum(ones) == 777.0);
}

TEST_CASE("equilibrium distance vanishes on Maxwellians and not on Gaussians") {
  SpatialGrid g(1, {4, 1}, {0.0, 0.0}, {1.0, 1.0});
  VelocityGrid vg(2, 8.0, 32);
  DistributionField f(g.size(), vg.size());
  const MomentSet m0 = MomentSet::from_primitive(2, 1.0, Vec{0.2, 0.0, 0.0}, 1.0);
  const auto mx = maxwellian(m0, vg);
  for (std::size_t c = 0; c < g.size(); ++c)
    for (std::size_t k = 0; k < vg.size(); ++k) f(c, k) = mx[k];
  auto m = moments(f, vg);
  CHECK(equilibrium_distance(f, m, g, vg) < 1e-8);

  Tensor t = Tensor::identity(2, 1.0);
  t(0, 0) = 1.5;
  t(1, 1) = 0.5;
  const auto ga = gaussian(m0, t, vg);
  for (std::size_t k = 0; k < vg.size(); ++k) f(1, k) = ga[k];
  m = moments(f, vg);
  CHECK(equilibrium_distance(f, m, g, vg) > 1e-2);
}

TEST_CASE("oscillation functional of the sine perturbation") {
  // rho = rho_bar (1 + A sin(pi x)) on [-1, 1]: E = 2 A rho_bar (2/pi) analytically.
  const int n = 400;
  SpatialGrid g(1, {n, 1}, {-1.0, 0.0}, {1.0, 1.0});
  std::vector<MomentSet> m;
  for (std::size_t c = 0; c < g.size(); ++c) {
    m.push_back(MomentSet::from_primitive(2, 2.0 * (1.0 + 0.5 * std::sin(M_PI * g.center(c)[0])),
                                          Vec{}, 1.0));
  }
  CHECK(oscillation_functional(m, 2.0, g) == doctest::Approx(2 * 0.5 * 2.0 * 2 / M_PI).epsilon(1e-4));
  std::vector<MomentSet> flat(n, MomentSet::from_primitive(2, 2.0, Vec{}, 1.0));
  CHECK(oscillation_functional(flat, 2.0, g) == 0.0);
}

TEST_CASE("conserved totals skip solid cells") {
  SpatialGrid g(2, {8, 8}, {-2.0, -2.0}, {2.0, 2.0});
  g.mask_disc({0.0, 0.0}, 1.0);
  std::vector<MomentSet> m(g.size(), MomentSet::from_primitive(2, 1.0, Vec{1.0, 0.0, 0.0}, 1.0));
  const Totals t = conserved_totals(m, g);
  const double vol = g.fluid_count() * g.cell_volume();
  CHECK(t.mass == doctest::Approx(vol));
  CHECK(t.momentum[0] == doctest::Approx(vol));
  CHECK(t.energy == doctest::Approx(vol * 0.5 * (1.0 + 2.0)));
}

TEST_CASE("global Maxwellian from totals") {
  VelocityGrid vg(2, 8.0, 32);
  Totals t;
  t.mass = 4.0;
  t.momentum = {2.0, 0.0, 0.0};
  t.energy = 0.5 * 4.0 * (0.25 + 2 * 0.375) * 2.0 / 2.0;
  const auto gm = global_maxwellian(t, 2.0, vg);
  CHECK(gm.state.rho == doctest::Approx(2.0));
  CHECK(gm.state.u[0] == doctest::Approx(0.5));
  CHECK(gm.state.T == doctest::Approx(0.375));
  CHECK(gm.mass_defect < 1e-12);
}

TEST_CASE("Mach number") {
  CHECK(mach_number(MomentSet::from_primitive(2, 1.0, Vec{}, 1.0)) == 0.0);
  CHECK(mach_number(MomentSet::from_primitive(2, 1.0, Vec{std::sqrt(2.0 * 1.3), 0.0, 0.0}, 1.3)) ==
        doctest::Approx(1.0));
  // inflow u = (M sqrt(2 T), 0), T = 1, M = 0.1, gamma = 2
  CHECK(mach_number(MomentSet::from_primitive(2, 1.0, Vec{0.1 * std::sqrt(2.0), 0.0, 0.0}, 1.0)) ==
        doctest::Approx(0.1));
  std::vector<MomentSet> m{MomentSet::from_primitive(3, 1.0, Vec{std::sqrt(5.0 / 3.0), 0.0, 0.0}, 1.0)};
  CHECK(mach_field(m)[0] == doctest::Approx(1.0));
}

TEST_CASE("rate of change and gradient fit") {
  SpatialGrid g(1, {3, 1}, {0.0, 0.0}, {1.0, 1.0});
  std::vector<MomentSet> a(3, MomentSet::from_primitive(2, 1.0, Vec{}, 1.0));
  auto b = a;
  b[1] = MomentSet::from_primitive(2, 1.1, Vec{}, 1.0);
  CHECK(rate_of_change(a, b, 0.5, g) == doctest::Approx(0.2).epsilon(1e-12));
  std::vector<double> grad{1.0, -2.0, 0.5};
  std::vector<double> resp{-3.0, 6.0, -1.5};
  CHECK(fit_gradient_law(resp, grad) == doctest::Approx(3.0));
  std::vector<double> sine(64);
  for (int i = 0; i < 64; ++i) sine[i] = std::sin(2 * M_PI * (i + 0.5) / 64);
  const auto d = periodic_derivative(sine, 1.0 / 64);
  CHECK(d[10] == doctest::Approx(2 * M_PI * std::cos(2 * M_PI * 10.5 / 64)).epsilon(1e-2));
}

TEST_CASE("non-equilibrium stress vanishes at equilibrium") {
  VelocityGrid vg(2, 10.0, 100);
  const MomentSet m = MomentSet::from_primitive(2, 1.0, Vec{0.3, 0.0, 0.0}, 1.0);
  const auto f = maxwellian(m, vg);
  const Tensor s = non_equilibrium_stress(f, moments(f, vg), vg, 1e-3);
  CHECK(std::fabs(s(0, 1)) < 1e-8);
  CHECK(std::fabs(s(0, 0)) < 1e-6);
}
