#include "cutfem/harness.hpp"
#include "cutfem/norms.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace cutfem;

TEST_CASE("experimental order of convergence") {
  const std::vector<double> e{4.0, 1.0};
  const std::vector<double> h{2.0, 1.0};
  const auto r = eoc(e, h);
  REQUIRE(r.size() == 1);
  REQUIRE(r[0]);
  CHECK(*r[0] == doctest::Approx(2.0));

  const std::vector<double> e2{1.9e-2, 6.2e-3};
  const std::vector<double> h2{0.5, 0.25};
  CHECK(*eoc(e2, h2)[0] == doctest::Approx(1.615).epsilon(2e-3));

  const std::vector<double> z{1.0, 0.0};
  CHECK_FALSE(eoc(z, h)[0]);
  const std::vector<double> same{1.0, 1.0};
  CHECK_FALSE(eoc(e, same)[0]);
  CHECK(eoc(std::vector<double>{1.0}, std::vector<double>{1.0}).empty());
}

TEST_CASE("interpolant of a linear solution has zero error") {
  const Example ex = make_linear_patch(Side::minus);
  const Discretization disc(2, ex);
  const FieldPair u = interpolate(disc.layout, ex.problem.exact->value[0], ex.problem.exact->value[1]);
  const ErrorReport r = error_report(ex.problem, u);
  CHECK(r.e0 < 1e-13);
  CHECK(r.einf < 1e-13);
  CHECK(r.eflux < 1e-12);
  CHECK(r.vnorm < 1e-12);
  CHECK(r.vanorm < 1e-12);
  CHECK(r.h == doctest::Approx(disc.mesh.h()));
}

TEST_CASE("norms of a known error") {
  // zero discrete field against u = r^2/rho^- inside and a shifted branch outside
  const Example ex = make_example1(2.0, 2.0, Side::minus);
  const Discretization disc(3, ex);
  const FieldPair zero(disc.layout);
  const ErrorReport r = error_report(ex.problem, zero);
  // u = r^2/2 on the whole square when rho^- = rho^+: ||u||^2 = int r^4/4 = 28/45
  CHECK(r.e0 == doctest::Approx(std::sqrt(28.0 / 45.0)).epsilon(1e-6));
  // rho grad u = 2x: ||2x||^2 = 4 int r^2 = 32/3
  CHECK(r.eflux == doctest::Approx(std::sqrt(32.0 / 3.0)).epsilon(1e-6));
  CHECK(r.esqrt == doctest::Approx(r.eflux / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.einf == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.efluxinf == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("error report requires an exact solution") {
  Example ex = make_linear_patch(Side::minus);
  ex.problem.exact.reset();
  const Discretization disc(1, ex);
  CHECK_THROWS_AS(error_report(ex.problem, FieldPair(disc.layout)), ConfigError);
}

TEST_CASE("augmented norm dominates the energy norm") {
  const Example ex = make_example1(1.0, 100.0, Side::minus);
  const Discretization disc(2, ex);
  const FieldPair v = interpolate(disc.layout, ex.problem.exact->value[0], ex.problem.exact->value[1]);
  const double a = energy_error(ex.problem, v, false);
  const double b = energy_error(ex.problem, v, true);
  CHECK(a > 0.0);
  CHECK(b >= a);
}
