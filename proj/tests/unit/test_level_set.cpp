#include "cutfem/level_set.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cutfem;

TEST_CASE("circle level set") {
  const LevelSet c = make_circle(1.0 / 3.0, Side::minus);
  CHECK(std::abs(c(Point(1.0 / 3.0, 0.0))) < 1e-15);
  CHECK(c(Point(0.0, 0.0)) == doctest::Approx(-1.0 / 3.0));
  CHECK(c.side_of(Point(0.0, 0.0)) == Side::minus);
  CHECK(c.side_of(Point(0.9, 0.0)) == Side::plus);
  const LevelSet r = c.with_inclusion(Side::plus);
  CHECK(r.side_of(Point(0.0, 0.0)) == Side::plus);
  CHECK_THROWS_AS(make_circle(0.0, Side::minus), ConfigError);
  CHECK_THROWS_AS(make_circle(1.0, Side::minus), ConfigError);
  CHECK_THROWS_AS(make_circle(-0.2, Side::minus), ConfigError);
}

TEST_CASE("flower level set") {
  const LevelSet f = make_flower();
  CHECK(f.inclusion() == Side::minus);
  CHECK(std::abs(f(Point(1.0 / 18.0, 0.0))) < 1e-15);
  CHECK(f(Point(0.0, 0.0)) == doctest::Approx(-1.0 / 18.0));
  // analytic gradient agrees with central differences away from the origin
  const Point x(0.13, -0.21);
  const double d = 1e-6;
  const Point fd((f(x + Point(d, 0)) - f(x - Point(d, 0))) / (2 * d), (f(x + Point(0, d)) - f(x - Point(0, d))) / (2 * d));
  CHECK((f.gradient(x) - fd).norm() < 1e-6);
}

TEST_CASE("finite-difference gradient fallback") {
  const LevelSet ls("ellipse", [](const Point& x) { return x.x() * x.x() + 4 * x.y() * x.y() - 0.25; }, {}, Side::minus);
  const Point x(0.2, 0.1);
  CHECK((ls.gradient(x) - Point(0.4, 0.8)).norm() < 1e-6);
}

TEST_CASE("edge roots") {
  const LevelSet c = make_circle(1.0 / 3.0, Side::minus);
  const auto root = edge_root(c, Point(0.0, 0.0), Point(1.0, 0.0));
  REQUIRE(root);
  CHECK(std::abs(root->x() - 1.0 / 3.0) < 1e-13);
  CHECK(std::abs(root->y()) < 1e-15);
  CHECK_FALSE(edge_root(c, Point(0.5, 0.0), Point(1.0, 0.0)));
  CHECK_FALSE(edge_root(c, Point(-0.1, 0.0), Point(0.1, 0.0)));
  // two crossings on one edge
  CHECK_THROWS_AS(edge_root(c, Point(-1.0, 0.0), Point(1.0, 0.0)), CoarseMeshError);
  CHECK(scan_edge(c, Point(-1.0, 0.0), Point(1.0, 0.0)).sign_changes == 2);
  const LevelSet line = make_vertical_line(0.25, Side::minus);
  const auto r2 = edge_root(line, Point(-1.0, 0.3), Point(1.0, 0.3));
  REQUIRE(r2);
  CHECK(std::abs(line(*r2)) <= 1e-13);
}

TEST_CASE("closest point and reflection") {
  const LevelSet c = make_circle(1.0 / 3.0, Side::minus);
  const Point y = reflect(c, Point(0.4, 0.0));
  CHECK(y.x() == doctest::Approx(2.0 / 3.0 - 0.4).epsilon(1e-12));
  CHECK(std::abs(y.y()) < 1e-14);
  CHECK((closest_point(c, Point(0.0, 0.3)) - Point(0.0, 1.0 / 3.0)).norm() < 1e-12);
  CHECK_THROWS_AS(reflect(c, Point(0.6, 0.0)), GeometryError);
  const Point on(0.0, -1.0 / 3.0);
  CHECK((reflect(c, on) - on).norm() < 1e-14);
}

TEST_CASE("reflection is an involution and swaps sides") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-0.09, 0.09);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const LevelSet c = make_circle(0.4, Side::minus);
  for (int k = 0; k < 200; ++k) {
    const double s = angle(rng);
    const double d = dist(rng);
    const Point x = (0.4 + d) * Point(std::cos(s), std::sin(s));
    const Point y = reflect(c, x);
    CHECK((reflect(c, y) - x).norm() < 1e-10);
    CHECK(c(y) == doctest::Approx(-c(x)).epsilon(1e-9));
  }
  const LevelSet f = make_flower();
  const Point on = Point(1.0 / 18.0 + 0.2 * std::sin(5 * 0.2), 0.0).norm() * Point(std::cos(0.2), std::sin(0.2));
  const Point x = on * 1.05;
  const Point y = reflect(f, x);
  CHECK(f(x) * f(y) < 0.0);
  CHECK((reflect(f, y) - x).norm() < 1e-8);
  const Point foot = closest_point(f, x);
  CHECK(std::abs((x - foot).normalized().dot(f.gradient(foot).normalized())) == doctest::Approx(1.0).epsilon(1e-10));
}
