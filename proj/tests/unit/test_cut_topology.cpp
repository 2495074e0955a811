#include "cutfem/cut_topology.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace cutfem;

TEST_CASE("single cut element: clipping, chord and normal") {
  // one cell; x = 0 cuts both triangles (reference-triangle clipping scaled by 2)
  const Mesh m(1);
  const CutTopology topo(m, make_vertical_line(0.0, Side::minus));
  REQUIRE(topo.cut_elements().size() == 2);
  const Index lower = 0;  // (-1,-1), (1,-1), (1,1)
  REQUIRE(topo.is_cut(lower));
  CHECK(topo.part_area(lower, Side::minus) == doctest::Approx(0.5));
  CHECK(topo.part_area(lower, Side::plus) == doctest::Approx(1.5));
  const CutGeometry& g = topo.geometry(lower);
  const std::set<std::pair<double, double>> ends{{g.chord[0].x(), g.chord[0].y()}, {g.chord[1].x(), g.chord[1].y()}};
  CHECK(ends == std::set<std::pair<double, double>>{{0.0, -1.0}, {0.0, 0.0}});
  CHECK(g.chord_length() == doctest::Approx(1.0));
  CHECK((g.normal_minus - Point(1.0, 0.0)).norm() < 1e-14);

  const auto iq = interface_quadrature(topo, lower, 2);
  CHECK(iq.rule.measure() == doctest::Approx(1.0));
  for (const Point& p : iq.rule.points) CHECK(std::abs(p.x()) < 1e-15);
  CHECK(cut_volume_quadrature(topo, lower, Side::minus).measure() == doctest::Approx(0.5));
  CHECK(cut_volume_quadrature(topo, lower, Side::plus, TriangleRule::degree5).measure() == doctest::Approx(1.5));
}

TEST_CASE("uncut classification and quadrature preconditions") {
  const Mesh m(4);
  const CutTopology topo(m, make_vertical_line(-0.5, Side::minus));  // x = -0.5 runs along mesh lines
  CHECK(topo.cut_elements().empty());
  CHECK(topo.elements(Side::minus).size() + topo.elements(Side::plus).size() == static_cast<std::size_t>(m.num_elements()));
  const Index t_plus = topo.elements(Side::plus).front();
  CHECK_THROWS_AS(cut_volume_quadrature(topo, t_plus, Side::minus), std::invalid_argument);
  CHECK(cut_volume_quadrature(topo, t_plus, Side::plus).measure() == doctest::Approx(m.area(t_plus)));
  CHECK(topo.ghost_edges(Side::minus).empty());
}

TEST_CASE("partition of the square and cut geometry consistency") {
  for (int level : {1, 2, 3}) {
    const Mesh m = build_mesh(level);
    const LevelSet ls = make_circle(1.0 / 3.0, Side::minus);
    const CutTopology topo(m, ls);
    double total = 0.0;
    for (Index t = 0; t < m.num_elements(); ++t)
      for (Side s : {Side::minus, Side::plus}) total += topo.part_area(t, s);
    CHECK(std::abs(total - 4.0) < 1e-10);
    for (Index t : topo.cut_elements()) {
      const CutGeometry& g = topo.geometry(t);
      CHECK(topo.part_area(t, Side::minus) + topo.part_area(t, Side::plus) == doctest::Approx(m.area(t)).epsilon(1e-12));
      for (const Point& p : g.chord) CHECK(std::abs(ls(p)) < 1e-12);
      CHECK(g.normal_minus.dot(ls.gradient(0.5 * (g.chord[0] + g.chord[1]))) > 0.0);
      CHECK(topo.touches(t, Side::minus));
      CHECK(topo.touches(t, Side::plus));
    }
  }
}

TEST_CASE("circle area and perimeter converge at second order") {
  const double area = std::numbers::pi / 9.0;
  const double perimeter = 2.0 * std::numbers::pi / 3.0;
  std::vector<double> ea, ep;
  for (int level = 1; level <= 5; ++level) {
    const Mesh m = build_mesh(level);
    const CutTopology topo(m, make_circle(1.0 / 3.0, Side::minus));
    double a = 0.0, p = 0.0;
    for (Index t : topo.elements(Side::minus)) a += topo.part_area(t, Side::minus);
    for (Index t : topo.cut_elements()) p += topo.geometry(t).chord_length();
    ea.push_back(std::abs(a - area));
    ep.push_back(std::abs(p - perimeter));
  }
  // least-squares slope of log2(error) against level; the first step is preasymptotic
  const auto slope = [](const std::vector<double>& e) {
    const double n = static_cast<double>(e.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      const double x = static_cast<double>(k), y = std::log2(e[k]);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  CHECK(slope(ea) >= 1.8);
  CHECK(slope(ep) >= 1.8);
}

TEST_CASE("ghost edges match the brute-force predicate") {
  const Mesh m = build_mesh(2);
  for (Side inclusion : {Side::minus, Side::plus}) {
    const CutTopology topo(m, make_circle(0.41, inclusion));
    for (Side s : {Side::minus, Side::plus}) {
      std::set<Index> want;
      for (Index e = 0; e < m.num_edges(); ++e) {
        const Edge& edge = m.edge(e);
        if (edge.is_boundary()) continue;
        const Index a = edge.elements[0], b = edge.elements[1];
        if (topo.touches(a, s) && topo.touches(b, s) && (topo.is_cut(a) || topo.is_cut(b))) want.insert(e);
      }
      const auto& got = topo.ghost_edges(s);
      CHECK(std::set<Index>(got.begin(), got.end()) == want);
      const auto list = ghost_edges(topo, s);
      CHECK(list.size() == want.size());
    }
  }
}

TEST_CASE("element side lists") {
  const Mesh m = build_mesh(1);
  const CutTopology topo(m, make_circle(1.0 / 3.0, Side::minus));
  std::size_t cut_in_minus = 0;
  for (Index t : topo.elements(Side::minus)) cut_in_minus += topo.is_cut(t) ? 1 : 0;
  CHECK(cut_in_minus == topo.cut_elements().size());
  CHECK(topo.kind(m.locate(Point(0.01, 0.003))) == ElementKind::minus);
  CHECK(topo.kind(m.locate(Point(0.9, 0.9))) == ElementKind::plus);
}

TEST_CASE("strict classification rejects multi-root edges") {
  const Mesh m(2);  // cell size 1; circle of radius 0.3 around (0.5,0) is crossed twice by the edge y = 0
  const LevelSet ls("small", [](const Point& x) { return (x - Point(0.5, 0.0)).norm() - 0.3; }, {}, Side::minus);
  CHECK_THROWS_AS(CutTopology(m, ls), CoarseMeshError);
  const CutTopology lenient(m, ls, ClassifyOptions{false});
  CHECK_FALSE(lenient.ambiguous_elements().empty());
}

TEST_CASE("flower classification is non-strict") {
  const Mesh m = build_mesh(2);
  const CutTopology topo(m, make_flower(), ClassifyOptions{false});
  CHECK_FALSE(topo.cut_elements().empty());
  double total = 0.0;
  for (Index t = 0; t < m.num_elements(); ++t)
    for (Side s : {Side::minus, Side::plus}) total += topo.part_area(t, s);
  CHECK(std::abs(total - 4.0) < 1e-10);
}
