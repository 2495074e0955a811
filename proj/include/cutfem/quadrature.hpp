#pragma once

#include "cutfem/common.hpp"

#include <array>
#include <span>
#include <vector>

namespace cutfem {

struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
  double measure() const;
  void append(const QuadratureRule& other);
};

/// Accuracy of triangle rules.
enum class TriangleRule {
  mid_edge,  ///< 3 points, exact for quadratics
  degree5,   ///< 7-point Radon rule, exact for quintics
};

/// Rule mapped onto triangle (a,b,c). Degenerate triangles give an empty rule.
QuadratureRule triangle_rule(const Point& a, const Point& b, const Point& c, TriangleRule kind = TriangleRule::mid_edge);

/// Fan triangulation of a convex polygon listed counterclockwise.
QuadratureRule polygon_rule(std::span<const Point> polygon, TriangleRule kind = TriangleRule::mid_edge);

/// Gauss-Legendre rule with `points` nodes (1..4) on the segment [a,b].
QuadratureRule segment_rule(const Point& a, const Point& b, int points = 2);

/// Signed (shoelace) area of a polygon.
double polygon_area(std::span<const Point> polygon);

}  // namespace cutfem
