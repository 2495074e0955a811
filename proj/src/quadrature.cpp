#include "cutfem/quadrature.hpp"

#include <cmath>
#include <numeric>

namespace cutfem {

double QuadratureRule::measure() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

void QuadratureRule::append(const QuadratureRule& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

double polygon_area(std::span<const Point> polygon) {
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point& p = polygon[i];
    const Point& q = polygon[(i + 1) % polygon.size()];
    twice += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * twice;
}

QuadratureRule triangle_rule(const Point& a, const Point& b, const Point& c, TriangleRule kind) {
  QuadratureRule rule;
  const Point u = b - a;
  const Point v = c - a;
  const double area = 0.5 * std::abs(u.x() * v.y() - u.y() * v.x());
  if (!(area > 0.0)) return rule;

  auto add = [&](double l1, double l2, double weight) {
    rule.points.push_back(a + l1 * u + l2 * v);
    rule.weights.push_back(weight * area);
  };

  switch (kind) {
    case TriangleRule::mid_edge:
      add(0.5, 0.0, 1.0 / 3.0);
      add(0.5, 0.5, 1.0 / 3.0);
      add(0.0, 0.5, 1.0 / 3.0);
      break;
    case TriangleRule::degree5: {
      const double s15 = std::sqrt(15.0);
      const double a1 = (6.0 - s15) / 21.0;
      const double b1 = (9.0 + 2.0 * s15) / 21.0;
      const double a2 = (6.0 + s15) / 21.0;
      const double b2 = (9.0 - 2.0 * s15) / 21.0;
      const double w1 = (155.0 - s15) / 1200.0;
      const double w2 = (155.0 + s15) / 1200.0;
      add(1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0);
      add(a1, a1, w1);
      add(b1, a1, w1);
      add(a1, b1, w1);
      add(a2, a2, w2);
      add(b2, a2, w2);
      add(a2, b2, w2);
      break;
    }
  }
  return rule;
}

QuadratureRule polygon_rule(std::span<const Point> polygon, TriangleRule kind) {
  QuadratureRule rule;
  for (std::size_t k = 1; k + 1 < polygon.size(); ++k) rule.append(triangle_rule(polygon[0], polygon[k], polygon[k + 1], kind));
  return rule;
}

QuadratureRule segment_rule(const Point& a, const Point& b, int points) {
  static const std::array<std::vector<double>, 4> nodes = {
      std::vector<double>{0.0},
      std::vector<double>{-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)},
      std::vector<double>{-std::sqrt(0.6), 0.0, std::sqrt(0.6)},
      std::vector<double>{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526}};
  static const std::array<std::vector<double>, 4> weights = {
      std::vector<double>{2.0}, std::vector<double>{1.0, 1.0}, std::vector<double>{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0},
      std::vector<double>{0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538}};
  if (points < 1 || points > 4) throw std::invalid_argument("segment rule supports 1..4 points");

  QuadratureRule rule;
  const double half = 0.5 * (b - a).norm();
  const auto& xi = nodes[static_cast<std::size_t>(points - 1)];
  const auto& w = weights[static_cast<std::size_t>(points - 1)];
  for (std::size_t k = 0; k < xi.size(); ++k) {
    rule.points.push_back(0.5 * (a + b) + 0.5 * xi[k] * (b - a));
    rule.weights.push_back(w[k] * half);
  }
  return rule;
}

}  // namespace cutfem
