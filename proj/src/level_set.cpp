#include "cutfem/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace cutfem {

namespace {

constexpr double kDomainDiameter = 2.0 * std::numbers::sqrt2;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

Point central_difference(const LevelSet::ScalarFn& phi, const Point& x) {
  const double step = 1e-6 * kDomainDiameter;
  const Point dx(step, 0.0);
  const Point dy(0.0, step);
  return Point(phi(x + dx) - phi(x - dx), phi(x + dy) - phi(x - dy)) / (2.0 * step);
}

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p.x() << ", " << p.y() << ')';
  return os.str();
}

}  // namespace

LevelSet::LevelSet(std::string name, ScalarFn phi, GradientFn gradient, Side inclusion)
    : name_(std::move(name)), phi_(std::move(phi)), gradient_(std::move(gradient)), inclusion_(inclusion) {
  if (!phi_) throw ConfigError("level set needs a phi function");
}

Point LevelSet::gradient(const Point& x) const {
  if (gradient_) return gradient_(x);
  return central_difference(phi_, x);
}

LevelSet LevelSet::with_inclusion(Side inclusion) const {
  LevelSet copy = *this;
  copy.inclusion_ = inclusion;
  return copy;
}

LevelSet make_circle(double radius, Side inclusion) {
  if (!(radius > 0.0 && radius < 1.0)) throw ConfigError("circle radius must lie in (0,1)");
  auto phi = [radius](const Point& x) { return x.norm() - radius; };
  auto grad = [](const Point& x) -> Point {
    const double r = x.norm();
    if (r == 0.0) return Point(1.0, 0.0);
    return x / r;
  };
  return LevelSet("circle", phi, grad, inclusion);
}

LevelSet make_flower() {
  auto phi = [](const Point& x) {
    if (x.x() == 0.0 && x.y() == 0.0) return -1.0 / 18.0;
    const double s = std::atan2(x.y(), x.x());
    return x.norm() - (1.0 / 18.0 + 0.2 * std::sin(5.0 * s));
  };
  auto grad = [](const Point& x) -> Point {
    const double r2 = x.squaredNorm();
    if (r2 == 0.0) return Point(1.0, 0.0);
    const double r = std::sqrt(r2);
    const double s = std::atan2(x.y(), x.x());
    // d/dx of atan2(y,x) = -y/r^2, d/dy = x/r^2
    const double dr_ds = std::cos(5.0 * s);
    return Point(x.x() / r + dr_ds * x.y() / r2, x.y() / r - dr_ds * x.x() / r2);
  };
  return LevelSet("flower", phi, grad, Side::minus);
}

LevelSet make_vertical_line(double offset, Side inclusion) {
  auto phi = [offset](const Point& x) { return x.x() - offset; };
  auto grad = [](const Point&) { return Point(1.0, 0.0); };
  return LevelSet("line", phi, grad, inclusion);
}

EdgeScan scan_edge(const LevelSet& ls, const Point& a, const Point& b) {
  constexpr int kInterior = 32;
  constexpr int kSamples = kInterior + 2;
  std::vector<double> values(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    const double t = static_cast<double>(k) / (kSamples - 1);
    values[static_cast<std::size_t>(k)] = ls(a + t * (b - a));
  }

  EdgeScan scan;
  int last_sign = 0;
  for (double v : values) {
    const int s = sign_of(v);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++scan.sign_changes;
    last_sign = s;
  }

  const int sa = sign_of(values.front());
  const int sb = sign_of(values.back());
  if (sa == 0) {
    scan.root = a;
    return scan;
  }
  if (sb == 0) {
    scan.root = b;
    return scan;
  }
  if (sa == sb) return scan;

  // first bracket with strictly opposite signs
  int k = 0;
  while (!(sign_of(values[static_cast<std::size_t>(k)]) != 0 &&
           sign_of(values[static_cast<std::size_t>(k + 1)]) == -sign_of(values[static_cast<std::size_t>(k)]))) {
    if (values[static_cast<std::size_t>(k + 1)] == 0.0) {
      scan.root = a + (static_cast<double>(k + 1) / (kSamples - 1)) * (b - a);
      return scan;
    }
    ++k;
  }
  double lo = static_cast<double>(k) / (kSamples - 1);
  double hi = static_cast<double>(k + 1) / (kSamples - 1);
  const int s_lo = sign_of(values[static_cast<std::size_t>(k)]);
  const double length = (b - a).norm();

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Point x = a + mid * (b - a);
    const double v = ls(x);
    if (std::abs(v) <= 1e-13 || (hi - lo) * length <= 1e-14) {
      scan.root = x;
      return scan;
    }
    if (sign_of(v) == s_lo)
      lo = mid;
    else
      hi = mid;
  }
  throw NumericalError("edge root bisection did not converge on " + format_point(a) + " -> " + format_point(b));
}

std::optional<Point> edge_root(const LevelSet& ls, const Point& a, const Point& b) {
  EdgeScan scan = scan_edge(ls, a, b);
  if (scan.sign_changes > 1)
    throw CoarseMeshError("h too coarse for this interface: edge " + format_point(a) + " -> " + format_point(b) +
                          " crosses it " + std::to_string(scan.sign_changes) + " times");
  return scan.root;
}

namespace {

// Newton projection onto {phi = 0} along grad phi.
std::optional<Point> project(const LevelSet& ls, Point y, const ReflectOptions& options) {
  for (int it = 0; it <= options.max_iterations; ++it) {
    const double v = ls(y);
    if (std::abs(v) <= options.tolerance) return y;
    if (it == options.max_iterations) break;
    const Point g = ls.gradient(y);
    const double g2 = g.squaredNorm();
    if (g2 == 0.0) break;
    y -= v * g / g2;
  }
  return std::nullopt;
}

}  // namespace

Point closest_point(const LevelSet& ls, const Point& x, const ReflectOptions& options) {
  auto y = project(ls, x, options);
  if (!y) throw GeometryError("closest-point projection did not converge for " + format_point(x));
  // The gradient projection lands on the curve but not at the foot of the
  // normal unless phi is a distance function. Slide along the tangent until
  // x - y is normal to the curve.
  const double scale = std::max((x - *y).norm(), 1e-300);
  for (int it = 0; it < options.max_iterations; ++it) {
    const Point g = ls.gradient(*y);
    const Point t = Point(-g.y(), g.x()).normalized();
    const double slide = (x - *y).dot(t);
    if (std::abs(slide) <= 1e-13 * std::max(scale, 1.0)) break;
    auto next = project(ls, *y + slide * t, options);
    if (!next) throw GeometryError("closest-point projection did not converge for " + format_point(x));
    y = next;
  }
  if ((*y - x).norm() > options.tube_width)
    throw GeometryError("point " + format_point(x) + " lies outside the reflection tube");
  return *y;
}

Point reflect(const LevelSet& ls, const Point& x, const ReflectOptions& options) {
  const Point on_curve = closest_point(ls, x, options);
  return 2.0 * on_curve - x;
}

}  // namespace cutfem
