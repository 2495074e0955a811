#pragma once

#include "cutfem/common.hpp"

#include <functional>
#include <optional>
#include <string>

namespace cutfem {

/// Signed scalar description of the interface. phi < 0 in the region enclosed
/// by the interface, phi > 0 outside. `inclusion` names the physical
/// subdomain occupying the enclosed region.
class LevelSet {
 public:
  using ScalarFn = std::function<double(const Point&)>;
  using GradientFn = std::function<Point(const Point&)>;

  /// A missing gradient is replaced by central differences.
  LevelSet(std::string name, ScalarFn phi, GradientFn gradient, Side inclusion);

  double operator()(const Point& x) const { return phi_(x); }
  Point gradient(const Point& x) const;

  Side inclusion() const noexcept { return inclusion_; }
  const std::string& name() const noexcept { return name_; }

  /// Physical subdomain containing x (points on the interface count as enclosed).
  Side side_of(const Point& x) const { return phi_(x) <= 0.0 ? inclusion_ : other(inclusion_); }
  /// Physical subdomain of the phi < 0 region.
  Side inside_side() const noexcept { return inclusion_; }

  LevelSet with_inclusion(Side inclusion) const;

 private:
  std::string name_;
  ScalarFn phi_;
  GradientFn gradient_;
  Side inclusion_;
};

/// phi(x) = |x| - radius.
LevelSet make_circle(double radius, Side inclusion);

/// Five-lobed flower |x| = 1/18 + 0.2 sin(5 atan2(x2, x1)), Omega^- inside.
/// phi(0) is fixed to -1/18.
LevelSet make_flower();

/// Half-plane phi(x) = x1 - offset. Not a closed curve; used by tests.
LevelSet make_vertical_line(double offset, Side inclusion);

/// Result of sampling phi along a segment.
struct EdgeScan {
  std::optional<Point> root;
  int sign_changes = 0;
};

/// Samples phi at 32 interior points of [a,b] and bisects the first bracket.
/// Never throws on multiple crossings; the caller inspects `sign_changes`.
EdgeScan scan_edge(const LevelSet& ls, const Point& a, const Point& b);

/// Interface crossing on [a,b] when the endpoint signs differ, found by
/// bisection. Throws CoarseMeshError if the segment crosses more than once.
std::optional<Point> edge_root(const LevelSet& ls, const Point& a, const Point& b);

struct ReflectOptions {
  double tube_width = 0.1;
  int max_iterations = 50;
  double tolerance = 1e-12;
};

/// Closest point on the interface, by repeated projection along grad phi.
Point closest_point(const LevelSet& ls, const Point& x, const ReflectOptions& options = {});

/// Mirror image of x across the interface: 2 x_Gamma - x.
Point reflect(const LevelSet& ls, const Point& x, const ReflectOptions& options = {});

}  // namespace cutfem
