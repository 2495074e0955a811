#pragma once

#include "cutfem/cut_topology.hpp"
#include "cutfem/space.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <optional>
#include <string>

namespace cutfem {

using HessianField = std::function<Eigen::Matrix2d(const Point&)>;
/// Flux-jump data; receives the point and the unit normal pointing out of Omega^-.
using NormalField = std::function<double(const Point&, const Point&)>;

enum class Weighting { minus_sided, harmonic };

std::string_view to_string(Weighting w) noexcept;
Weighting weighting_from_string(std::string_view name);

/// Closed-form solution, one globally defined branch per side.
struct ExactSolution {
  std::array<ScalarField, 2> value;
  std::array<VectorField, 2> gradient;
  std::array<HessianField, 2> hessian;  // optional

  double u(Side s, const Point& x) const { return value[static_cast<std::size_t>(index_of(s))](x); }
  Point grad(Side s, const Point& x) const { return gradient[static_cast<std::size_t>(index_of(s))](x); }
  bool has_hessian() const { return hessian[0] && hessian[1]; }
};

/// Coefficients, penalties and data of one interface problem.
struct ProblemSpec {
  double rho_minus = 1.0;
  double rho_plus = 1.0;
  double gamma = 10.0;
  double gamma_g_minus = 10.0;
  double gamma_g_plus = 10.0;
  Weighting weighting = Weighting::minus_sided;

  std::array<ScalarField, 2> source;  // f^-, f^+
  ScalarField alpha;                  // [u] on Gamma, empty means zero
  NormalField beta;                   // [rho grad u . n] on Gamma, empty means zero
  ScalarField dirichlet;              // outer boundary data, empty means zero
  std::optional<ExactSolution> exact;

  double rho(Side s) const { return s == Side::minus ? rho_minus : rho_plus; }
  double gamma_g(Side s) const { return s == Side::minus ? gamma_g_minus : gamma_g_plus; }
  const ScalarField& f(Side s) const { return source[static_cast<std::size_t>(index_of(s))]; }

  /// Interface weights (w_-, w_+).
  std::array<double, 2> weights() const;
  /// Coefficient rho~ of the interface penalty.
  double penalty_rho() const;

  /// Throws ConfigError on non-positive coefficients or negative penalties.
  void validate() const;
};

/// A ready-to-run configuration: interface, data and classification policy.
struct Example {
  std::string name;
  LevelSet level_set;
  ProblemSpec problem;
  ClassifyOptions classify;
};

/// r^2/rho^- inside the circle of radius R, r^2/rho^+ + R^2 (1/rho^- - 1/rho^+)
/// outside it, with zero interface jumps.
Example make_example1(double rho_minus, double rho_plus, Side inclusion, double radius = 1.0 / 3.0);

/// Flower interface, u^- = r^4/rho^-, u^+ = x2 r/rho^+, with the resulting
/// nonzero solution and flux jumps.
Example make_example2(double rho_minus, double rho_plus);

/// Globally linear u = 1 + x1 + 2 x2 on both sides of a circle.
Example make_linear_patch(Side inclusion = Side::minus, double radius = 1.0 / 3.0);

}  // namespace cutfem
