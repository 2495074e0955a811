#include "cutfem/problem.hpp"

#include <cmath>

namespace cutfem {

std::string_view to_string(Weighting w) noexcept { return w == Weighting::minus_sided ? "minus_sided" : "harmonic"; }

Weighting weighting_from_string(std::string_view name) {
  if (name == "minus_sided" || name == "minus" || name == "one_sided") return Weighting::minus_sided;
  if (name == "harmonic") return Weighting::harmonic;
  throw ConfigError("unknown weighting '" + std::string(name) + "' (expected minus_sided|harmonic)");
}

std::array<double, 2> ProblemSpec::weights() const {
  if (weighting == Weighting::minus_sided) return {1.0, 0.0};
  const double w_minus = rho_plus / (rho_plus + rho_minus);
  return {w_minus, 1.0 - w_minus};
}

double ProblemSpec::penalty_rho() const {
  if (weighting == Weighting::minus_sided) return rho_minus;
  return 2.0 * rho_plus * rho_minus / (rho_plus + rho_minus);
}

void ProblemSpec::validate() const {
  if (!(rho_minus > 0.0) || !(rho_plus > 0.0)) throw ConfigError("diffusion coefficients must be positive");
  if (!(gamma > 0.0)) throw ConfigError("interface penalty gamma must be positive");
  if (!(gamma_g_minus >= 0.0) || !(gamma_g_plus >= 0.0)) throw ConfigError("ghost penalties must be non-negative");
}

Example make_example1(double rho_minus, double rho_plus, Side inclusion, double radius) {
  const double shift = radius * radius * (1.0 / rho_minus - 1.0 / rho_plus);
  ExactSolution exact;
  exact.value[0] = [=](const Point& x) { return x.squaredNorm() / rho_minus; };
  exact.value[1] = [=](const Point& x) { return x.squaredNorm() / rho_plus + shift; };
  exact.gradient[0] = [=](const Point& x) -> Point { return 2.0 * x / rho_minus; };
  exact.gradient[1] = [=](const Point& x) -> Point { return 2.0 * x / rho_plus; };
  exact.hessian[0] = [=](const Point&) -> Eigen::Matrix2d { return 2.0 / rho_minus * Eigen::Matrix2d::Identity(); };
  exact.hessian[1] = [=](const Point&) -> Eigen::Matrix2d { return 2.0 / rho_plus * Eigen::Matrix2d::Identity(); };

  ProblemSpec p;
  p.rho_minus = rho_minus;
  p.rho_plus = rho_plus;
  // -div(rho grad r^2/rho) = -4 on both sides
  p.source = {[](const Point&) { return -4.0; }, [](const Point&) { return -4.0; }};
  p.dirichlet = exact.value[static_cast<std::size_t>(index_of(other(inclusion)))];
  p.exact = std::move(exact);

  return {"example1", make_circle(radius, inclusion), std::move(p), ClassifyOptions{}};
}

Example make_example2(double rho_minus, double rho_plus) {
  ExactSolution exact;
  exact.value[0] = [=](const Point& x) {
    const double r2 = x.squaredNorm();
    return r2 * r2 / rho_minus;
  };
  exact.value[1] = [=](const Point& x) { return x.y() * x.norm() / rho_plus; };
  exact.gradient[0] = [=](const Point& x) -> Point { return 4.0 * x.squaredNorm() * x / rho_minus; };
  exact.gradient[1] = [=](const Point& x) -> Point {
    const double r = x.norm();
    if (r == 0.0) return Point::Zero();
    return Point(x.x() * x.y() / r, r + x.y() * x.y() / r) / rho_plus;
  };
  exact.hessian[0] = [=](const Point& x) -> Eigen::Matrix2d {
    return (4.0 * x.squaredNorm() * Eigen::Matrix2d::Identity() + 8.0 * x * x.transpose()) / rho_minus;
  };
  exact.hessian[1] = [=](const Point& x) -> Eigen::Matrix2d {
    const double r = x.norm();
    Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
    if (r == 0.0) return H;
    const double r3 = r * r * r;
    const double X = x.x();
    const double Y = x.y();
    H(0, 0) = Y * Y * Y / r3;
    H(0, 1) = H(1, 0) = X * X * X / r3;
    H(1, 1) = 3.0 * Y / r - Y * Y * Y / r3;
    return H / rho_plus;
  };

  ProblemSpec p;
  p.rho_minus = rho_minus;
  p.rho_plus = rho_plus;
  p.source[0] = [](const Point& x) { return -16.0 * x.squaredNorm(); };
  p.source[1] = [](const Point& x) {
    const double r = x.norm();
    return r == 0.0 ? 0.0 : -3.0 * x.y() / r;
  };
  p.alpha = [v = exact.value](const Point& x) { return v[1](x) - v[0](x); };
  p.beta = [g = exact.gradient, rho_minus, rho_plus](const Point& x, const Point& n) {
    return (rho_minus * g[0](x) - rho_plus * g[1](x)).dot(n);
  };
  p.dirichlet = exact.value[1];
  p.exact = std::move(exact);

  return {"example2", make_flower(), std::move(p), ClassifyOptions{.strict = false}};
}

Example make_linear_patch(Side inclusion, double radius) {
  auto u = [](const Point& x) { return 1.0 + x.x() + 2.0 * x.y(); };
  auto g = [](const Point&) -> Point { return Point(1.0, 2.0); };
  auto zero_hessian = [](const Point&) -> Eigen::Matrix2d { return Eigen::Matrix2d::Zero(); };
  ExactSolution exact;
  exact.value = {u, u};
  exact.gradient = {g, g};
  exact.hessian = {zero_hessian, zero_hessian};

  ProblemSpec p;
  p.source = {[](const Point&) { return 0.0; }, [](const Point&) { return 0.0; }};
  p.dirichlet = u;
  p.exact = std::move(exact);
  return {"patch", make_circle(radius, inclusion), std::move(p), ClassifyOptions{}};
}

}  // namespace cutfem
