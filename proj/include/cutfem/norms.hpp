#pragma once

#include "cutfem/problem.hpp"
#include "cutfem/space.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cutfem {

/// Error quantities of one discrete solution against the exact branches.
struct ErrorReport {
  double h = 0.0;
  double e0 = 0.0;        ///< ||u - u_h||_{L2}
  double einf = 0.0;      ///< max |u - u_h| over sample points
  double eflux = 0.0;     ///< ||rho grad(u - u_h)||_{L2}
  double efluxinf = 0.0;  ///< max |rho grad(u - u_h)|
  double esqrt = 0.0;     ///< ||sqrt(rho) grad(u - u_h)||_{L2}
  double vnorm = 0.0;     ///< ||u - u_h||_V
  double vanorm = 0.0;    ///< ||u - u_h||_{V_A}

  // per-side pieces, indexed by Side
  std::array<double, 2> e0_side{};
  std::array<double, 2> grad_side{};  ///< plain ||grad(u - u_h)|| per side
  std::array<double, 2> eflux_side{};

  /// eflux recomputed directly from the sample points, for cross-checks.
  double eflux_direct = 0.0;
  double gradient_error = 0.0;  ///< unweighted ||grad(u - u_h)||
};

/// Errors of `uh` on the physical subdomains. Throws ConfigError without an exact solution.
ErrorReport error_report(const ProblemSpec& spec, const FieldPair& uh);

/// ||u - v||_V or ||u - v||_{V_A} with u the exact solution of `spec`.
double energy_error(const ProblemSpec& spec, const FieldPair& v, bool augmented);

/// log(e_{l+1}/e_l) / log(h_{l+1}/h_l); entries are empty where undefined.
std::vector<std::optional<double>> eoc(std::span<const double> errors, std::span<const double> hs);

}  // namespace cutfem
