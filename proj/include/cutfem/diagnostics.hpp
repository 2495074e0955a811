#pragma once

#include "cutfem/assembly.hpp"
#include "cutfem/harness.hpp"
#include "cutfem/level_set.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cutfem {

// Measurable counterparts of the structural estimates behind the method:
// geometric patch bound, coercivity, interpolation error and the discrete
// extension from Omega_h^+ to the whole square.

struct PatchRatio {
  double min_ratio = 0.0;
  Index node = -1;  ///< arg-min node
};

/// min over nodes z in the closure of Omega^side of max_{T in patch(z)} |T ∩ Omega^side| / h_T^2.
PatchRatio patch_area_ratio(const CutTopology& topology, Side side);

struct CoercivityResult {
  double min_quotient = 0.0;
  bool dense = false;  ///< true when computed by a generalized eigensolve
};

/// Smallest generalized Rayleigh quotient v^T A v / v^T G v. Dense eigensolve
/// up to `dense_limit` unknowns, random sampling otherwise.
CoercivityResult coercivity_probe(const SparseMatrix& a, const SparseMatrix& gram, int samples = 64,
                                  Index dense_limit = 2500, std::uint64_t seed = 7);

/// Reduced Gram matrix of ||.||_V (or ||.||_{V_A}).
SparseMatrix energy_gram(const SpaceLayout& layout, const ProblemSpec& spec, bool augmented = false);

struct InterpolationRow {
  int level;
  double h;
  double error;        ///< ||u - I_h u||_{V_A}
  double hessian_sum;  ///< sqrt(rho^+) ||D^2 u||_{Omega^+} + sqrt(rho^-) ||D^2 u||_{Omega^-}
  double ratio;        ///< error / (h * hessian_sum)
};

/// Interpolation-error profile of an example with analytic second derivatives.
std::vector<InterpolationRow> interpolation_error_profile(const Example& example, const std::vector<int>& levels);

struct ExtensionOptions {
  double tube_width = 0.1;
};

struct ExtensionResult {
  Vector values;         ///< one conforming P1 value per mesh node
  double ratio = 0.0;    ///< ||Ev||_{H1(Omega)} / ||v||_{H1(Omega_h^+)}
  Index kept = 0;        ///< nodes copied from Omega_h^+
  Index averaged = 0;    ///< nodes filled by reflected averages
};

/// Cutoff eta(d): 1 up to width/2, cubic rolloff to 0 at width.
double extension_cutoff(double distance, double width);

/// Extension of the plus-side field of `field` to a conforming P1 function
/// on the whole mesh, built from reflected patch averages.
ExtensionResult discrete_extension(const FieldPair& field, const ExtensionOptions& options = {});

/// ||v||^2_{H1(Omega_h^+)} / (||v||^2_{H1(Omega^+)} + sum_e |e| ||[[grad v]]||^2_e) for the plus field.
double plus_domain_bound_ratio(const FieldPair& field);

struct DiagnosticsConfig {
  std::vector<int> levels{2, 3, 4, 5};
  std::vector<int> interpolation_levels{1, 2, 3, 4, 5};
  int random_fields = 20;
  std::uint64_t seed = 20240611;
  Index dense_limit = 2500;
};

struct DiagnosticsRow {
  int level;
  double h;
  PatchRatio patch_minus;
  PatchRatio patch_plus;
  CoercivityResult coercivity;
  double extension_ratio;
  double bound_ratio;
};

struct DiagnosticsReport {
  std::vector<DiagnosticsRow> levels;
  std::vector<InterpolationRow> interpolation;
};

DiagnosticsReport run_diagnostics(const RunConfig& run, const DiagnosticsConfig& config = {});

/// CSV blocks, one per diagnostic, separated by "# name" lines.
void write_diagnostics(std::ostream& out, const DiagnosticsReport& report);

}  // namespace cutfem
