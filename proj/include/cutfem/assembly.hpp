#pragma once

#include "cutfem/problem.hpp"
#include "cutfem/space.hpp"

#include <Eigen/SparseCore>

#include <array>
#include <iosfwd>

namespace cutfem {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Coefficients of the term families of a symmetric interface form. The
/// Nitsche bilinear form and the energy-norm Gram matrices are instances.
struct FormCoefficients {
  std::array<double, 2> volume{};       ///< rho^- , rho^+
  std::array<double, 2> consistency{};  ///< w_- rho^-, w_+ rho^+ (zero for norms)
  double penalty = 0.0;                 ///< multiplies (1/h_T) int_{T_Gamma} [u][v]
  std::array<double, 2> ghost{};        ///< multiplies |e| int_e [[grad u]][[grad v]]
  double normal_flux = 0.0;             ///< multiplies h_T int_{T_Gamma} (grad u^- . n)(grad v^- . n)
};

/// Terms of the stabilized Nitsche form for `spec`.
FormCoefficients nitsche_form(const ProblemSpec& spec);
/// Gram terms of ||.||_V, or of ||.||_{V_A} when `augmented` is set.
FormCoefficients energy_norm_form(const ProblemSpec& spec, bool augmented = false);

/// Operator on every side DOF (minus DOFs first, then plus), Dirichlet DOFs included.
SparseMatrix assemble_full_operator(const SpaceLayout& layout, const FormCoefficients& form);

/// Restriction of a full-DOF matrix or vector to the free DOFs.
SparseMatrix restrict_to_free(const SpaceLayout& layout, const SparseMatrix& full);
Vector restrict_to_free(const SpaceLayout& layout, const Vector& full);

/// Reduced system matrix of the Nitsche form.
SparseMatrix assemble_bilinear(const SpaceLayout& layout, const ProblemSpec& spec);

/// Load functional on every side DOF: volume sources plus the jump data terms.
Vector assemble_full_load(const SpaceLayout& layout, const ProblemSpec& spec);

/// Load functional restricted to the free DOFs (no Dirichlet lifting).
Vector assemble_load(const SpaceLayout& layout, const ProblemSpec& spec);

/// Dirichlet values on every side DOF (zero on free DOFs).
Vector dirichlet_values(const SpaceLayout& layout, const ProblemSpec& spec);

struct SparseSystem {
  SparseMatrix matrix;
  Vector rhs;
  /// Full-DOF vector holding the boundary data, used to rebuild the solution.
  Vector lift;
};

/// Reduced system with the boundary data moved to the right-hand side.
SparseSystem assemble_system(const SpaceLayout& layout, const ProblemSpec& spec);

/// Full-DOF numbering shared by the helpers above.
Index full_index(const SpaceLayout& layout, Side s, Index dof);

/// ||A - A^T||_max / ||A||_max.
double symmetry_defect(const SparseMatrix& a);

/// Coordinate text dump, one "row col value" line per stored entry.
void write_coordinate(std::ostream& out, const SparseMatrix& a);

}  // namespace cutfem
