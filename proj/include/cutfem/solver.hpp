#pragma once

#include "cutfem/assembly.hpp"

#include <string_view>

namespace cutfem {

enum class SolverMethod { cg_jacobi, dense_cholesky, sparse_cholesky };

std::string_view to_string(SolverMethod m) noexcept;
SolverMethod solver_method_from_string(std::string_view name);

struct SolveStats {
  Index iterations = 0;
  double relative_residual = 0.0;
  SolverMethod method = SolverMethod::cg_jacobi;
};

struct SolverOptions {
  SolverMethod method = SolverMethod::cg_jacobi;
  double tolerance = 1e-12;
  /// 0 means 20 n.
  Index max_iterations = 0;
};

struct SolveResult {
  Vector x;
  SolveStats stats;
};

/// Thrown when the iteration budget runs out; carries the partial statistics.
class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, SolveStats stats) : NumericalError(what), stats_(stats) {}
  const SolveStats& stats() const noexcept { return stats_; }

 private:
  SolveStats stats_;
};

/// Solves A x = b for symmetric positive definite A.
SolveResult solve(const SparseMatrix& a, const Vector& b, const SolverOptions& options = {});

/// ||b - A x|| / ||b|| (||r|| when b vanishes).
/// b - A x with extended-precision accumulation.
Vector residual(const SparseMatrix& a, const Vector& x, const Vector& b);

double relative_residual(const SparseMatrix& a, const Vector& x, const Vector& b);

/// Largest system size accepted by the dense Cholesky path.
inline constexpr Index kDenseLimit = 3000;

}  // namespace cutfem
