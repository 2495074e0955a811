#include "cutfem/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

namespace cutfem {

std::string_view to_string(SolverMethod m) noexcept {
  switch (m) {
    case SolverMethod::cg_jacobi: return "cg_jacobi";
    case SolverMethod::dense_cholesky: return "dense_cholesky";
    case SolverMethod::sparse_cholesky: return "sparse_cholesky";
  }
  return "unknown";
}

SolverMethod solver_method_from_string(std::string_view name) {
  if (name == "cg" || name == "cg_jacobi") return SolverMethod::cg_jacobi;
  if (name == "dense" || name == "dense_cholesky") return SolverMethod::dense_cholesky;
  if (name == "sparse" || name == "sparse_cholesky") return SolverMethod::sparse_cholesky;
  throw ConfigError("unknown solver '" + std::string(name) + "' (expected cg|dense|sparse)");
}

// b - A x accumulated in long double: for high-contrast systems |A||x| exceeds
// |b| by several orders and a double residual only shows round-off.
Vector residual(const SparseMatrix& a, const Vector& x, const Vector& b) {
  std::vector<long double> acc(static_cast<std::size_t>(b.size()));
  for (Index i = 0; i < b.size(); ++i) acc[static_cast<std::size_t>(i)] = b[i];
  for (Index c = 0; c < a.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(a, c); it; ++it)
      acc[static_cast<std::size_t>(it.row())] -= static_cast<long double>(it.value()) * x[it.col()];
  Vector r(b.size());
  for (Index i = 0; i < b.size(); ++i) r[i] = static_cast<double>(acc[static_cast<std::size_t>(i)]);
  return r;
}

double relative_residual(const SparseMatrix& a, const Vector& x, const Vector& b) {
  const double nb = b.norm();
  const double nr = residual(a, x, b).norm();
  return nb == 0.0 ? nr : nr / nb;
}

namespace {

std::string scientific(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

SolveResult conjugate_gradient(const SparseMatrix& a, const Vector& b, const SolverOptions& options) {
  const Index n = a.rows();
  const Index max_iter = options.max_iterations > 0 ? options.max_iterations : 20 * std::max<Index>(n, 1);
  SolveResult result{Vector::Zero(n), {0, 0.0, SolverMethod::cg_jacobi}};

  const double b_norm = b.norm();
  if (b_norm == 0.0) return result;

  Vector inv_diag = a.diagonal();
  for (Index i = 0; i < n; ++i) {
    if (!(inv_diag[i] > 0.0)) throw NumericalError("matrix not SPD - check gamma (non-positive diagonal entry)");
    inv_diag[i] = 1.0 / inv_diag[i];
  }

  Vector& x = result.x;
  Vector r = b;
  Vector z = inv_diag.cwiseProduct(r);
  Vector p = z;
  Vector ap(n);
  double rz = r.dot(z);
  const double target = options.tolerance * b_norm;

  // Residual replacement: when the recursive residual claims convergence the
  // true residual is recomputed and CG restarts from it. Repeated restarts
  // without a halving of the true residual mean round-off has taken over.
  double last_true = INFINITY;
  int stalled = 0;
  for (Index it = 1; it <= max_iter; ++it) {
    ap.noalias() = a * p;
    const double curvature = p.dot(ap);
    if (!(curvature > 0.0)) throw NumericalError("matrix not SPD - check gamma (non-positive curvature in CG)");
    const double step = rz / curvature;
    x += step * p;
    r -= step * ap;
    result.stats.iterations = it;
    if (r.norm() <= target) {
      r = residual(a, x, b);
      const double true_norm = r.norm();
      result.stats.relative_residual = true_norm / b_norm;
      if (true_norm <= target) return result;
      stalled = true_norm > 0.5 * last_true ? stalled + 1 : 0;
      last_true = std::min(last_true, true_norm);
      if (stalled >= 3)
        throw SolverError("CG stagnated at relative residual " + scientific(result.stats.relative_residual) +
                              " after " + std::to_string(it) + " iterations",
                          result.stats);
      z = inv_diag.cwiseProduct(r);
      p = z;
      rz = r.dot(z);
      continue;
    }
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  result.stats.relative_residual = relative_residual(a, x, b);
  throw SolverError("CG reached the iteration limit (" + std::to_string(max_iter) + ") with relative residual " +
                        scientific(result.stats.relative_residual),
                    result.stats);
}

// A few rounds of iterative refinement recover the digits a direct solve loses
// to conditioning.
template <typename Factor>
SolveResult refine(const Factor& factor, const SparseMatrix& a, const Vector& b, double tolerance, SolverMethod method) {
  SolveResult result{factor.solve(b), {1, 0.0, method}};
  result.stats.relative_residual = relative_residual(a, result.x, b);
  for (int k = 0; k < 3 && result.stats.relative_residual > tolerance; ++k) {
    const Vector r = residual(a, result.x, b);
    const Vector x = result.x + factor.solve(r);
    const double next = relative_residual(a, x, b);
    if (!(next < result.stats.relative_residual)) break;
    result.x = x;
    result.stats.relative_residual = next;
    ++result.stats.iterations;
  }
  return result;
}

SolveResult dense_cholesky(const SparseMatrix& a, const Vector& b, double tolerance) {
  if (a.rows() > kDenseLimit)
    throw NumericalError("dense Cholesky limited to n <= " + std::to_string(kDenseLimit) + ", got " + std::to_string(a.rows()));
  const Eigen::MatrixXd dense(a);
  Eigen::LLT<Eigen::MatrixXd> llt(dense);
  if (llt.info() != Eigen::Success) throw NumericalError("matrix not SPD - check gamma (dense Cholesky failed)");
  return refine(llt, a, b, tolerance, SolverMethod::dense_cholesky);
}

SolveResult sparse_cholesky(const SparseMatrix& a, const Vector& b, double tolerance) {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw NumericalError("sparse LDL^T factorization failed");
  if ((ldlt.vectorD().array() <= 0.0).any()) throw NumericalError("matrix not SPD - check gamma (sparse LDL^T pivot)");
  return refine(ldlt, a, b, tolerance, SolverMethod::sparse_cholesky);
}

}  // namespace

SolveResult solve(const SparseMatrix& a, const Vector& b, const SolverOptions& options) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw std::invalid_argument("solve: inconsistent dimensions");
  if (!(options.tolerance > 0.0 && options.tolerance < 1.0)) throw ConfigError("solver tolerance must lie in (0,1)");
  switch (options.method) {
    case SolverMethod::cg_jacobi: return conjugate_gradient(a, b, options);
    case SolverMethod::dense_cholesky: return dense_cholesky(a, b, options.tolerance);
    case SolverMethod::sparse_cholesky: return sparse_cholesky(a, b, options.tolerance);
  }
  throw std::invalid_argument("unknown solver method");
}

}  // namespace cutfem
