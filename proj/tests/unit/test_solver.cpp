#include "cutfem/harness.hpp"
#include "cutfem/solver.hpp"

#include <doctest.h>

using namespace cutfem;

namespace {
SparseMatrix diagonal(std::initializer_list<double> d) {
  SparseMatrix a(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) {
    a.insert(i, i) = v;
    ++i;
  }
  return a;
}
}  // namespace

TEST_CASE("identity and badly scaled diagonal systems") {
  for (SolverMethod method : {SolverMethod::cg_jacobi, SolverMethod::dense_cholesky, SolverMethod::sparse_cholesky}) {
    SolverOptions opt;
    opt.method = method;
    const SparseMatrix id = diagonal({1.0, 1.0, 1.0});
    const Vector b = Vector::LinSpaced(3, 1.0, 3.0);
    const SolveResult r = solve(id, b, opt);
    CHECK((r.x - b).norm() < 1e-14);
    CHECK(r.stats.method == method);

    const SparseMatrix d = diagonal({1.0, 1e8});
    const SolveResult s = solve(d, Vector::Ones(2), opt);
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.x[1] == doctest::Approx(1e-8));
    CHECK(s.stats.relative_residual <= 1e-12);
  }
  // Jacobi makes the diagonal case a one-step solve
  const SolveResult s = solve(diagonal({1.0, 1e8}), Vector::Ones(2));
  CHECK(s.stats.iterations == 1);
}

TEST_CASE("zero right-hand side and argument checks") {
  const SolveResult r = solve(diagonal({2.0, 3.0}), Vector::Zero(2));
  CHECK(r.x.norm() == 0.0);
  CHECK_THROWS_AS(solve(diagonal({1.0}), Vector::Zero(2)), std::invalid_argument);
  SolverOptions bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(solve(diagonal({1.0}), Vector::Ones(1), bad), ConfigError);
  CHECK(solver_method_from_string("cg") == SolverMethod::cg_jacobi);
  CHECK(solver_method_from_string("dense") == SolverMethod::dense_cholesky);
  CHECK_THROWS_AS(solver_method_from_string("lu"), ConfigError);
  CHECK(to_string(SolverMethod::sparse_cholesky) == "sparse_cholesky");
}

TEST_CASE("indefinite matrices are rejected") {
  SparseMatrix a(2, 2);
  a.insert(0, 0) = 1.0;
  a.insert(0, 1) = 2.0;
  a.insert(1, 0) = 2.0;
  a.insert(1, 1) = 1.0;
  for (SolverMethod method : {SolverMethod::cg_jacobi, SolverMethod::dense_cholesky, SolverMethod::sparse_cholesky}) {
    SolverOptions opt;
    opt.method = method;
    CHECK_THROWS_AS(solve(a, Vector::Unit(2, 0), opt), NumericalError);
    CHECK_THROWS_AS(solve(diagonal({1.0, -1.0}), Vector::Ones(2), opt), NumericalError);
  }
}

TEST_CASE("iteration limit raises SolverError with statistics") {
  const Example ex = make_example1(1.0, 1e4, Side::minus);
  const Discretization disc(2, ex);
  const SparseSystem sys = assemble_system(disc.layout, ex.problem);
  SolverOptions opt;
  opt.max_iterations = 3;
  try {
    solve(sys.matrix, sys.rhs, opt);
    FAIL("expected SolverError");
  } catch (const SolverError& err) {
    CHECK(err.stats().iterations == 3);
    CHECK(err.stats().relative_residual > 1e-12);
  }
}

TEST_CASE("CG agrees with the direct solvers on a cut system") {
  const Example ex = make_example1(1.0, 1e4, Side::minus);
  const Discretization disc(2, ex);
  const SparseSystem sys = assemble_system(disc.layout, ex.problem);
  const SolveResult cg = solve(sys.matrix, sys.rhs);
  SolverOptions dense;
  dense.method = SolverMethod::dense_cholesky;
  SolverOptions sparse;
  sparse.method = SolverMethod::sparse_cholesky;
  const SolveResult d = solve(sys.matrix, sys.rhs, dense);
  const SolveResult s = solve(sys.matrix, sys.rhs, sparse);
  CHECK((cg.x - d.x).norm() <= 1e-8 * d.x.norm());
  CHECK((s.x - d.x).norm() <= 1e-10 * d.x.norm());
  CHECK(cg.stats.relative_residual <= 1e-12);
  CHECK(relative_residual(sys.matrix, cg.x, sys.rhs) <= 1e-12);
}
