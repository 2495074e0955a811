#pragma once

#include "cutfem/norms.hpp"
#include "cutfem/problem.hpp"
#include "cutfem/solver.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cutfem {

enum class OutputFormat { csv, markdown };

/// Flat key = value run configuration.
struct RunConfig {
  std::string example = "1";  ///< "1", "2" or "patch"
  int level = 3;
  std::vector<int> levels{1, 2, 3, 4, 5};
  std::string interface;  ///< empty selects the example's own interface
  double circle_radius = 1.0 / 3.0;
  Side inclusion = Side::minus;
  double rho_minus = 1.0;
  double rho_plus = 1e4;
  double gamma = 10.0;
  double gamma_g_minus = 10.0;
  double gamma_g_plus = 10.0;
  Weighting weighting = Weighting::minus_sided;
  SolverOptions solver;
  /// Fall back to a direct solver when CG fails.
  bool solver_fallback = true;
  std::vector<std::pair<double, double>> pairs{{1.0, 1e1}, {1e-1, 1e2}, {1e-2, 1e3}, {1e-3, 1e4}, {1e-4, 1e5}};
  std::string output_path;
  std::string solution_path;
  OutputFormat format = OutputFormat::csv;

  /// Applies one key; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

/// Parses "key = value" lines; '#' starts a comment. Errors name the line.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// The built-in example selected by `config`, with its coefficients applied.
Example make_example(const RunConfig& config);

struct SolveOutcome {
  int level = 0;
  ErrorReport report;
  SolveStats stats;
  Index unknowns = 0;
  Index cut_elements = 0;
  Index ambiguous_elements = 0;
  double symmetry = 0.0;
};

/// Everything one solve produces, kept alive for callers that need the field.
struct Discretization {
  Mesh mesh;
  CutTopology topology;
  SpaceLayout layout;

  Discretization(int level, const Example& ex);
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;
};

/// Assemble, solve and measure one example on one level. When `solution`
/// is given it receives the discrete field.
SolveOutcome solve_on(const Discretization& disc, const Example& ex, const RunConfig& config,
                      FieldPair* solution = nullptr);

SolveOutcome run_solve(const RunConfig& config);

struct ConvergenceRow {
  int level;
  double h;
  ErrorReport report;
  std::optional<double> eoc0, eocinf, eocflux, eocfluxinf;
  SolveStats stats;
};

std::vector<ConvergenceRow> run_convergence(const RunConfig& config);

struct ContrastRow {
  double rho_minus;
  double rho_plus;
  ErrorReport report;
  SolveStats stats;
};

std::vector<ContrastRow> run_contrast_sweep(const RunConfig& config);

void write_solve(std::ostream& out, const SolveOutcome& outcome, OutputFormat format);
void write_convergence(std::ostream& out, const std::vector<ConvergenceRow>& rows, OutputFormat format);
void write_contrast(std::ostream& out, const std::vector<ContrastRow>& rows, OutputFormat format);

/// Per-node values of both sides: "side,node,x,y,value".
void write_solution(std::ostream& out, const FieldPair& field);

}  // namespace cutfem
