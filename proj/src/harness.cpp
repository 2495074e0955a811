#include "cutfem/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace cutfem {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
  return out;
}

long parse_integer(const std::string& key, const std::string& value) {
  long out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

// "1-5" or "1,2,4"
std::vector<int> parse_levels(const std::string& value) {
  std::vector<int> levels;
  for (const auto& part : split(value, ',')) {
    const auto dash = part.find('-');
    if (dash != std::string::npos && dash > 0) {
      const long lo = parse_integer("levels", trim(part.substr(0, dash)));
      const long hi = parse_integer("levels", trim(part.substr(dash + 1)));
      if (hi < lo) throw ConfigError("levels: empty range '" + part + "'");
      for (long l = lo; l <= hi; ++l) levels.push_back(static_cast<int>(l));
    } else {
      levels.push_back(static_cast<int>(parse_integer("levels", part)));
    }
  }
  if (levels.empty()) throw ConfigError("levels: no level given");
  if (!std::ranges::is_sorted(levels) || std::ranges::adjacent_find(levels) != levels.end())
    throw ConfigError("levels must be strictly ascending");
  return levels;
}

// "1:10, 0.1:100"
std::vector<std::pair<double, double>> parse_pairs(const std::string& value) {
  std::vector<std::pair<double, double>> pairs;
  for (const auto& part : split(value, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ConfigError("pairs: expected rho_minus:rho_plus, got '" + part + "'");
    pairs.emplace_back(parse_double("pairs", trim(part.substr(0, colon))), parse_double("pairs", trim(part.substr(colon + 1))));
  }
  if (pairs.empty()) throw ConfigError("pairs: no coefficient pair given");
  return pairs;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << v;
  return os.str();
}

std::string fmt_eoc(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << *v;
  return os.str();
}

SolveResult solve_with_fallback(const SparseSystem& system, const RunConfig& config) {
  try {
    return solve(system.matrix, system.rhs, config.solver);
  } catch (const NumericalError& err) {
    if (!config.solver_fallback || config.solver.method != SolverMethod::cg_jacobi) throw;
    std::clog << "cutfem: " << err.what() << "; falling back to a direct solve\n";
    SolverOptions direct = config.solver;
    direct.method = system.matrix.rows() <= kDenseLimit ? SolverMethod::dense_cholesky : SolverMethod::sparse_cholesky;
    return solve(system.matrix, system.rhs, direct);
  }
}

void write_markdown_row(std::ostream& out, const std::vector<std::string>& cells) {
  out << '|';
  for (const auto& c : cells) out << ' ' << c << " |";
  out << '\n';
}

void write_table(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                 OutputFormat format) {
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    return;
  }
  write_markdown_row(out, header);
  write_markdown_row(out, std::vector<std::string>(header.size(), "---"));
  for (const auto& row : rows) write_markdown_row(out, row);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "example") {
    if (value != "1" && value != "2" && value != "patch") throw ConfigError("example must be 1, 2 or patch, got '" + value + "'");
    example = value;
  } else if (key == "level") {
    level = static_cast<int>(parse_integer(key, value));
    if (level < 1 || level > 8) throw ConfigError("level must be in 1..8");
  } else if (key == "levels") {
    levels = parse_levels(value);
    if (levels.front() < 1 || levels.back() > 8) throw ConfigError("levels must be in 1..8");
  } else if (key == "interface") {
    if (value != "circle" && value != "flower") throw ConfigError("interface must be circle or flower, got '" + value + "'");
    interface = value;
  } else if (key == "circle_radius") {
    circle_radius = parse_double(key, value);
  } else if (key == "inclusion_side") {
    inclusion = side_from_string(value);
  } else if (key == "rho_minus") {
    rho_minus = parse_double(key, value);
  } else if (key == "rho_plus") {
    rho_plus = parse_double(key, value);
  } else if (key == "gamma") {
    gamma = parse_double(key, value);
  } else if (key == "gamma_g_minus") {
    gamma_g_minus = parse_double(key, value);
  } else if (key == "gamma_g_plus") {
    gamma_g_plus = parse_double(key, value);
  } else if (key == "weighting") {
    weighting = weighting_from_string(value);
  } else if (key == "solver") {
    solver.method = solver_method_from_string(value);
  } else if (key == "tol") {
    solver.tolerance = parse_double(key, value);
  } else if (key == "max_iter") {
    solver.max_iterations = parse_integer(key, value);
  } else if (key == "solver_fallback") {
    if (value != "true" && value != "false") throw ConfigError("solver_fallback must be true or false");
    solver_fallback = value == "true";
  } else if (key == "pairs") {
    pairs = parse_pairs(value);
  } else if (key == "output_path") {
    output_path = value;
  } else if (key == "solution_path") {
    solution_path = value;
  } else if (key == "format") {
    if (value == "csv")
      format = OutputFormat::csv;
    else if (value == "markdown")
      format = OutputFormat::markdown;
    else
      throw ConfigError("format must be csv or markdown, got '" + value + "'");
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    try {
      base.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(number) + ": " + err.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

Example make_example(const RunConfig& config) {
  Example ex = [&] {
    if (config.example == "1") return make_example1(config.rho_minus, config.rho_plus, config.inclusion, config.circle_radius);
    if (config.example == "2") return make_example2(config.rho_minus, config.rho_plus);
    Example patch = make_linear_patch(config.inclusion, config.circle_radius);
    patch.problem.rho_minus = config.rho_minus;
    patch.problem.rho_plus = config.rho_plus;
    return patch;
  }();

  if (!config.interface.empty() && config.interface != ex.level_set.name()) {
    ex.level_set = config.interface == "flower" ? make_flower().with_inclusion(config.inclusion)
                                                 : make_circle(config.circle_radius, config.inclusion);
    ex.classify.strict = config.interface != "flower";
    // Jump data follows from the exact branches on the new interface.
    const ExactSolution exact = *ex.problem.exact;
    const double rm = ex.problem.rho_minus;
    const double rp = ex.problem.rho_plus;
    ex.problem.alpha = [exact](const Point& x) { return exact.u(Side::plus, x) - exact.u(Side::minus, x); };
    ex.problem.beta = [exact, rm, rp](const Point& x, const Point& n) {
      return (rm * exact.grad(Side::minus, x) - rp * exact.grad(Side::plus, x)).dot(n);
    };
    ex.problem.dirichlet = exact.value[static_cast<std::size_t>(index_of(other(ex.level_set.inclusion())))];
  }

  ex.problem.gamma = config.gamma;
  ex.problem.gamma_g_minus = config.gamma_g_minus;
  ex.problem.gamma_g_plus = config.gamma_g_plus;
  ex.problem.weighting = config.weighting;
  ex.problem.validate();
  return ex;
}

Discretization::Discretization(int level, const Example& ex)
    : mesh(build_mesh(level)), topology(mesh, ex.level_set, ex.classify), layout(topology) {}

SolveOutcome solve_on(const Discretization& disc, const Example& ex, const RunConfig& config, FieldPair* solution) {
  const SparseSystem system = assemble_system(disc.layout, ex.problem);
  const SolveResult result = solve_with_fallback(system, config);

  FieldPair uh(disc.layout);
  for (Side s : {Side::minus, Side::plus}) {
    const Index offset = s == Side::minus ? 0 : disc.layout.num_dofs(Side::minus);
    for (Index d = 0; d < disc.layout.num_dofs(s); ++d) uh.side(s)[d] = system.lift[offset + d];
  }
  uh.set_free(result.x);

  SolveOutcome out;
  out.report = error_report(ex.problem, uh);
  out.stats = result.stats;
  out.unknowns = disc.layout.num_free();
  out.cut_elements = static_cast<Index>(disc.topology.cut_elements().size());
  out.ambiguous_elements = static_cast<Index>(disc.topology.ambiguous_elements().size());
  out.symmetry = symmetry_defect(system.matrix);
  if (solution) *solution = std::move(uh);
  return out;
}

SolveOutcome run_solve(const RunConfig& config) {
  const Example ex = make_example(config);
  const Discretization disc(config.level, ex);
  FieldPair uh(disc.layout);
  SolveOutcome out = solve_on(disc, ex, config, &uh);
  out.level = config.level;
  if (!config.solution_path.empty()) {
    std::ofstream file(config.solution_path);
    if (!file) throw ConfigError("cannot write solution file '" + config.solution_path + "'");
    write_solution(file, uh);
  }
  return out;
}

std::vector<ConvergenceRow> run_convergence(const RunConfig& config) {
  const Example ex = make_example(config);
  std::vector<ConvergenceRow> rows;
  for (int level : config.levels) {
    const Discretization disc(level, ex);
    const SolveOutcome out = solve_on(disc, ex, config);
    rows.push_back({level, out.report.h, out.report, {}, {}, {}, {}, out.stats});
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto order = [&](double ErrorReport::*field) {
      const double e[2] = {rows[i - 1].report.*field, rows[i].report.*field};
      const double h[2] = {rows[i - 1].h, rows[i].h};
      return eoc(e, h).front();
    };
    rows[i].eoc0 = order(&ErrorReport::e0);
    rows[i].eocinf = order(&ErrorReport::einf);
    rows[i].eocflux = order(&ErrorReport::eflux);
    rows[i].eocfluxinf = order(&ErrorReport::efluxinf);
  }
  return rows;
}

std::vector<ContrastRow> run_contrast_sweep(const RunConfig& config) {
  std::vector<ContrastRow> rows;
  RunConfig local = config;
  for (const auto& [rm, rp] : config.pairs) {
    local.rho_minus = rm;
    local.rho_plus = rp;
    const Example ex = make_example(local);
    const Discretization disc(config.level, ex);
    const SolveOutcome out = solve_on(disc, ex, local);
    rows.push_back({rm, rp, out.report, out.stats});
  }
  return rows;
}

void write_solve(std::ostream& out, const SolveOutcome& o, OutputFormat format) {
  const auto& r = o.report;
  write_table(out,
              {"level", "h", "e0", "einf", "eflux", "efluxinf", "esqrt", "vnorm", "vanorm", "unknowns", "iterations",
               "relative_residual", "method"},
              {{std::to_string(o.level), fmt(r.h), fmt(r.e0), fmt(r.einf), fmt(r.eflux), fmt(r.efluxinf), fmt(r.esqrt),
                fmt(r.vnorm), fmt(r.vanorm), std::to_string(o.unknowns), std::to_string(o.stats.iterations),
                fmt(o.stats.relative_residual), std::string(to_string(o.stats.method))}},
              format);
}

void write_convergence(std::ostream& out, const std::vector<ConvergenceRow>& rows, OutputFormat format) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({std::to_string(r.level), fmt(r.h), fmt(r.report.e0), fmt_eoc(r.eoc0), fmt(r.report.einf),
                     fmt_eoc(r.eocinf), fmt(r.report.eflux), fmt_eoc(r.eocflux), fmt(r.report.efluxinf),
                     fmt_eoc(r.eocfluxinf)});
  write_table(out, {"level", "h", "e0", "eoc0", "einf", "eocinf", "eflux", "eocflux", "efluxinf", "eocfluxinf"}, cells,
              format);
}

void write_contrast(std::ostream& out, const std::vector<ContrastRow>& rows, OutputFormat format) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({fmt(r.rho_minus), fmt(r.rho_plus), fmt(r.report.e0), fmt(r.report.eflux), fmt(r.report.esqrt)});
  write_table(out, {"rho_minus", "rho_plus", "e0", "eflux", "esqrt"}, cells, format);
}

void write_solution(std::ostream& out, const FieldPair& field) {
  out.precision(17);
  out << "side,node,x,y,value\n";
  for (Side s : {Side::minus, Side::plus}) {
    const Vector& v = field.side(s);
    for (Index d = 0; d < v.size(); ++d) {
      const Index node = field.layout->node_of(s, d);
      const Point& p = field.layout->mesh().node(node);
      out << to_string(s) << ',' << node << ',' << p.x() << ',' << p.y() << ',' << v[d] << '\n';
    }
  }
}

}  // namespace cutfem
