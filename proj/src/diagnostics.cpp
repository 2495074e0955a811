#include "cutfem/diagnostics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <functional>
#include <random>
#include <sstream>

namespace cutfem {

PatchRatio patch_area_ratio(const CutTopology& topology, Side side) {
  const Mesh& m = topology.mesh();
  const LevelSet& ls = topology.level_set();
  PatchRatio out{INFINITY, -1};
  for (Index z = 0; z < m.num_nodes(); ++z) {
    const double phi = ls(m.node(z));
    const bool in_closure = phi == 0.0 || (phi < 0.0) == (ls.inside_side() == side);
    if (!in_closure) continue;
    double best = 0.0;
    for (Index t : m.node_patch(z)) {
      const double d = m.diameter(t);
      best = std::max(best, topology.part_area(t, side) / (d * d));
    }
    if (best < out.min_ratio) out = {best, z};
  }
  return out;
}

CoercivityResult coercivity_probe(const SparseMatrix& a, const SparseMatrix& gram, int samples, Index dense_limit,
                                  std::uint64_t seed) {
  if (a.rows() != gram.rows() || a.cols() != gram.cols()) throw std::invalid_argument("coercivity_probe: size mismatch");
  if (a.rows() <= dense_limit) {
    const Eigen::MatrixXd A(a);
    const Eigen::MatrixXd G(gram);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, G, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("generalized eigensolve failed (Gram matrix not SPD?)");
    return {eig.eigenvalues().minCoeff(), true};
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double best = INFINITY;
  Vector v(a.rows());
  for (int s = 0; s < samples; ++s) {
    for (Index i = 0; i < v.size(); ++i) v[i] = dist(rng);
    const double num = v.dot(a * v);
    const double den = v.dot(gram * v);
    if (den > 0.0) best = std::min(best, num / den);
  }
  return {best, false};
}

SparseMatrix energy_gram(const SpaceLayout& layout, const ProblemSpec& spec, bool augmented) {
  return restrict_to_free(layout, assemble_full_operator(layout, energy_norm_form(spec, augmented)));
}

std::vector<InterpolationRow> interpolation_error_profile(const Example& example, const std::vector<int>& levels) {
  if (!example.problem.exact || !example.problem.exact->has_hessian())
    throw ConfigError("interpolation profile needs an exact solution with second derivatives");
  const ExactSolution& ex = *example.problem.exact;
  std::vector<InterpolationRow> rows;
  for (int level : levels) {
    const Discretization disc(level, example);
    const FieldPair iu = interpolate(disc.layout, ex.value[0], ex.value[1]);
    const ErrorReport rep = error_report(example.problem, iu);

    double hessian_sum = 0.0;
    for (Side s : {Side::minus, Side::plus}) {
      double sq = 0.0;
      for (Index t : disc.topology.elements(s)) {
        const QuadratureRule rule = cut_volume_quadrature(disc.topology, t, s, TriangleRule::degree5);
        for (std::size_t q = 0; q < rule.size(); ++q)
          sq += rule.weights[q] * ex.hessian[static_cast<std::size_t>(index_of(s))](rule.points[q]).squaredNorm();
      }
      hessian_sum += std::sqrt(example.problem.rho(s)) * std::sqrt(sq);
    }
    const double h = disc.mesh.h();
    rows.push_back({level, h, rep.vanorm, hessian_sum, rep.vanorm / (h * hessian_sum)});
  }
  return rows;
}

double extension_cutoff(double distance, double width) {
  const double d = std::abs(distance);
  if (d <= 0.5 * width) return 1.0;
  if (d >= width) return 0.0;
  const double t = (d - 0.5 * width) / (0.5 * width);
  return 1.0 - t * t * (3.0 - 2.0 * t);
}

namespace {

// H1 norm squared of a P1 field given by one value per mesh node, over a list of elements.
double h1_squared(const Mesh& m, const std::vector<Index>& elements, const std::function<std::array<double, 3>(Index)>& local) {
  double sum = 0.0;
  for (Index t : elements) {
    const auto c = local(t);
    const auto g = m.shape_gradients(t);
    const Point grad = c[0] * g[0] + c[1] * g[1] + c[2] * g[2];
    const double area = m.area(t);
    // mid-edge rule is exact for the square of a P1 function
    const double mid01 = 0.5 * (c[0] + c[1]);
    const double mid12 = 0.5 * (c[1] + c[2]);
    const double mid20 = 0.5 * (c[2] + c[0]);
    sum += area / 3.0 * (mid01 * mid01 + mid12 * mid12 + mid20 * mid20) + area * grad.squaredNorm();
  }
  return sum;
}

}  // namespace

ExtensionResult discrete_extension(const FieldPair& field, const ExtensionOptions& options) {
  const SpaceLayout& layout = *field.layout;
  const CutTopology& topo = layout.topology();
  const Mesh& m = layout.mesh();
  const LevelSet& ls = topo.level_set();
  ReflectOptions reflect_options;
  reflect_options.tube_width = options.tube_width;

  ExtensionResult out;
  out.values = Vector::Zero(m.num_nodes());
  for (Index z = 0; z < m.num_nodes(); ++z) {
    const Index d = layout.dof(Side::plus, z);
    if (d >= 0) {
      out.values[z] = field.side(Side::plus)[d];
      ++out.kept;
      continue;
    }
    // Clement-type average of eta(y) v(reflect(y)) over the minus part of the patch
    double integral = 0.0;
    double measure = 0.0;
    for (Index t : m.node_patch(z)) {
      if (!topo.touches(t, Side::minus)) continue;
      const QuadratureRule rule = cut_volume_quadrature(topo, t, Side::minus);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point& y = rule.points[q];
        measure += rule.weights[q];
        const double eta = extension_cutoff(ls(y), options.tube_width);
        if (eta == 0.0) continue;
        Point mirrored;
        double value = 0.0;
        try {
          mirrored = reflect(ls, y, reflect_options);
          value = evaluate(field, Side::plus, mirrored).value;
        } catch (const std::exception& err) {
          std::ostringstream os;
          os.precision(17);
          os << "reflection failed at quadrature point (" << y.x() << ", " << y.y() << "): " << err.what();
          throw GeometryError(os.str());
        }
        integral += rule.weights[q] * eta * value;
      }
    }
    if (measure > 0.0) out.values[z] = integral / measure;
    ++out.averaged;
  }

  std::vector<Index> all(static_cast<std::size_t>(m.num_elements()));
  for (Index t = 0; t < m.num_elements(); ++t) all[static_cast<std::size_t>(t)] = t;
  const double ext = h1_squared(m, all, [&](Index t) {
    const auto& tri = m.element(t);
    return std::array<double, 3>{out.values[tri[0]], out.values[tri[1]], out.values[tri[2]]};
  });
  const double base = h1_squared(m, topo.elements(Side::plus), [&](Index t) { return field.local(t, Side::plus); });
  out.ratio = base > 0.0 ? std::sqrt(ext / base) : 0.0;
  return out;
}

double plus_domain_bound_ratio(const FieldPair& field) {
  const SpaceLayout& layout = *field.layout;
  const CutTopology& topo = layout.topology();
  const Mesh& m = layout.mesh();
  const auto& elems = topo.elements(Side::plus);
  const double full = h1_squared(m, elems, [&](Index t) { return field.local(t, Side::plus); });

  double physical = 0.0;
  for (Index t : elems) {
    const QuadratureRule rule = cut_volume_quadrature(topo, t, Side::plus);
    const Point g = field.gradient(t, Side::plus);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double v = field.value(t, Side::plus, rule.points[q]);
      physical += rule.weights[q] * (v * v + g.squaredNorm());
    }
  }
  double ghost = 0.0;
  for (Index e : topo.ghost_edges(Side::plus)) {
    const Edge& edge = m.edge(e);
    const Point d = m.node(edge.nodes[1]) - m.node(edge.nodes[0]);
    const Point n = Point(d.y(), -d.x()).normalized();
    const double jump = (field.gradient(edge.elements[0], Side::plus) - field.gradient(edge.elements[1], Side::plus)).dot(n);
    ghost += edge.length * edge.length * jump * jump;
  }
  const double den = physical + ghost;
  return den > 0.0 ? full / den : 0.0;
}

DiagnosticsReport run_diagnostics(const RunConfig& run, const DiagnosticsConfig& config) {
  const Example ex = make_example(run);
  DiagnosticsReport report;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  for (int level : config.levels) {
    const Discretization disc(level, ex);
    DiagnosticsRow row{};
    row.level = level;
    row.h = disc.mesh.h();
    row.patch_minus = patch_area_ratio(disc.topology, Side::minus);
    row.patch_plus = patch_area_ratio(disc.topology, Side::plus);
    const SparseMatrix a = assemble_bilinear(disc.layout, ex.problem);
    row.coercivity = coercivity_probe(a, energy_gram(disc.layout, ex.problem), 64, config.dense_limit, config.seed);

    FieldPair v(disc.layout);
    for (int k = 0; k < config.random_fields; ++k) {
      for (Index i = 0; i < v.side(Side::plus).size(); ++i) v.side(Side::plus)[i] = dist(rng);
      row.extension_ratio = std::max(row.extension_ratio, discrete_extension(v).ratio);
      row.bound_ratio = std::max(row.bound_ratio, plus_domain_bound_ratio(v));
    }
    report.levels.push_back(row);
  }
  report.interpolation = interpolation_error_profile(ex, config.interpolation_levels);
  return report;
}

void write_diagnostics(std::ostream& out, const DiagnosticsReport& report) {
  out << std::setprecision(6) << std::scientific;
  out << "# patch_area_ratio\nlevel,h,min_ratio_minus,node_minus,min_ratio_plus,node_plus\n";
  for (const auto& r : report.levels)
    out << r.level << ',' << r.h << ',' << r.patch_minus.min_ratio << ',' << r.patch_minus.node << ','
        << r.patch_plus.min_ratio << ',' << r.patch_plus.node << '\n';
  out << "# coercivity_probe\nlevel,h,min_quotient,dense\n";
  for (const auto& r : report.levels)
    out << r.level << ',' << r.h << ',' << r.coercivity.min_quotient << ',' << (r.coercivity.dense ? 1 : 0) << '\n';
  out << "# discrete_extension\nlevel,h,max_stability_ratio\n";
  for (const auto& r : report.levels) out << r.level << ',' << r.h << ',' << r.extension_ratio << '\n';
  out << "# plus_domain_bound\nlevel,h,max_ratio\n";
  for (const auto& r : report.levels) out << r.level << ',' << r.h << ',' << r.bound_ratio << '\n';
  out << "# interpolation_error\nlevel,h,error_va,hessian_sum,ratio\n";
  for (const auto& r : report.interpolation)
    out << r.level << ',' << r.h << ',' << r.error << ',' << r.hessian_sum << ',' << r.ratio << '\n';
}

}  // namespace cutfem
