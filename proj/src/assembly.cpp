#include "cutfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace cutfem {

namespace {

using Triplet = Eigen::Triplet<double>;

// Local basis data of one element on one side.
struct LocalSide {
  std::array<Index, 3> rows;
  std::array<Point, 3> grads;
};

LocalSide local_side(const SpaceLayout& layout, Index t, Side s) {
  const Mesh& m = layout.mesh();
  LocalSide ls;
  const auto& tri = m.element(t);
  for (int k = 0; k < 3; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    ls.rows[ks] = full_index(layout, s, layout.dof(s, tri[ks]));
  }
  ls.grads = m.shape_gradients(t);
  return ls;
}

// Unit normal of a mesh edge pointing out of its first element.
Point edge_normal(const Mesh& m, const Edge& e) {
  const Point a = m.node(e.nodes[0]);
  const Point b = m.node(e.nodes[1]);
  Point n(b.y() - a.y(), a.x() - b.x());
  n.normalize();
  const auto& tri = m.element(e.elements[0]);
  for (Index v : tri) {
    if (v == e.nodes[0] || v == e.nodes[1]) continue;
    if (n.dot(m.node(v) - a) > 0.0) n = -n;
  }
  return n;
}

void add_volume(const SpaceLayout& layout, const FormCoefficients& form, std::vector<Triplet>& out) {
  const CutTopology& topo = layout.topology();
  for (Side s : {Side::minus, Side::plus}) {
    const double rho = form.volume[static_cast<std::size_t>(index_of(s))];
    if (rho == 0.0) continue;
    for (Index t : topo.elements(s)) {
      const double area = topo.part_area(t, s);
      if (area <= 0.0) continue;
      const LocalSide ls = local_side(layout, t, s);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out.emplace_back(ls.rows[i], ls.rows[j], rho * area * ls.grads[i].dot(ls.grads[j]));
    }
  }
}

void add_interface(const SpaceLayout& layout, const FormCoefficients& form, std::vector<Triplet>& out) {
  const CutTopology& topo = layout.topology();
  const Mesh& m = layout.mesh();
  for (Index t : topo.cut_elements()) {
    const InterfaceRule ir = interface_quadrature(topo, t, 2);
    const Point& n = ir.normal_minus;
    const double h_t = m.diameter(t);
    const LocalSide lm = local_side(layout, t, Side::minus);
    const LocalSide lp = local_side(layout, t, Side::plus);

    std::array<Index, 6> rows;
    std::array<double, 6> flux;  // consistency-weighted normal derivatives
    std::array<double, 6> minus_normal{};
    for (std::size_t k = 0; k < 3; ++k) {
      rows[k] = lm.rows[k];
      rows[k + 3] = lp.rows[k];
      flux[k] = form.consistency[0] * lm.grads[k].dot(n);
      flux[k + 3] = form.consistency[1] * lp.grads[k].dot(n);
      minus_normal[k] = lm.grads[k].dot(n);
    }

    Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
    for (std::size_t q = 0; q < ir.rule.size(); ++q) {
      const double w = ir.rule.weights[q];
      const auto lambda = m.barycentric(t, ir.rule.points[q]);
      std::array<double, 6> jump;
      for (std::size_t k = 0; k < 3; ++k) {
        jump[k] = -lambda[k];
        jump[k + 3] = lambda[k];
      }
      for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
          double v = flux[i] * jump[j] + jump[i] * flux[j];
          v += form.penalty / h_t * jump[i] * jump[j];
          v += form.normal_flux * h_t * minus_normal[i] * minus_normal[j];
          local(static_cast<Index>(i), static_cast<Index>(j)) += w * v;
        }
      }
    }
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) out.emplace_back(rows[i], rows[j], local(static_cast<Index>(i), static_cast<Index>(j)));
  }
}

void add_ghost(const SpaceLayout& layout, const FormCoefficients& form, std::vector<Triplet>& out) {
  const CutTopology& topo = layout.topology();
  const Mesh& m = layout.mesh();
  for (Side s : {Side::minus, Side::plus}) {
    const double coeff = form.ghost[static_cast<std::size_t>(index_of(s))];
    if (coeff == 0.0) continue;
    for (Index e : topo.ghost_edges(s)) {
      const Edge& edge = m.edge(e);
      const Point n1 = edge_normal(m, edge);
      // [[grad v]] = (grad v|T1 - grad v|T2) . n1, constant along the edge
      std::array<Index, 4> rows{-1, -1, -1, -1};
      std::array<double, 4> jump{};
      std::size_t used = 0;
      auto accumulate = [&](Index row, double value) {
        for (std::size_t k = 0; k < used; ++k) {
          if (rows[k] == row) {
            jump[k] += value;
            return;
          }
        }
        rows[used] = row;
        jump[used++] = value;
      };
      const LocalSide l1 = local_side(layout, edge.elements[0], s);
      const LocalSide l2 = local_side(layout, edge.elements[1], s);
      for (std::size_t k = 0; k < 3; ++k) accumulate(l1.rows[k], l1.grads[k].dot(n1));
      for (std::size_t k = 0; k < 3; ++k) accumulate(l2.rows[k], -l2.grads[k].dot(n1));
      const double scale = coeff * edge.length * edge.length;
      for (std::size_t i = 0; i < used; ++i)
        for (std::size_t j = 0; j < used; ++j) out.emplace_back(rows[i], rows[j], scale * jump[i] * jump[j]);
    }
  }
}

}  // namespace

Index full_index(const SpaceLayout& layout, Side s, Index dof) {
  return s == Side::minus ? dof : layout.num_dofs(Side::minus) + dof;
}

FormCoefficients nitsche_form(const ProblemSpec& spec) {
  spec.validate();
  const auto w = spec.weights();
  FormCoefficients f;
  f.volume = {spec.rho_minus, spec.rho_plus};
  f.consistency = {w[0] * spec.rho_minus, w[1] * spec.rho_plus};
  f.penalty = spec.gamma * spec.penalty_rho();
  f.ghost = {spec.gamma_g_minus * spec.rho_minus, spec.gamma_g_plus * spec.rho_plus};
  return f;
}

FormCoefficients energy_norm_form(const ProblemSpec& spec, bool augmented) {
  FormCoefficients f;
  f.volume = {spec.rho_minus, spec.rho_plus};
  f.penalty = spec.rho_minus;
  f.ghost = {spec.rho_minus, spec.rho_plus};
  f.normal_flux = augmented ? spec.rho_minus : 0.0;
  return f;
}

SparseMatrix assemble_full_operator(const SpaceLayout& layout, const FormCoefficients& form) {
  const Index n = layout.num_dofs(Side::minus) + layout.num_dofs(Side::plus);
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(9 * layout.mesh().num_elements() + 36 * static_cast<Index>(layout.topology().cut_elements().size())));
  add_volume(layout, form, triplets);
  add_interface(layout, form, triplets);
  add_ghost(layout, form, triplets);
  SparseMatrix a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

SparseMatrix restrict_to_free(const SpaceLayout& layout, const SparseMatrix& full) {
  std::vector<Index> map(static_cast<std::size_t>(full.rows()), -1);
  for (Side s : {Side::minus, Side::plus})
    for (Index d = 0; d < layout.num_dofs(s); ++d)
      map[static_cast<std::size_t>(full_index(layout, s, d))] = layout.free_index(s, d);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(full.nonZeros()));
  for (Index c = 0; c < full.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(full, c); it; ++it) {
      const Index r = map[static_cast<std::size_t>(it.row())];
      const Index k = map[static_cast<std::size_t>(it.col())];
      if (r >= 0 && k >= 0) triplets.emplace_back(r, k, it.value());
    }
  }
  SparseMatrix out(layout.num_free(), layout.num_free());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Vector restrict_to_free(const SpaceLayout& layout, const Vector& full) {
  Vector out(layout.num_free());
  for (Side s : {Side::minus, Side::plus}) {
    for (Index d = 0; d < layout.num_dofs(s); ++d) {
      const Index f = layout.free_index(s, d);
      if (f >= 0) out[f] = full[full_index(layout, s, d)];
    }
  }
  return out;
}

SparseMatrix assemble_bilinear(const SpaceLayout& layout, const ProblemSpec& spec) {
  return restrict_to_free(layout, assemble_full_operator(layout, nitsche_form(spec)));
}

Vector assemble_full_load(const SpaceLayout& layout, const ProblemSpec& spec) {
  const CutTopology& topo = layout.topology();
  const Mesh& m = layout.mesh();
  Vector b = Vector::Zero(layout.num_dofs(Side::minus) + layout.num_dofs(Side::plus));

  for (Side s : {Side::minus, Side::plus}) {
    const ScalarField& f = spec.f(s);
    if (!f) continue;
    for (Index t : topo.elements(s)) {
      const QuadratureRule rule = cut_volume_quadrature(topo, t, s, TriangleRule::degree5);
      const LocalSide ls = local_side(layout, t, s);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double fw = f(rule.points[q]) * rule.weights[q];
        const auto lambda = m.barycentric(t, rule.points[q]);
        for (std::size_t k = 0; k < 3; ++k) b[ls.rows[k]] += fw * lambda[k];
      }
    }
  }

  if (!spec.alpha && !spec.beta) return b;

  const auto w = spec.weights();
  const std::array<double, 2> consistency = {w[0] * spec.rho_minus, w[1] * spec.rho_plus};
  const double penalty = spec.gamma * spec.penalty_rho();
  for (Index t : topo.cut_elements()) {
    const InterfaceRule ir = interface_quadrature(topo, t, 3);
    const Point& n = ir.normal_minus;
    const double h_t = m.diameter(t);
    const LocalSide lm = local_side(layout, t, Side::minus);
    const LocalSide lp = local_side(layout, t, Side::plus);
    for (std::size_t q = 0; q < ir.rule.size(); ++q) {
      const Point& x = ir.rule.points[q];
      const double wq = ir.rule.weights[q];
      const double alpha = spec.alpha ? spec.alpha(x) : 0.0;
      const double beta = spec.beta ? spec.beta(x, n) : 0.0;
      const auto lambda = m.barycentric(t, x);
      for (std::size_t k = 0; k < 3; ++k) {
        // flux-jump data, split by the interface weights
        b[lp.rows[k]] += wq * w[0] * beta * lambda[k];
        b[lm.rows[k]] += wq * w[1] * beta * lambda[k];
        // symmetry and penalty terms acting on the solution jump
        b[lm.rows[k]] += wq * alpha * (consistency[0] * lm.grads[k].dot(n) - penalty / h_t * lambda[k]);
        b[lp.rows[k]] += wq * alpha * (consistency[1] * lp.grads[k].dot(n) + penalty / h_t * lambda[k]);
      }
    }
  }
  return b;
}

Vector assemble_load(const SpaceLayout& layout, const ProblemSpec& spec) {
  return restrict_to_free(layout, assemble_full_load(layout, spec));
}

Vector dirichlet_values(const SpaceLayout& layout, const ProblemSpec& spec) {
  Vector g = Vector::Zero(layout.num_dofs(Side::minus) + layout.num_dofs(Side::plus));
  if (!spec.dirichlet) return g;
  for (Side s : {Side::minus, Side::plus})
    for (Index d = 0; d < layout.num_dofs(s); ++d)
      if (layout.is_dirichlet(s, d)) g[full_index(layout, s, d)] = spec.dirichlet(layout.mesh().node(layout.node_of(s, d)));
  return g;
}

SparseSystem assemble_system(const SpaceLayout& layout, const ProblemSpec& spec) {
  const SparseMatrix full = assemble_full_operator(layout, nitsche_form(spec));
  Vector load = assemble_full_load(layout, spec);
  Vector lift = dirichlet_values(layout, spec);
  load -= full * lift;
  return {restrict_to_free(layout, full), restrict_to_free(layout, load), std::move(lift)};
}

double symmetry_defect(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  const SparseMatrix diff = a - at;
  double dmax = 0.0;
  double amax = 0.0;
  for (Index c = 0; c < diff.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(diff, c); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  for (Index c = 0; c < a.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(a, c); it; ++it) amax = std::max(amax, std::abs(it.value()));
  return amax == 0.0 ? 0.0 : dmax / amax;
}

void write_coordinate(std::ostream& out, const SparseMatrix& a) {
  out.precision(17);
  for (Index c = 0; c < a.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(a, c); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace cutfem
