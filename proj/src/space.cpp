#include "cutfem/space.hpp"

namespace cutfem {

SpaceLayout::SpaceLayout(const CutTopology& topology) : topology_(&topology) {
  const Mesh& m = topology.mesh();
  const Side exterior = other(topology.level_set().inclusion());
  for (Side s : {Side::minus, Side::plus}) {
    PerSide& ps = sides_[static_cast<std::size_t>(index_of(s))];
    ps.node_dof.assign(static_cast<std::size_t>(m.num_nodes()), -1);
    std::vector<bool> active(static_cast<std::size_t>(m.num_nodes()), false);
    for (Index t : topology.elements(s))
      for (Index v : m.element(t)) active[static_cast<std::size_t>(v)] = true;
    for (Index i = 0; i < m.num_nodes(); ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      ps.node_dof[static_cast<std::size_t>(i)] = static_cast<Index>(ps.dof_node.size());
      ps.dof_node.push_back(i);
      ps.dirichlet.push_back(s == exterior && m.is_boundary_node(i));
    }
  }

  for (Side s : {Side::minus, Side::plus}) {
    PerSide& ps = sides_[static_cast<std::size_t>(index_of(s))];
    ps.free.assign(ps.dof_node.size(), -1);
    for (std::size_t d = 0; d < ps.dof_node.size(); ++d) {
      if (ps.dirichlet[d]) continue;
      ps.free[d] = num_free_++;
      ++ps.num_free;
    }
  }
}

FieldPair::FieldPair(const SpaceLayout& l) : layout(&l) {
  for (Side s : {Side::minus, Side::plus}) side(s) = Vector::Zero(l.num_dofs(s));
}

std::array<double, 3> FieldPair::local(Index t, Side s) const {
  const auto& tri = layout->mesh().element(t);
  std::array<double, 3> c;
  for (int k = 0; k < 3; ++k) {
    const Index d = layout->dof(s, tri[static_cast<std::size_t>(k)]);
    if (d < 0) throw std::out_of_range("element " + std::to_string(t) + " is not active on side " + std::string(to_string(s)));
    c[static_cast<std::size_t>(k)] = side(s)[d];
  }
  return c;
}

Point FieldPair::gradient(Index t, Side s) const {
  const auto c = local(t, s);
  const auto g = layout->mesh().shape_gradients(t);
  return c[0] * g[0] + c[1] * g[1] + c[2] * g[2];
}

double FieldPair::value(Index t, Side s, const Point& x) const {
  const auto c = local(t, s);
  const auto lambda = layout->mesh().barycentric(t, x);
  return c[0] * lambda[0] + c[1] * lambda[1] + c[2] * lambda[2];
}

void FieldPair::set_free(const Vector& reduced) {
  for (Side s : {Side::minus, Side::plus}) {
    Vector& v = side(s);
    for (Index d = 0; d < v.size(); ++d) {
      const Index f = layout->free_index(s, d);
      if (f >= 0) v[d] = reduced[f];
    }
  }
}

Vector FieldPair::free_values() const {
  Vector out(layout->num_free());
  for (Side s : {Side::minus, Side::plus}) {
    const Vector& v = side(s);
    for (Index d = 0; d < v.size(); ++d) {
      const Index f = layout->free_index(s, d);
      if (f >= 0) out[f] = v[d];
    }
  }
  return out;
}

Vector interpolate(const SpaceLayout& layout, Side side, const ScalarField& f) {
  Vector out(layout.num_dofs(side));
  for (Index d = 0; d < out.size(); ++d) out[d] = f(layout.mesh().node(layout.node_of(side, d)));
  return out;
}

FieldPair interpolate(const SpaceLayout& layout, const ScalarField& minus, const ScalarField& plus) {
  FieldPair field(layout);
  field.side(Side::minus) = interpolate(layout, Side::minus, minus);
  field.side(Side::plus) = interpolate(layout, Side::plus, plus);
  return field;
}

PointValue evaluate(const FieldPair& field, Side side, const Point& x) {
  const Mesh& m = field.layout->mesh();
  const CutTopology& topo = field.layout->topology();
  Index t = m.locate(x);
  if (!topo.touches(t, side)) {
    // x may sit on an edge or vertex shared with an active neighbour
    bool found = false;
    for (Index v : m.element(t)) {
      for (Index nb : m.node_patch(v)) {
        if (found || nb == t || !topo.touches(nb, side)) continue;
        const auto lambda = m.barycentric(nb, x);
        if (lambda[0] >= -1e-12 && lambda[1] >= -1e-12 && lambda[2] >= -1e-12) {
          t = nb;
          found = true;
        }
      }
    }
    if (!found) throw std::out_of_range("point lies outside Omega_h^" + std::string(to_string(side)));
  }
  return {field.value(t, side, x), field.gradient(t, side)};
}

}  // namespace cutfem
