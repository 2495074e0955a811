#include "cutfem/cut_topology.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <ostream>

namespace cutfem {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

Point centroid(const std::vector<Point>& polygon) {
  Point c = Point::Zero();
  for (const auto& p : polygon) c += p;
  return c / static_cast<double>(polygon.size());
}

}  // namespace

CutTopology::CutTopology(const Mesh& mesh, const LevelSet& ls, const ClassifyOptions& options)
    : mesh_(&mesh), ls_(ls) {
  const Side inside = ls.inside_side();
  const Side outside = other(inside);
  const auto inside_slot = static_cast<std::size_t>(index_of(inside));
  const auto outside_slot = static_cast<std::size_t>(index_of(outside));

  std::vector<double> phi(static_cast<std::size_t>(mesh.num_nodes()));
  for (Index i = 0; i < mesh.num_nodes(); ++i) phi[static_cast<std::size_t>(i)] = ls(mesh.node(i));

  // Crossings are computed once per edge so that neighbours share the chord endpoints.
  std::vector<std::optional<EdgeScan>> scans(static_cast<std::size_t>(mesh.num_edges()));
  auto scan_of = [&](Index e) -> const EdgeScan& {
    auto& slot = scans[static_cast<std::size_t>(e)];
    if (!slot) {
      const Edge& edge = mesh.edge(e);
      slot = scan_edge(ls, mesh.node(edge.nodes[0]), mesh.node(edge.nodes[1]));
    }
    return *slot;
  };

  kinds_.resize(static_cast<std::size_t>(mesh.num_elements()));
  geometry_slot_.assign(static_cast<std::size_t>(mesh.num_elements()), -1);
  const double degenerate_length = 1e-14 * mesh.h();

  for (Index t = 0; t < mesh.num_elements(); ++t) {
    const auto& tri = mesh.element(t);
    std::array<int, 3> s;
    double min_abs = INFINITY;
    for (int k = 0; k < 3; ++k) {
      const double v = phi[static_cast<std::size_t>(tri[static_cast<std::size_t>(k)])];
      s[static_cast<std::size_t>(k)] = sign_of(v);
      min_abs = std::min(min_abs, std::abs(v));
    }

    bool ambiguous = false;
    // Edges near the interface are sampled for hidden double crossings.
    if (min_abs < 2.0 * mesh.diameter(t)) {
      for (int k = 0; k < 3; ++k) {
        const Index e = mesh.element_edge(t, k);
        if (scan_of(e).sign_changes > 1) {
          if (options.strict) {
            const Edge& edge = mesh.edge(e);
            (void)edge_root(ls, mesh.node(edge.nodes[0]), mesh.node(edge.nodes[1]));
          }
          ambiguous = true;
        }
      }
    }
    if (ambiguous) ambiguous_.push_back(t);

    const bool has_neg = std::ranges::any_of(s, [](int v) { return v < 0; });
    const bool has_pos = std::ranges::any_of(s, [](int v) { return v > 0; });
    if (!has_neg && !has_pos) throw GeometryError("element " + std::to_string(t) + " lies entirely on the interface");
    if (!(has_neg && has_pos)) {
      kinds_[static_cast<std::size_t>(t)] = has_neg ? static_cast<ElementKind>(inside) : static_cast<ElementKind>(outside);
      continue;
    }

    CutGeometry geo;
    std::vector<Point> crossings;
    for (int k = 0; k < 3; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const auto kn = static_cast<std::size_t>((k + 1) % 3);
      const Point& p = mesh.node(tri[ks]);
      if (s[ks] <= 0) geo.parts[inside_slot].push_back(p);
      if (s[ks] >= 0) geo.parts[outside_slot].push_back(p);
      if (s[ks] == 0) crossings.push_back(p);
      if (s[ks] * s[kn] < 0) {
        const EdgeScan& scan = scan_of(mesh.element_edge(t, k));
        if (!scan.root) throw GeometryError("missing crossing on a sign-changing edge of element " + std::to_string(t));
        geo.parts[inside_slot].push_back(*scan.root);
        geo.parts[outside_slot].push_back(*scan.root);
        crossings.push_back(*scan.root);
      }
    }
    if (crossings.size() != 2)
      throw GeometryError("element " + std::to_string(t) + " has " + std::to_string(crossings.size()) +
                          " interface crossings");
    geo.chord = {crossings[0], crossings[1]};

    if (geo.chord_length() < degenerate_length) {
      ++degenerate_;
      std::clog << "cutfem: degenerate chord in element " << t << ", treated as uncut\n";
      const double inside_area = polygon_area(geo.parts[inside_slot]);
      const double outside_area = polygon_area(geo.parts[outside_slot]);
      kinds_[static_cast<std::size_t>(t)] =
          static_cast<ElementKind>(inside_area > outside_area ? inside : outside);
      continue;
    }

    const Point d = geo.chord[1] - geo.chord[0];
    Point n(d.y(), -d.x());
    n.normalize();
    const Point mid = 0.5 * (geo.chord[0] + geo.chord[1]);
    if (n.dot(mid - centroid(geo.part(Side::minus))) < 0.0) n = -n;
    geo.normal_minus = n;

    kinds_[static_cast<std::size_t>(t)] = ElementKind::cut;
    geometry_slot_[static_cast<std::size_t>(t)] = static_cast<Index>(geometry_.size());
    geometry_.push_back(std::move(geo));
    cut_.push_back(t);
  }

  for (Index t = 0; t < mesh.num_elements(); ++t)
    for (Side side : {Side::minus, Side::plus})
      if (touches(t, side)) elements_[static_cast<std::size_t>(index_of(side))].push_back(t);

  for (Index e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.is_boundary()) continue;
    const Index t1 = edge.elements[0];
    const Index t2 = edge.elements[1];
    if (!is_cut(t1) && !is_cut(t2)) continue;
    for (Side side : {Side::minus, Side::plus})
      if (touches(t1, side) && touches(t2, side)) ghost_[static_cast<std::size_t>(index_of(side))].push_back(e);
  }
}

bool CutTopology::touches(Index t, Side s) const {
  const ElementKind k = kind(t);
  return k == ElementKind::cut || k == static_cast<ElementKind>(s);
}

const CutGeometry& CutTopology::geometry(Index t) const {
  const Index slot = geometry_slot_.at(static_cast<std::size_t>(t));
  if (slot < 0) throw std::invalid_argument("element " + std::to_string(t) + " is not cut");
  return geometry_[static_cast<std::size_t>(slot)];
}

double CutTopology::part_area(Index t, Side s) const {
  if (is_cut(t)) return polygon_area(geometry(t).part(s));
  return touches(t, s) ? mesh_->area(t) : 0.0;
}

void CutTopology::write_csv(std::ostream& out) const {
  out.precision(17);
  out << "element,x0,y0,x1,y1,area_minus,area_plus\n";
  for (Index t : cut_) {
    const auto& g = geometry(t);
    out << t << ',' << g.chord[0].x() << ',' << g.chord[0].y() << ',' << g.chord[1].x() << ',' << g.chord[1].y()
        << ',' << part_area(t, Side::minus) << ',' << part_area(t, Side::plus) << '\n';
  }
}

QuadratureRule cut_volume_quadrature(const CutTopology& topology, Index element, Side side, TriangleRule kind) {
  if (!topology.touches(element, side))
    throw std::invalid_argument("element " + std::to_string(element) + " does not meet Omega^" +
                                std::string(to_string(side)));
  if (topology.is_cut(element)) return polygon_rule(topology.geometry(element).part(side), kind);
  const auto v = topology.mesh().vertices(element);
  return triangle_rule(v[0], v[1], v[2], kind);
}

InterfaceRule interface_quadrature(const CutTopology& topology, Index element, int points) {
  const auto& g = topology.geometry(element);
  return {segment_rule(g.chord[0], g.chord[1], points), g.normal_minus};
}

std::vector<GhostEdge> ghost_edges(const CutTopology& topology, Side side) {
  std::vector<GhostEdge> out;
  for (Index e : topology.ghost_edges(side)) {
    const Edge& edge = topology.mesh().edge(e);
    out.push_back({e, edge.length, edge.elements});
  }
  return out;
}

}  // namespace cutfem
