#pragma once

#include "cutfem/level_set.hpp"
#include "cutfem/mesh.hpp"
#include "cutfem/quadrature.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace cutfem {

enum class ElementKind { minus, plus, cut };

/// Geometry of one cut element under the straight-chord interface model.
struct CutGeometry {
  std::array<Point, 2> chord;
  /// Clipped sub-polygons T ∩ Omega^-, T ∩ Omega^+ (counterclockwise, convex).
  std::array<std::vector<Point>, 2> parts;
  /// Unit normal to the chord pointing out of Omega^-.
  Point normal_minus;

  double chord_length() const { return (chord[1] - chord[0]).norm(); }
  const std::vector<Point>& part(Side s) const { return parts[static_cast<std::size_t>(index_of(s))]; }
};

struct ClassifyOptions {
  /// When false, edges crossing the interface several times are flagged
  /// instead of rejected. The crossing used is the first bracketed root.
  bool strict = true;
};

/// Element and edge classification relative to the interface.
class CutTopology {
 public:
  CutTopology(const Mesh& mesh, const LevelSet& ls, const ClassifyOptions& options = {});

  const Mesh& mesh() const noexcept { return *mesh_; }
  const LevelSet& level_set() const noexcept { return ls_; }

  ElementKind kind(Index t) const { return kinds_.at(static_cast<std::size_t>(t)); }
  bool is_cut(Index t) const { return kind(t) == ElementKind::cut; }
  /// T ∩ Omega^side is non-empty.
  bool touches(Index t, Side s) const;
  const CutGeometry& geometry(Index t) const;

  /// T_h^-, T_h^+ and T_h^Gamma in increasing element order.
  const std::vector<Index>& elements(Side s) const { return elements_[static_cast<std::size_t>(index_of(s))]; }
  const std::vector<Index>& cut_elements() const noexcept { return cut_; }
  /// Ghost-penalty edge sets E_h^{Gamma,-}, E_h^{Gamma,+} in increasing edge order.
  const std::vector<Index>& ghost_edges(Side s) const { return ghost_[static_cast<std::size_t>(index_of(s))]; }

  /// |T ∩ Omega^side| (exact for the chord model).
  double part_area(Index t, Side s) const;

  /// Elements whose classification relied on a multi-crossing edge.
  const std::vector<Index>& ambiguous_elements() const noexcept { return ambiguous_; }
  /// Cut elements demoted to uncut because their chord was degenerate.
  Index degenerate_chords() const noexcept { return degenerate_; }

  void write_csv(std::ostream& out) const;

 private:
  const Mesh* mesh_;
  LevelSet ls_;
  std::vector<ElementKind> kinds_;
  std::vector<Index> geometry_slot_;
  std::vector<CutGeometry> geometry_;
  std::array<std::vector<Index>, 2> elements_;
  std::vector<Index> cut_;
  std::array<std::vector<Index>, 2> ghost_;
  std::vector<Index> ambiguous_;
  Index degenerate_ = 0;
};

inline CutTopology classify(const Mesh& mesh, const LevelSet& ls, const ClassifyOptions& options = {}) {
  return CutTopology(mesh, ls, options);
}

/// Volume rule on T ∩ Omega^side. Throws if the element does not meet that side.
QuadratureRule cut_volume_quadrature(const CutTopology& topology, Index element, Side side,
                                     TriangleRule kind = TriangleRule::mid_edge);

struct InterfaceRule {
  QuadratureRule rule;
  Point normal_minus;
};

/// Gauss rule on the chord of a cut element, with the normal pointing out of Omega^-.
InterfaceRule interface_quadrature(const CutTopology& topology, Index element, int points = 2);

struct GhostEdge {
  Index edge;
  double length;
  std::array<Index, 2> elements;
};

std::vector<GhostEdge> ghost_edges(const CutTopology& topology, Side side);

}  // namespace cutfem
