#pragma once

#include "cutfem/cut_topology.hpp"

#include <array>
#include <functional>
#include <vector>

namespace cutfem {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;

/// DOF bookkeeping for V_h = V_h^- x V_h^+. Each side numbers the nodes of
/// its active elements; nodes of cut elements carry one DOF per side.
/// Boundary nodes of the side whose subdomain reaches the outer boundary
/// are Dirichlet DOFs and are removed from the reduced system.
class SpaceLayout {
 public:
  explicit SpaceLayout(const CutTopology& topology);

  const CutTopology& topology() const noexcept { return *topology_; }
  const Mesh& mesh() const noexcept { return topology_->mesh(); }

  Index num_dofs(Side s) const { return static_cast<Index>(side(s).dof_node.size()); }
  /// -1 when the node carries no DOF on that side.
  Index dof(Side s, Index node) const { return side(s).node_dof[static_cast<std::size_t>(node)]; }
  Index node_of(Side s, Index dof) const { return side(s).dof_node.at(static_cast<std::size_t>(dof)); }
  bool is_dirichlet(Side s, Index dof) const { return side(s).dirichlet.at(static_cast<std::size_t>(dof)); }

  /// Reduced-system row of a side DOF, or -1 for Dirichlet DOFs. Free minus
  /// DOFs come first, then free plus DOFs.
  Index free_index(Side s, Index dof) const { return side(s).free.at(static_cast<std::size_t>(dof)); }
  Index num_free() const noexcept { return num_free_; }
  Index num_free(Side s) const noexcept { return side(s).num_free; }

 private:
  struct PerSide {
    std::vector<Index> node_dof;
    std::vector<Index> dof_node;
    std::vector<bool> dirichlet;
    std::vector<Index> free;
    Index num_free = 0;
  };
  const PerSide& side(Side s) const { return sides_[static_cast<std::size_t>(index_of(s))]; }

  const CutTopology* topology_;
  std::array<PerSide, 2> sides_;
  Index num_free_ = 0;
};

/// Discrete solution (u_h^-, u_h^+), one coefficient per side DOF.
struct FieldPair {
  const SpaceLayout* layout = nullptr;
  std::array<Vector, 2> values;

  explicit FieldPair(const SpaceLayout& l);

  Vector& side(Side s) { return values[static_cast<std::size_t>(index_of(s))]; }
  const Vector& side(Side s) const { return values[static_cast<std::size_t>(index_of(s))]; }

  /// Local coefficients of element t on side s (element must be active on s).
  std::array<double, 3> local(Index t, Side s) const;
  /// Constant gradient on element t.
  Point gradient(Index t, Side s) const;
  double value(Index t, Side s, const Point& x) const;

  /// Scatter a reduced-system vector into the free DOFs.
  void set_free(const Vector& reduced);
  Vector free_values() const;
};

struct PointValue {
  double value;
  Point gradient;
};

/// Nodal interpolation of f on the DOFs of one side.
Vector interpolate(const SpaceLayout& layout, Side side, const ScalarField& f);

/// Interpolates per-side functions into a FieldPair (Dirichlet DOFs included).
FieldPair interpolate(const SpaceLayout& layout, const ScalarField& minus, const ScalarField& plus);

/// Value and gradient of the side field at x. Throws if x is outside Omega_h^side.
PointValue evaluate(const FieldPair& field, Side side, const Point& x);

}  // namespace cutfem
