#pragma once

#include "cutfem/common.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace cutfem {

struct Edge {
  std::array<Index, 2> nodes;
  // elements[1] == -1 on the boundary
  std::array<Index, 2> elements{-1, -1};
  double length = 0.0;

  bool is_boundary() const noexcept { return elements[1] < 0; }
};

/// Uniform triangulation of (-1,1)^2. Every square cell is
/// split along its lower-left to upper-right diagonal. Nodes and cells are
/// numbered row-major starting at (-1,-1).
class Mesh {
 public:
  /// `cells` square cells per side.
  explicit Mesh(int cells);

  int cells_per_side() const noexcept { return cells_; }
  double cell_size() const noexcept { return cell_size_; }
  /// Largest element diameter.
  double h() const noexcept;

  Index num_nodes() const noexcept { return static_cast<Index>(nodes_.size()); }
  Index num_elements() const noexcept { return static_cast<Index>(elements_.size()); }
  Index num_edges() const noexcept { return static_cast<Index>(edges_.size()); }

  const Point& node(Index i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Point>& nodes() const noexcept { return nodes_; }
  const std::array<Index, 3>& element(Index t) const { return elements_.at(static_cast<std::size_t>(t)); }
  const std::vector<std::array<Index, 3>>& elements() const noexcept { return elements_; }
  const Edge& edge(Index e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Edge k of element t joins local vertices k and (k+1)%3.
  Index element_edge(Index t, int k) const { return element_edges_.at(static_cast<std::size_t>(t))[static_cast<std::size_t>(k)]; }

  bool is_boundary_node(Index i) const { return boundary_node_.at(static_cast<std::size_t>(i)); }

  std::array<Point, 3> vertices(Index t) const;
  double area(Index t) const;
  /// Element diameter (longest edge).
  double diameter(Index t) const;
  /// Radius of the inscribed circle.
  double inradius(Index t) const;

  /// Constant gradients of the three P1 hat functions on element t.
  std::array<Point, 3> shape_gradients(Index t) const;
  /// Barycentric coordinates of x with respect to element t.
  std::array<double, 3> barycentric(Index t, const Point& x) const;

  /// All elements having `node` as a vertex.
  std::vector<Index> node_patch(Index node) const;

  /// Element containing x (closed square), found by grid arithmetic. Points
  /// on shared edges map to a deterministic choice.
  Index locate(const Point& x) const;

  void write_text(std::ostream& out) const;

 private:
  int cells_;
  double cell_size_;
  std::vector<Point> nodes_;
  std::vector<std::array<Index, 3>> elements_;
  std::vector<Edge> edges_;
  std::vector<std::array<Index, 3>> element_edges_;
  std::vector<std::vector<Index>> node_elements_;
  std::vector<bool> boundary_node_;
};

/// Cells per side used for a refinement level. The mesh diameter is
/// h = 2^-(level+3/2), so the cell size is 2^-(level+2).
int cells_for_level(int level);

/// Nominal mesh parameter 2^-(level+3/2).
double nominal_h(int level);

Mesh build_mesh(int level);

}  // namespace cutfem
