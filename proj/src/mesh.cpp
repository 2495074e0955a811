#include "cutfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

namespace cutfem {

std::string_view to_string(Side s) noexcept { return s == Side::minus ? "minus" : "plus"; }

Side side_from_string(std::string_view name) {
  if (name == "minus" || name == "-") return Side::minus;
  if (name == "plus" || name == "+") return Side::plus;
  throw ConfigError("unknown side '" + std::string(name) + "' (expected minus|plus)");
}

int cells_for_level(int level) {
  if (level < 1 || level > 8) throw ConfigError("mesh level must be in 1..8, got " + std::to_string(level));
  return 1 << (level + 3);
}

double nominal_h(int level) { return std::pow(2.0, -(level + 1.5)); }

Mesh build_mesh(int level) { return Mesh(cells_for_level(level)); }

Mesh::Mesh(int cells) : cells_(cells), cell_size_(2.0 / cells) {
  if (cells < 1) throw ConfigError("mesh needs at least one cell per side");
  const Index n = cells;
  const Index stride = n + 1;
  nodes_.reserve(static_cast<std::size_t>(stride * stride));
  boundary_node_.reserve(static_cast<std::size_t>(stride * stride));
  for (Index j = 0; j <= n; ++j) {
    for (Index i = 0; i <= n; ++i) {
      // i*cell_size with an exact endpoint at +1
      const double x = (i == n) ? 1.0 : -1.0 + static_cast<double>(i) * cell_size_;
      const double y = (j == n) ? 1.0 : -1.0 + static_cast<double>(j) * cell_size_;
      nodes_.emplace_back(x, y);
      boundary_node_.push_back(i == 0 || j == 0 || i == n || j == n);
    }
  }

  elements_.reserve(static_cast<std::size_t>(2 * n * n));
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const Index ll = j * stride + i;
      const Index lr = ll + 1;
      const Index ul = ll + stride;
      const Index ur = ul + 1;
      elements_.push_back({ll, lr, ur});
      elements_.push_back({ll, ur, ul});
    }
  }

  node_elements_.resize(nodes_.size());
  for (Index t = 0; t < num_elements(); ++t)
    for (Index v : elements_[static_cast<std::size_t>(t)]) node_elements_[static_cast<std::size_t>(v)].push_back(t);

  std::unordered_map<Index, Index> edge_ids;
  edge_ids.reserve(static_cast<std::size_t>(3 * n * n + 2 * n));
  element_edges_.resize(elements_.size());
  for (Index t = 0; t < num_elements(); ++t) {
    const auto& tri = elements_[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      Index a = tri[static_cast<std::size_t>(k)];
      Index b = tri[static_cast<std::size_t>((k + 1) % 3)];
      if (a > b) std::swap(a, b);
      const Index key = a * num_nodes() + b;
      auto [it, inserted] = edge_ids.try_emplace(key, static_cast<Index>(edges_.size()));
      if (inserted) {
        Edge e;
        e.nodes = {a, b};
        e.elements = {t, -1};
        e.length = (node(a) - node(b)).norm();
        edges_.push_back(e);
      } else {
        edges_[static_cast<std::size_t>(it->second)].elements[1] = t;
      }
      element_edges_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = it->second;
    }
  }
}

double Mesh::h() const noexcept { return cell_size_ * std::sqrt(2.0); }

std::array<Point, 3> Mesh::vertices(Index t) const {
  const auto& tri = element(t);
  return {node(tri[0]), node(tri[1]), node(tri[2])};
}

double Mesh::area(Index t) const {
  const auto v = vertices(t);
  const Point a = v[1] - v[0];
  const Point b = v[2] - v[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

double Mesh::diameter(Index t) const {
  const auto v = vertices(t);
  return std::max({(v[0] - v[1]).norm(), (v[1] - v[2]).norm(), (v[2] - v[0]).norm()});
}

double Mesh::inradius(Index t) const {
  const auto v = vertices(t);
  const double perimeter = (v[0] - v[1]).norm() + (v[1] - v[2]).norm() + (v[2] - v[0]).norm();
  return 2.0 * area(t) / perimeter;
}

std::array<Point, 3> Mesh::shape_gradients(Index t) const {
  const auto v = vertices(t);
  const double twice_area = 2.0 * area(t);
  std::array<Point, 3> g;
  for (int k = 0; k < 3; ++k) {
    const Point& p = v[static_cast<std::size_t>((k + 1) % 3)];
    const Point& q = v[static_cast<std::size_t>((k + 2) % 3)];
    // gradient of the hat function is the inward normal of the opposite edge
    g[static_cast<std::size_t>(k)] = Point(p.y() - q.y(), q.x() - p.x()) / twice_area;
  }
  return g;
}

std::array<double, 3> Mesh::barycentric(Index t, const Point& x) const {
  const auto v = vertices(t);
  const auto g = shape_gradients(t);
  std::array<double, 3> lambda;
  for (int k = 0; k < 3; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    // lambda_k vanishes on the opposite edge, which contains vertex k+1
    lambda[ks] = g[ks].dot(x - v[static_cast<std::size_t>((k + 1) % 3)]);
  }
  return lambda;
}

std::vector<Index> Mesh::node_patch(Index node) const {
  if (node < 0 || node >= num_nodes()) throw std::out_of_range("node index " + std::to_string(node) + " out of range");
  return node_elements_[static_cast<std::size_t>(node)];
}

Index Mesh::locate(const Point& x) const {
  constexpr double slack = 1e-12;
  if (!(x.x() >= -1.0 - slack && x.x() <= 1.0 + slack && x.y() >= -1.0 - slack && x.y() <= 1.0 + slack))
    throw std::out_of_range("point outside the mesh domain");
  const double sx = (x.x() + 1.0) / cell_size_;
  const double sy = (x.y() + 1.0) / cell_size_;
  const Index i = std::clamp<Index>(static_cast<Index>(std::floor(sx)), 0, cells_ - 1);
  const Index j = std::clamp<Index>(static_cast<Index>(std::floor(sy)), 0, cells_ - 1);
  const double fx = sx - static_cast<double>(i);
  const double fy = sy - static_cast<double>(j);
  const Index cell = j * cells_ + i;
  // lower triangle lies below the diagonal fy <= fx
  return 2 * cell + (fy <= fx ? 0 : 1);
}

void Mesh::write_text(std::ostream& out) const {
  out.precision(17);
  for (const auto& p : nodes_) out << "v " << p.x() << ' ' << p.y() << '\n';
  for (const auto& t : elements_) out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace cutfem
