#include "cutfem/norms.hpp"

#include "cutfem/assembly.hpp"

#include <algorithm>
#include <cmath>

namespace cutfem {

namespace {

const ExactSolution& require_exact(const ProblemSpec& spec) {
  if (!spec.exact) throw ConfigError("error measurement needs an exact solution");
  return *spec.exact;
}

// Squared interface, ghost and normal-flux parts of the energy norm of u - v.
// The exact solution has no gradient jumps across mesh edges, so the ghost
// part only sees v.
std::array<double, 3> energy_extras(const ProblemSpec& spec, const FieldPair& v) {
  const ExactSolution& ex = require_exact(spec);
  const SpaceLayout& layout = *v.layout;
  const CutTopology& topo = layout.topology();
  const Mesh& m = layout.mesh();

  double interface = 0.0;
  double normal_flux = 0.0;
  for (Index t : topo.cut_elements()) {
    const InterfaceRule ir = interface_quadrature(topo, t, 3);
    const double h_t = m.diameter(t);
    const Point gm = v.gradient(t, Side::minus);
    for (std::size_t q = 0; q < ir.rule.size(); ++q) {
      const Point& x = ir.rule.points[q];
      const double jump_exact = ex.u(Side::plus, x) - ex.u(Side::minus, x);
      const double jump_h = v.value(t, Side::plus, x) - v.value(t, Side::minus, x);
      const double dj = jump_exact - jump_h;
      interface += ir.rule.weights[q] * spec.rho_minus * dj * dj / h_t;
      const double dn = (ex.grad(Side::minus, x) - gm).dot(ir.normal_minus);
      normal_flux += ir.rule.weights[q] * h_t * spec.rho_minus * dn * dn;
    }
  }

  double ghost = 0.0;
  for (Side s : {Side::minus, Side::plus}) {
    for (Index e : topo.ghost_edges(s)) {
      const Edge& edge = m.edge(e);
      const Point d = m.node(edge.nodes[1]) - m.node(edge.nodes[0]);
      const Point n = Point(d.y(), -d.x()).normalized();
      const double jump = (v.gradient(edge.elements[0], s) - v.gradient(edge.elements[1], s)).dot(n);
      ghost += spec.rho(s) * edge.length * edge.length * jump * jump;
    }
  }
  return {interface, ghost, normal_flux};
}

}  // namespace

ErrorReport error_report(const ProblemSpec& spec, const FieldPair& uh) {
  const ExactSolution& ex = require_exact(spec);
  const SpaceLayout& layout = *uh.layout;
  const CutTopology& topo = layout.topology();
  const Mesh& m = layout.mesh();

  ErrorReport rep;
  rep.h = m.h();
  std::array<double, 2> l2{};
  std::array<double, 2> grad2{};
  double flux_direct = 0.0;

  for (Side s : {Side::minus, Side::plus}) {
    const auto si = static_cast<std::size_t>(index_of(s));
    const double rho = spec.rho(s);
    for (Index t : topo.elements(s)) {
      const QuadratureRule rule = cut_volume_quadrature(topo, t, s, TriangleRule::degree5);
      const Point gh = uh.gradient(t, s);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point& x = rule.points[q];
        const double e = ex.u(s, x) - uh.value(t, s, x);
        const Point ge = ex.grad(s, x) - gh;
        const double w = rule.weights[q];
        l2[si] += w * e * e;
        grad2[si] += w * ge.squaredNorm();
        flux_direct += w * (rho * ge).squaredNorm();
        rep.einf = std::max(rep.einf, std::abs(e));
        rep.efluxinf = std::max(rep.efluxinf, rho * ge.norm());
      }
      // vertices of the physical part
      const std::vector<Point> corners = topo.is_cut(t) ? topo.geometry(t).part(s) : [&] {
        const auto v = m.vertices(t);
        return std::vector<Point>(v.begin(), v.end());
      }();
      for (const Point& x : corners) {
        rep.einf = std::max(rep.einf, std::abs(ex.u(s, x) - uh.value(t, s, x)));
        rep.efluxinf = std::max(rep.efluxinf, rho * (ex.grad(s, x) - gh).norm());
      }
    }
  }

  for (Side s : {Side::minus, Side::plus}) {
    const auto si = static_cast<std::size_t>(index_of(s));
    const double rho = spec.rho(s);
    rep.e0_side[si] = std::sqrt(l2[si]);
    rep.grad_side[si] = std::sqrt(grad2[si]);
    rep.eflux_side[si] = rho * rep.grad_side[si];
  }
  rep.e0 = std::sqrt(l2[0] + l2[1]);
  rep.gradient_error = std::sqrt(grad2[0] + grad2[1]);
  rep.eflux = std::sqrt(spec.rho_minus * spec.rho_minus * grad2[0] + spec.rho_plus * spec.rho_plus * grad2[1]);
  rep.eflux_direct = std::sqrt(flux_direct);
  const double energy2 = spec.rho_minus * grad2[0] + spec.rho_plus * grad2[1];
  rep.esqrt = std::sqrt(energy2);

  const auto extras = energy_extras(spec, uh);
  rep.vnorm = std::sqrt(energy2 + extras[0] + extras[1]);
  rep.vanorm = std::sqrt(energy2 + extras[0] + extras[1] + extras[2]);
  return rep;
}

double energy_error(const ProblemSpec& spec, const FieldPair& v, bool augmented) {
  const ErrorReport rep = error_report(spec, v);
  return augmented ? rep.vanorm : rep.vnorm;
}

std::vector<std::optional<double>> eoc(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size()) throw std::invalid_argument("eoc: errors and mesh sizes differ in length");
  std::vector<std::optional<double>> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double e0 = errors[i];
    const double e1 = errors[i + 1];
    if (!(e0 > 0.0) || !(e1 > 0.0) || !(hs[i] > 0.0) || !(hs[i + 1] > 0.0) || hs[i] == hs[i + 1]) {
      out.emplace_back(std::nullopt);
      continue;
    }
    out.emplace_back(std::log(e1 / e0) / std::log(hs[i + 1] / hs[i]));
  }
  return out;
}

}  // namespace cutfem
