#include "cutfem/diagnostics.hpp"
#include "cutfem/harness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace cutfem;

namespace {

// Config values arrive as Python objects; route them through the same parser
// the config file uses.
RunConfig to_config(const py::dict& options, RunConfig base = {}) {
  for (const auto& [key, value] : options) {
    const std::string k = py::str(key);
    std::string v;
    if (py::isinstance<py::bool_>(value)) {
      v = value.cast<bool>() ? "true" : "false";
    } else if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& item : value) {
        if (!v.empty()) v += ',';
        if (py::isinstance<py::tuple>(item) || py::isinstance<py::list>(item)) {
          auto pair = item.cast<std::pair<double, double>>();
          v += py::str(py::float_(pair.first)).cast<std::string>() + ":" + py::str(py::float_(pair.second)).cast<std::string>();
        } else {
          v += py::str(item).cast<std::string>();
        }
      }
    } else {
      v = py::str(value);
    }
    base.set(k, v);
  }
  return base;
}

py::dict report_dict(const ErrorReport& r) {
  py::dict d;
  d["h"] = r.h;
  d["e0"] = r.e0;
  d["einf"] = r.einf;
  d["eflux"] = r.eflux;
  d["efluxinf"] = r.efluxinf;
  d["esqrt"] = r.esqrt;
  d["vnorm"] = r.vnorm;
  d["vanorm"] = r.vanorm;
  return d;
}

py::dict stats_dict(py::dict d, const SolveStats& s) {
  d["iterations"] = s.iterations;
  d["relative_residual"] = s.relative_residual;
  d["method"] = std::string(to_string(s.method));
  return d;
}

py::object optional_float(const std::optional<double>& v) { return v ? py::object(py::float_(*v)) : py::object(py::none()); }

Eigen::MatrixXd node_array(const Mesh& m) {
  Eigen::MatrixXd out(m.num_nodes(), 2);
  for (Index i = 0; i < m.num_nodes(); ++i) out.row(i) = m.node(i).transpose();
  return out;
}

Eigen::Matrix<Index, Eigen::Dynamic, 3, Eigen::RowMajor> element_array(const Mesh& m) {
  Eigen::Matrix<Index, Eigen::Dynamic, 3, Eigen::RowMajor> out(m.num_elements(), 3);
  for (Index t = 0; t < m.num_elements(); ++t)
    for (int k = 0; k < 3; ++k) out(t, k) = m.element(t)[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace

PYBIND11_MODULE(_cutfem, m) {
  m.doc() = "Unfitted Nitsche finite elements for high-contrast interface problems";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", numerical.ptr());

  py::enum_<Side>(m, "Side").value("minus", Side::minus).value("plus", Side::plus);

  py::class_<Mesh>(m, "Mesh")
      .def(py::init<int>(), py::arg("cells"))
      .def_property_readonly("h", &Mesh::h)
      .def_property_readonly("cells_per_side", &Mesh::cells_per_side)
      .def_property_readonly("num_nodes", &Mesh::num_nodes)
      .def_property_readonly("num_elements", &Mesh::num_elements)
      .def_property_readonly("num_edges", &Mesh::num_edges)
      .def_property_readonly("nodes", &node_array)
      .def_property_readonly("elements", &element_array)
      .def("area", &Mesh::area)
      .def("diameter", &Mesh::diameter)
      .def("node_patch", &Mesh::node_patch)
      .def("is_boundary_node", &Mesh::is_boundary_node)
      .def("locate", &Mesh::locate);

  m.def("build_mesh", &build_mesh, py::arg("level"));

  py::class_<LevelSet>(m, "LevelSet")
      .def("__call__", [](const LevelSet& ls, double x, double y) { return ls(Point(x, y)); })
      .def("gradient", [](const LevelSet& ls, double x, double y) { return ls.gradient(Point(x, y)); })
      .def("side_of", [](const LevelSet& ls, double x, double y) { return ls.side_of(Point(x, y)); })
      .def_property_readonly("inclusion", &LevelSet::inclusion)
      .def_property_readonly("name", &LevelSet::name);

  m.def("make_circle", &make_circle, py::arg("radius"), py::arg("inclusion") = Side::minus);
  m.def("make_flower", &make_flower);
  m.def("make_vertical_line", &make_vertical_line, py::arg("offset"), py::arg("inclusion") = Side::minus);
  m.def("edge_root", [](const LevelSet& ls, const Point& a, const Point& b) { return edge_root(ls, a, b); }, py::arg("level_set"),
        py::arg("a"), py::arg("b"));
  m.def("reflect", [](const LevelSet& ls, const Point& x, double tube_width) {
        ReflectOptions o;
        o.tube_width = tube_width;
        return reflect(ls, x, o);
      },
      py::arg("level_set"), py::arg("x"), py::arg("tube_width") = 0.1);

  py::class_<CutTopology>(m, "CutTopology")
      .def("is_cut", &CutTopology::is_cut)
      .def("elements", &CutTopology::elements, py::arg("side"))
      .def("ghost_edges", &CutTopology::ghost_edges, py::arg("side"))
      .def_property_readonly("cut_elements", &CutTopology::cut_elements)
      .def_property_readonly("ambiguous_elements", &CutTopology::ambiguous_elements)
      .def("part_area", &CutTopology::part_area, py::arg("element"), py::arg("side"))
      .def("chord", [](const CutTopology& t, Index e) {
        const auto& g = t.geometry(e);
        return std::make_pair(Point(g.chord[0]), Point(g.chord[1]));
      })
      .def("normal_minus", [](const CutTopology& t, Index e) { return Point(t.geometry(e).normal_minus); });

  m.def("classify", [](const Mesh& mesh, const LevelSet& ls, bool strict) { return CutTopology(mesh, ls, ClassifyOptions{strict}); },
        py::arg("mesh"), py::arg("level_set"), py::arg("strict") = true, py::keep_alive<0, 1>());

  m.def("eoc", [](const std::vector<double>& errors, const std::vector<double>& hs) {
        py::list out;
        for (const auto& v : eoc(errors, hs)) out.append(optional_float(v));
        return out;
      },
      py::arg("errors"), py::arg("hs"));

  m.def("run_solve", [](const py::dict& options) {
        const SolveOutcome o = run_solve(to_config(options));
        py::dict d = report_dict(o.report);
        d["level"] = o.level;
        d["unknowns"] = o.unknowns;
        d["cut_elements"] = o.cut_elements;
        d["symmetry"] = o.symmetry;
        return stats_dict(d, o.stats);
      },
      py::arg("options") = py::dict(), "Solve one example on one level; options mirror the config-file keys.");

  m.def("run_convergence", [](const py::dict& options) {
        py::list rows;
        for (const auto& r : run_convergence(to_config(options))) {
          py::dict d = report_dict(r.report);
          d["level"] = r.level;
          d["eoc0"] = optional_float(r.eoc0);
          d["eocinf"] = optional_float(r.eocinf);
          d["eocflux"] = optional_float(r.eocflux);
          d["eocfluxinf"] = optional_float(r.eocfluxinf);
          rows.append(stats_dict(d, r.stats));
        }
        return rows;
      },
      py::arg("options") = py::dict());

  m.def("run_contrast_sweep", [](const py::dict& options) {
        RunConfig base;
        base.level = 5;
        py::list rows;
        for (const auto& r : run_contrast_sweep(to_config(options, base))) {
          py::dict d = report_dict(r.report);
          d["rho_minus"] = r.rho_minus;
          d["rho_plus"] = r.rho_plus;
          rows.append(stats_dict(d, r.stats));
        }
        return rows;
      },
      py::arg("options") = py::dict(), "Coefficient sweep; the level defaults to 5.");

  m.def("run_diagnostics", [](const py::dict& options, std::vector<int> levels, std::vector<int> interpolation_levels, int random_fields) {
        DiagnosticsConfig cfg;
        cfg.levels = std::move(levels);
        cfg.interpolation_levels = std::move(interpolation_levels);
        cfg.random_fields = random_fields;
        const DiagnosticsReport rep = run_diagnostics(to_config(options), cfg);
        py::list rows;
        for (const auto& r : rep.levels) {
          py::dict d;
          d["level"] = r.level;
          d["h"] = r.h;
          d["patch_ratio_minus"] = r.patch_minus.min_ratio;
          d["patch_ratio_plus"] = r.patch_plus.min_ratio;
          d["coercivity"] = r.coercivity.min_quotient;
          d["coercivity_dense"] = r.coercivity.dense;
          d["extension_ratio"] = r.extension_ratio;
          d["bound_ratio"] = r.bound_ratio;
          rows.append(d);
        }
        py::list interp;
        for (const auto& r : rep.interpolation) {
          py::dict d;
          d["level"] = r.level;
          d["h"] = r.h;
          d["error"] = r.error;
          d["hessian_sum"] = r.hessian_sum;
          d["ratio"] = r.ratio;
          interp.append(d);
        }
        py::dict out;
        out["levels"] = rows;
        out["interpolation"] = interp;
        return out;
      },
      py::arg("options") = py::dict(), py::arg("levels") = std::vector<int>{2, 3, 4, 5},
      py::arg("interpolation_levels") = std::vector<int>{1, 2, 3, 4, 5}, py::arg("random_fields") = 20);
}
