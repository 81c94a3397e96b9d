#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weaklab/cli.hpp"
#include "weaklab/report_io.hpp"
#include "weaklab/version.hpp"

namespace py = pybind11;
using namespace weaklab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SampledFunction fn_from_array(const Grid& grid, const Array& a) {
  auto buf = a.request();
  std::vector<double> values(static_cast<const double*>(buf.ptr),
                             static_cast<const double*>(buf.ptr) + buf.size);
  return make_sampled(grid, std::move(values));
}

std::vector<SampledFunction> fns_from_arrays(const Grid& grid,
                                             const std::vector<Array>& arrays) {
  std::vector<SampledFunction> out;
  out.reserve(arrays.size());
  for (const Array& a : arrays) out.push_back(fn_from_array(grid, a));
  return out;
}

py::array_t<double> to_array(const std::vector<double>& values) {
  return py::array_t<double>(static_cast<py::ssize_t>(values.size()),
                             values.data());
}

py::dict muckenhoupt_dict(const MuckenhouptReport& rep) {
  py::dict d;
  d["class"] = to_string(rep.cls);
  d["constant"] = rep.constant;
  d["attaining_origin"] =
      py::make_tuple(rep.attaining_cube.origin[0], rep.attaining_cube.origin[1]);
  d["attaining_side_cells"] = rep.attaining_cube.side_cells;
  d["family"] = to_string(rep.family);
  if (rep.cls == WeightClass::Ap || rep.cls == WeightClass::AinfProxy)
    d["p"] = rep.p;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "multilinear fractional operators, Muckenhoupt constants and "
            "weak quasi-norms on staggered grids";
  m.attr("__version__") = kToolVersion;

  py::register_exception<guard_error>(m, "GuardError");
  py::register_exception<budget_error>(m, "BudgetError");
  py::register_exception<config_error>(m, "ConfigError");

  py::class_<Grid>(m, "Grid")
      .def_readonly("dim", &Grid::dim)
      .def_readonly("half_width", &Grid::half_width)
      .def_readonly("cells_per_axis", &Grid::cells_per_axis)
      .def_readonly("cell_side", &Grid::cell_side)
      .def_property_readonly("cell_count", &Grid::cell_count)
      .def_property_readonly("cell_measure", &Grid::cell_measure)
      .def("cell_centers",
           [](const Grid& g) {
             std::vector<double> flat;
             flat.reserve(g.cell_count() * g.dim);
             for (std::int64_t c = 0; c < g.cell_count(); ++c) {
               Point p = g.cell_center(c);
               for (int a = 0; a < g.dim; ++a) flat.push_back(p[a]);
             }
             py::array_t<double> out = to_array(flat);
             if (g.dim == 2)
               out = out.reshape({g.cell_count(), std::int64_t{2}});
             return out;
           })
      .def("target_points",
           [](const Grid& g) {
             std::vector<double> flat;
             flat.reserve(g.cell_count() * g.dim);
             for (std::int64_t c = 0; c < g.cell_count(); ++c) {
               Point p = g.target_point(c);
               for (int a = 0; a < g.dim; ++a) flat.push_back(p[a]);
             }
             py::array_t<double> out = to_array(flat);
             if (g.dim == 2)
               out = out.reshape({g.cell_count(), std::int64_t{2}});
             return out;
           })
      .def("__repr__", [](const Grid& g) {
        return "Grid(dim=" + std::to_string(g.dim) +
               ", half_width=" + std::to_string(g.half_width) +
               ", cells_per_axis=" + std::to_string(g.cells_per_axis) + ")";
      });

  m.def("build_grid", &build_grid, py::arg("dim"), py::arg("half_width"),
        py::arg("cells_per_axis"));

  m.def(
      "sample_power",
      [](const Grid& g, double exponent) {
        return to_array(sample(WeightFamily::power(exponent), g).values());
      },
      py::arg("grid"), py::arg("exponent"),
      "Samples |x|^a at the staggered cell centers");

  m.def(
      "maximal",
      [](const Grid& g, const std::vector<Array>& fs, double alpha,
         const std::string& family) {
        auto fns = fns_from_arrays(g, fs);
        OperatorSpec spec{static_cast<int>(fns.size()), alpha,
                          cube_family_from_string(family)};
        return to_array(maximal(fns, spec).values);
      },
      py::arg("grid"), py::arg("functions"), py::arg("alpha") = 0.0,
      py::arg("family") = "all_cubes");

  m.def(
      "maximal_oracle",
      [](const Grid& g, const std::vector<Array>& fs, double alpha,
         const std::string& family) {
        auto fns = fns_from_arrays(g, fs);
        OperatorSpec spec{static_cast<int>(fns.size()), alpha,
                          cube_family_from_string(family)};
        return to_array(maximal_oracle(fns, spec).values);
      },
      py::arg("grid"), py::arg("functions"), py::arg("alpha") = 0.0,
      py::arg("family") = "all_cubes");

  m.def(
      "fractional_integral",
      [](const Grid& g, const std::vector<Array>& fs, double alpha,
         bool override_guard) {
        return to_array(
            fractional_integral(fns_from_arrays(g, fs), alpha, override_guard)
                .values);
      },
      py::arg("grid"), py::arg("functions"), py::arg("alpha"),
      py::arg("override_guard") = false,
      "Midpoint-rule multilinear fractional integral at the shifted targets");

  m.def(
      "distribution",
      [](const Grid& g, const Array& f, const Array& density, double t) {
        auto fn = fn_from_array(g, f);
        auto buf = density.request();
        std::vector<double> dens(static_cast<const double*>(buf.ptr),
                                 static_cast<const double*>(buf.ptr) +
                                     buf.size);
        return distribution(fn, make_measure(g, dens), t);
      },
      py::arg("grid"), py::arg("f"), py::arg("density"), py::arg("t"));

  m.def(
      "weak_norm",
      [](const Grid& g, const Array& f, const Array& density, double q) {
        auto fn = fn_from_array(g, f);
        auto buf = density.request();
        std::vector<double> dens(static_cast<const double*>(buf.ptr),
                                 static_cast<const double*>(buf.ptr) +
                                     buf.size);
        WeakNormResult r = weak_norm(fn, make_measure(g, dens), q);
        return py::make_tuple(r.value, r.attaining_level);
      },
      py::arg("grid"), py::arg("f"), py::arg("density"), py::arg("q"),
      "Returns (value, attaining_level) of the weak L^{q,inf} quasi-norm");

  m.def(
      "power_identity_check",
      [](const Grid& g, const Array& f, const Array& density, double q) {
        auto fn = fn_from_array(g, f);
        auto buf = density.request();
        std::vector<double> dens(static_cast<const double*>(buf.ptr),
                                 static_cast<const double*>(buf.ptr) +
                                     buf.size);
        return power_identity_check(fn, make_measure(g, dens), q);
      },
      py::arg("grid"), py::arg("f"), py::arg("density"), py::arg("q"));

  m.def(
      "weighted_l1",
      [](const Grid& g, const Array& f, const Array& u) {
        return weighted_l1(fn_from_array(g, f),
                           make_weight(fn_from_array(g, u)));
      },
      py::arg("grid"), py::arg("f"), py::arg("u"));

  m.def(
      "a1_constant",
      [](const Grid& g, const Array& w, const std::string& family) {
        return muckenhoupt_dict(a1_constant(make_weight(fn_from_array(g, w)),
                                            cube_family_from_string(family)));
      },
      py::arg("grid"), py::arg("w"), py::arg("family") = "all_cubes");

  m.def(
      "ap_constant",
      [](const Grid& g, const Array& w, double p, const std::string& family) {
        return muckenhoupt_dict(ap_constant(make_weight(fn_from_array(g, w)),
                                            p,
                                            cube_family_from_string(family)));
      },
      py::arg("grid"), py::arg("w"), py::arg("p"),
      py::arg("family") = "all_cubes");

  m.def(
      "multilinear_ap_constant",
      [](const Grid& g, const std::vector<Array>& ws,
         const std::vector<double>& pvec, const std::string& family) {
        std::vector<Weight> weights;
        for (const Array& a : ws)
          weights.push_back(make_weight(fn_from_array(g, a)));
        return muckenhoupt_dict(multilinear_ap_constant(
            weights, pvec, cube_family_from_string(family)));
      },
      py::arg("grid"), py::arg("weights"), py::arg("p_vec"),
      py::arg("family") = "all_cubes");

  m.def("kernel",
        [](double x, const std::vector<double>& ys, double alpha, int n) {
          std::vector<Point> pts;
          for (double y : ys) pts.push_back({y, 0.0});
          return kernel({x, 0.0}, pts, alpha, static_cast<int>(ys.size()), n);
        },
        py::arg("x"), py::arg("ys"), py::arg("alpha"), py::arg("n") = 1);

  // Config-driven pipelines; config is the JSON text documented in the
  // repository README.
  m.def("run_constants", [](const std::string& config, const std::string& out) {
    return cmd_constants(parse_config(config), out);
  });
  m.def("run_verify", [](const std::string& config, const std::string& out) {
    return cmd_verify(parse_config(config), out);
  });
  m.def("run_sweep", [](const std::string& config, const std::string& out) {
    return cmd_sweep(parse_config(config), out);
  });
  m.def("run_search", [](const std::string& config, const std::string& out) {
    return cmd_search(parse_config(config), out);
  });
  m.def("run_oracle_check",
        [](const std::string& config, const std::string& out) {
          return cmd_oracle_check(parse_config(config), out);
        });
}
