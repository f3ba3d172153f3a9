#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "casurf/expression.hpp"
#include "casurf/generators.hpp"
#include "casurf/io.hpp"
#include "casurf/numerics.hpp"
#include "casurf/surface.hpp"
#include "casurf/verify.hpp"

namespace py = pybind11;
using namespace casurf;

namespace {

// Plain-data mirror of GeneratorSpec that is convenient to fill from Python.
struct PySpec {
  std::string family = "type_i";
  std::string warp = "exp";
  double theta_deg = 45.0;
  std::string alpha;  // profile expression in v; empty = zero
  double t0 = 0.0;
  double m = 0.5;
  double b0 = 1.0;
  std::optional<double> base_t;
  double base_v = 0.0;
  std::optional<std::array<double, 4>> domain;
  std::array<int, 2> grid{64, 64};

  GeneratorSpec to_spec() const {
    GeneratorSpec spec;
    spec.family = family_from_name(family);
    spec.warping = io::warping_from_string(warp);
    spec.theta = theta_deg * M_PI / 180.0;
    if (!alpha.empty()) spec.alpha = ProfileFunction::expression(alpha);
    spec.t0 = t0;
    spec.m = m;
    spec.b0 = b0;
    spec.base_t = base_t;
    spec.base_v = base_v;
    if (domain)
      spec.domain = ParamRect{(*domain)[0], (*domain)[1], (*domain)[2],
                              (*domain)[3]};
    spec.grid = Grid{grid[0], grid[1]};
    return spec;
  }
};

py::dict geometry_dict(const SurfaceGeometry& g) {
  py::dict d;
  d["point"] = py::make_tuple(g.point.t, g.point.x, g.point.y);
  d["theta"] = g.theta;
  d["cos_theta"] = g.cos_theta;
  d["H"] = g.mean_curvature;
  d["K"] = g.gauss_curvature;
  d["k1"] = g.k1;
  d["k2"] = g.k2;
  d["beta"] = g.signed_beta;
  d["lambda"] = g.lambda;
  d["frame_adapted"] = g.frame_adapted;
  return d;
}

struct PySurface {
  Immersion im;
  std::optional<GeneratorSpec> spec;  // present when built by a generator

  py::dict geometry(double u, double v, bool canonical) const {
    GeometryOptions opt;
    opt.canonicalize = canonical;
    return geometry_dict(geometry_at(im, u, v, opt));
  }

  py::tuple domain() const {
    const auto& r = im.domain();
    return py::make_tuple(r.u0, r.u1, r.v0, r.v1);
  }

  py::dict angle_stats(int nu, int nv) const {
    const auto gg = sweep_grid(im, Grid{nu, nv});
    std::vector<double> angles;
    angles.reserve(gg.points.size());
    for (const auto& g : gg.points) angles.push_back(g.theta);
    const auto s = num::stats(angles);
    py::dict d;
    d["mean"] = s.mean;
    d["stddev"] = s.stddev;
    d["min"] = s.min;
    d["max"] = s.max;
    return d;
  }

  py::dict residuals(double u, double v) const {
    const auto r = residuals_at(im, u, v);
    py::dict d;
    d["gauss"] = r.gauss;
    d["codazzi"] = r.codazzi;
    d["laplacian"] = r.laplacian;
    return d;
  }

  py::dict run_classify(int nu, int nv) const {
    const auto rep = classify(im, Grid{nu, nv});
    py::dict d;
    d["verdict"] = rep.verdict;
    d["theta"] = rep.theta_hat;
    d["theta_stddev"] = rep.theta_stddev;
    d["umbilic_max"] = rep.umbilic_max;
    d["alpha_residual"] = rep.alpha_residual;
    d["alpha_nodes"] = rep.alpha_nodes;
    d["alpha_values"] = rep.alpha_values;
    d["mode"] = rep.mode == DerivativeMode::Analytic ? "analytic"
                                                     : "finite_difference";
    return d;
  }

  std::string verify_json(const std::string& suite, int nu, int nv) const {
    SuiteOptions opt;
    opt.grid = Grid{nu, nv};
    const auto rep = spec ? run_suite(suite, *spec, opt)
                          : run_suite(suite, im, opt);
    return rep.to_json().dump(2);
  }

  void to_obj(const std::string& path, bool half_space,
              bool exclude_axis) const {
    const auto gg = sweep_grid(im, spec ? spec->grid : Grid{64, 64});
    io::ExportOptions opt;
    opt.half_space = half_space;
    opt.exclude_axis = exclude_axis;
    opt.flip_winding = half_space != (gg.points.front().cos_theta < 0.0);
    std::ofstream out(path);
    io::write_obj(out, im.space(), gg, opt);
  }

  py::tuple half_space_point(double u, double v) const {
    const auto hp = to_half_space(im.space(), im.at(u, v));
    return py::make_tuple(hp.x, hp.y, hp.z);
  }
};

PySurface make_py_surface(const PySpec& pyspec) {
  GeneratorSpec spec = pyspec.to_spec();
  return PySurface{make_surface(spec), std::move(spec)};
}

PySurface surface_from_expression(const std::string& text,
                                  const std::string& warp, double t0,
                                  std::array<double, 4> domain) {
  auto triple = parse_immersion_triple(text);
  WarpedSpace sp(io::warping_from_string(warp));
  auto map = [triple, t0](double u, double v) {
    return AmbientPoint{triple[0].eval(u, v, t0), triple[1].eval(u, v, t0),
                        triple[2].eval(u, v, t0)};
  };
  auto d = [triple, t0](char var) {
    std::array<Expression, 3> out;
    for (int k = 0; k < 3; ++k) out[k] = triple[k].derivative(var);
    return out;
  };
  const auto du = d('u'), dv = d('v');
  Immersion im(sp, map,
               ParamRect{domain[0], domain[1], domain[2], domain[3]});
  im.with_first_derivatives(
      [map, du, t0](double u, double v) {
        return AmbientVector(map(u, v), du[0].eval(u, v, t0),
                             du[1].eval(u, v, t0), du[2].eval(u, v, t0));
      },
      [map, dv, t0](double u, double v) {
        return AmbientVector(map(u, v), dv[0].eval(u, v, t0),
                             dv[1].eval(u, v, t0), dv[2].eval(u, v, t0));
      });
  return PySurface{std::move(im), std::nullopt};
}

PySurface surface_from_samples(const std::string& path,
                               const std::string& warp) {
  WarpedSpace sp(io::warping_from_string(warp));
  const auto samples = io::read_samples_file(path);
  return PySurface{io::immersion_from_samples(sp, samples), std::nullopt};
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Constant-angle surfaces in warped products I x_f E^2: generators, "
      "pointwise geometry, verification suites and classification.";

  py::register_exception<Error>(mod, "Error");

  py::class_<PySpec>(mod, "Spec")
      .def(py::init([](const std::string& family, const std::string& warp,
                       double theta_deg, const std::string& alpha, double t0,
                       double m, double b0, std::optional<double> base_t,
                       double base_v,
                       std::optional<std::array<double, 4>> domain,
                       std::array<int, 2> grid) {
             PySpec s;
             s.family = family;
             s.warp = warp;
             s.theta_deg = theta_deg;
             s.alpha = alpha;
             s.t0 = t0;
             s.m = m;
             s.b0 = b0;
             s.base_t = base_t;
             s.base_v = base_v;
             s.domain = domain;
             s.grid = grid;
             return s;
           }),
           py::arg("family") = "type_i", py::arg("warp") = "exp",
           py::arg("theta_deg") = 45.0, py::arg("alpha") = "",
           py::arg("t0") = 0.0, py::arg("m") = 0.5, py::arg("b0") = 1.0,
           py::arg("base_t") = std::nullopt, py::arg("base_v") = 0.0,
           py::arg("domain") = std::nullopt,
           py::arg("grid") = std::array<int, 2>{64, 64})
      .def_readwrite("family", &PySpec::family)
      .def_readwrite("warp", &PySpec::warp)
      .def_readwrite("theta_deg", &PySpec::theta_deg)
      .def_readwrite("alpha", &PySpec::alpha)
      .def_readwrite("t0", &PySpec::t0)
      .def_readwrite("m", &PySpec::m)
      .def_readwrite("b0", &PySpec::b0)
      .def_readwrite("base_t", &PySpec::base_t)
      .def_readwrite("base_v", &PySpec::base_v)
      .def_readwrite("domain", &PySpec::domain)
      .def_readwrite("grid", &PySpec::grid)
      .def("to_config",
           [](const PySpec& s) { return io::config_from_spec(s.to_spec()); });

  py::class_<PySurface>(mod, "Surface")
      .def("geometry", &PySurface::geometry, py::arg("u"), py::arg("v"),
           py::arg("canonical") = false)
      .def("domain", &PySurface::domain)
      .def("angle_stats", &PySurface::angle_stats, py::arg("nu") = 32,
           py::arg("nv") = 32)
      .def("residuals", &PySurface::residuals, py::arg("u"), py::arg("v"))
      .def("classify", &PySurface::run_classify, py::arg("nu") = 24,
           py::arg("nv") = 24)
      .def("verify_json", &PySurface::verify_json, py::arg("suite") = "all",
           py::arg("nu") = 24, py::arg("nv") = 24)
      .def("to_obj", &PySurface::to_obj, py::arg("path"),
           py::arg("half_space") = false, py::arg("exclude_axis") = false)
      .def("half_space_point", &PySurface::half_space_point, py::arg("u"),
           py::arg("v"));

  mod.def("make_surface", &make_py_surface, py::arg("spec"),
          "Build one of the generated families from a Spec.");
  mod.def("surface_from_expression", &surface_from_expression,
          py::arg("text"), py::arg("warp") = "exp", py::arg("t0") = 0.0,
          py::arg("domain") = std::array<double, 4>{-1.0, 1.0, -1.0, 1.0},
          "Surface from a symbolic triple \"(t(u,v), x(u,v), y(u,v))\".");
  mod.def("surface_from_samples", &surface_from_samples, py::arg("path"),
          py::arg("warp") = "exp",
          "Surface interpolated through a sampled-grid text file.");
  mod.def("minimal_power_angle", &minimal_power_angle, py::arg("m"));

  mod.attr("__version__") = "0.1.0";
}
