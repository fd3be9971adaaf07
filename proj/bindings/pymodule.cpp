// Python bindings for the main operations: special functions, Fourier
// inversion, saddle-point tails, the triggered (l = 2) density, closed-form
// first iterates, and Monte-Carlo sampling.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shotnoise/closedforms.hpp"
#include "shotnoise/hyperint.hpp"
#include "shotnoise/inversion.hpp"
#include "shotnoise/montecarlo.hpp"
#include "shotnoise/saddle.hpp"
#include "shotnoise/specfun.hpp"
#include "shotnoise/triggered.hpp"

namespace py = pybind11;
using namespace shotnoise;

namespace {

HypergeometricLaw make_law(const std::vector<double>& a,
                           const std::vector<double>& b) {
  HypergeometricLaw law{a, b};
  law.validate();
  return law;
}

py::dict grid_to_dict(const DensityGrid& g) {
  py::dict d;
  d["x"] = g.x;
  d["f"] = g.f;
  d["method"] = g.method;
  d["err_estimate"] = g.err_estimate;
  for (const auto& c : g.extra) d[c.name.c_str()] = c.values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "stationary densities of shot-noise recurrences";

  // special functions
  m.def("pfq", [](const std::vector<double>& a, const std::vector<double>& b,
                  double z) { return pfq(make_law(a, b), z); },
        py::arg("a"), py::arg("b"), py::arg("z"));
  m.def("polygamma", &polygamma, py::arg("k"), py::arg("x"));
  m.def("clausen2", &clausen2, py::arg("theta"));
  m.def("elliptic_k", &elliptic_k, py::arg("m"));
  m.def("cji", &cji_family, py::arg("n"), py::arg("x"));
  m.def("cjin", &cjin, py::arg("x"));

  // inversion
  m.def("normalization_constant",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return normalization_constant(make_law(a, b));
        },
        py::arg("a"), py::arg("b"));
  m.def("stationary_density",
        [](const std::vector<double>& a, const std::vector<double>& b,
           double x) { return stationary_density(make_law(a, b), x); },
        py::arg("a"), py::arg("b"), py::arg("x"));

  py::class_<Inverter>(m, "Inverter")
      .def(py::init([](const std::vector<double>& a,
                       const std::vector<double>& b) {
             return Inverter(make_law(a, b));
           }),
           py::arg("a"), py::arg("b"))
      .def("density", &Inverter::density, py::arg("x"))
      .def("cdf", &Inverter::cdf, py::arg("x"))
      .def("normalization", &Inverter::normalization)
      .def("density_grid",
           [](const Inverter& inv, const std::vector<double>& xs) {
             return grid_to_dict(inv.density_grid(xs));
           },
           py::arg("xs"));

  // saddle-point tail
  m.def("density_tail",
        [](const std::vector<double>& a, const std::vector<double>& b,
           double x) { return density_tail(make_law(a, b), x); },
        py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("find_saddle",
        [](const std::vector<double>& a, const std::vector<double>& b,
           double x) {
          auto r = find_saddle(make_law(a, b), x);
          py::dict d;
          d["x"] = r.x;
          d["s0"] = r.s0;
          d["phi"] = r.phi;
          d["phi2"] = r.phi2;
          d["f_asymptotic"] = r.f_asymptotic;
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("x"));

  // triggered (l = 2)
  py::class_<TriggeredModel>(m, "TriggeredModel")
      .def(py::init([](const std::vector<double>& a,
                       const std::vector<double>& b, int N) {
             return make_triggered_model(make_law(a, b), N);
           }),
           py::arg("a"), py::arg("b"), py::arg("N") = 14)
      .def_readonly("C1", &TriggeredModel::C1)
      .def_readonly("C2", &TriggeredModel::C2)
      .def_readonly("c", &TriggeredModel::c)
      .def_readonly("K", &TriggeredModel::K)
      .def("h2", [](const TriggeredModel& t, double s) { return h2(t, s); },
           py::arg("s"))
      .def("density",
           [](const TriggeredModel& t, double x) {
             return triggered_density(t, x);
           },
           py::arg("x"))
      .def("cdf",
           [](const TriggeredModel& t, double x) {
             return triggered_cdf(t, x);
           },
           py::arg("x"))
      .def("density_grid",
           [](const TriggeredModel& t, const std::vector<double>& xs) {
             return grid_to_dict(triggered_density_grid(t, xs));
           },
           py::arg("xs"));

  // closed forms
  m.def("f0_simple", &f0_simple, py::arg("x"));
  m.def("g1_density", &g1_density, py::arg("y"));
  m.def("f0_triggered", &f0_triggered, py::arg("x"));
  m.def("f_waiting_time", &f_waiting_time, py::arg("x"));
  m.def("f0_three_uniforms", &f0_three_uniforms, py::arg("x"));

  // monte carlo
  m.def("simulate_recurrence",
        [](long n_samples, int l, std::uint64_t seed) {
          SimulationConfig cfg;
          cfg.law =
              AmplitudeLaw::make(AmplitudeLaw::Tag::arcsine_plus_bernoulli);
          cfg.l = l;
          cfg.n_samples = n_samples;
          cfg.seed = seed;
          cfg.validate();
          return simulate_recurrence(cfg);
        },
        py::arg("n_samples"), py::arg("l") = 1, py::arg("seed") = 0);
  m.def("ks_distance",
        [](std::vector<double> samples,
           const std::function<double(double)>& cdf) {
          return ks_distance(std::move(samples), cdf);
        },
        py::arg("samples"), py::arg("cdf"));
  m.def("sample_moment", &sample_moment, py::arg("samples"), py::arg("k"));

  py::register_exception<FormulaMismatch>(m, "FormulaMismatch",
                                          PyExc_RuntimeError);
  py::register_exception<IllConditioned>(m, "IllConditioned",
                                         PyExc_RuntimeError);
}
