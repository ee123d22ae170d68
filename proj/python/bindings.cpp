#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatproj/boundary.hpp"
#include "flatproj/cli.hpp"
#include "flatproj/dispersion.hpp"
#include "flatproj/errors.hpp"
#include "flatproj/evolution.hpp"
#include "flatproj/numerics.hpp"
#include "flatproj/projector.hpp"

namespace py = pybind11;
using namespace flatproj;

namespace {

// Wraps a scalar function of x so it also maps over numpy arrays.
template <typename R>
auto pointwise(R (*fn)(double, const FlatteningParams&)) {
  return [fn](py::array_t<double> x, const FlatteningParams& p) {
    return py::vectorize([fn, &p](double v) { return fn(v, p); })(std::move(x));
  };
}

SampledFunction sampled(double start, double step, const std::vector<Complex>& values) {
  return SampledFunction(Grid(start, step, values.size()), values);
}

}  // namespace

PYBIND11_MODULE(_flatproj, m) {
  m.doc() = "Flattened projectors, Kramers-Kronig relations and graded-interface optics.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::enum_<DeltaFamily>(m, "DeltaFamily")
      .value("LORENTZ", DeltaFamily::Lorentz)
      .value("GAUSS", DeltaFamily::Gauss);
  py::enum_<GaussOrientation>(m, "GaussOrientation")
      .value("CORRECTED", GaussOrientation::Corrected)
      .value("AS_PRINTED", GaussOrientation::AsPrinted);

  py::class_<FlatteningParams>(m, "FlatteningParams")
      .def(py::init([](double a, double b, DeltaFamily family, GaussOrientation orientation) {
             return FlatteningParams{a, b, family, orientation};
           }),
           py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("family") = DeltaFamily::Lorentz,
           py::arg("gauss_orientation") = GaussOrientation::Corrected)
      .def_static("symmetric", &FlatteningParams::symmetric, py::arg("depth"),
                  py::arg("family") = DeltaFamily::Lorentz)
      .def_readwrite("a", &FlatteningParams::a)
      .def_readwrite("b", &FlatteningParams::b)
      .def_readwrite("family", &FlatteningParams::family)
      .def_readwrite("gauss_orientation", &FlatteningParams::gauss_orientation)
      .def("__repr__", [](const FlatteningParams& p) {
        return "FlatteningParams(a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) + ")";
      });

  m.def("delta_seq", pointwise(&delta_seq), py::arg("x"), py::arg("params"));
  m.def("theta_flat", pointwise(&theta_flat), py::arg("x"), py::arg("params"));
  m.def("zeta_flat", pointwise(&zeta_flat), py::arg("x"), py::arg("params"));
  m.def("kappa", pointwise(&kappa), py::arg("z"), py::arg("params"));
  m.def("fourier_modulation", &fourier_modulation, py::arg("k"), py::arg("params"));

  py::class_<SwitchingSpec>(m, "SwitchingSpec")
      .def(py::init<>())
      .def_readwrite("gamma", &SwitchingSpec::gamma)
      .def_readwrite("n", &SwitchingSpec::n)
      .def_readwrite("base", &SwitchingSpec::base);
  py::class_<SwitchingFunction>(m, "SwitchingFunction")
      .def(py::init<SwitchingSpec>(), py::arg("spec"))
      .def("__call__", &SwitchingFunction::operator(), py::arg("x"));

  py::enum_<SusceptibilityKind>(m, "SusceptibilityKind")
      .value("LORENTZ_OSCILLATOR", SusceptibilityKind::LorentzOscillator)
      .value("DRUDE", SusceptibilityKind::Drude);
  py::class_<SusceptibilityModel>(m, "SusceptibilityModel")
      .def(py::init([](double wp, double w0, double gamma, SusceptibilityKind kind) {
             SusceptibilityModel model{wp, w0, gamma, kind};
             model.validate();
             return model;
           }),
           py::arg("plasma_frequency") = 1.0, py::arg("resonance") = 1.0, py::arg("damping") = 0.1,
           py::arg("kind") = SusceptibilityKind::LorentzOscillator)
      .def("__call__", [](const SusceptibilityModel& model, double w) { return susceptibility_eval(model, w); })
      .def_property_readonly("default_grid", [](const SusceptibilityModel& model) {
        const Grid g = model.default_frequency_grid();
        return py::make_tuple(g.start(), g.step(), g.count());
      });

  m.def(
      "kk_real_from_imag",
      [](const std::vector<double>& eps2, double start, double step, double a, double omega) {
        const std::vector<Complex> v(eps2.begin(), eps2.end());
        return 1.0 + kk_real_from_imag(sampled(start, step, v), a, omega);
      },
      py::arg("eps2"), py::arg("start"), py::arg("step"), py::arg("a"), py::arg("omega"),
      "Real permittivity at omega from imaginary-part samples on a uniform grid.");
  m.def(
      "kk_subtraction_shift",
      [](const std::vector<double>& eps2, double start, double step, double a) {
        const std::vector<Complex> v(eps2.begin(), eps2.end());
        return kk_subtraction_shift(sampled(start, step, v), a);
      },
      py::arg("eps2"), py::arg("start"), py::arg("step"), py::arg("a"));
  m.def(
      "f_hilbert",
      [](const std::vector<Complex>& f, double start, double step, double a, double k) {
        return f_hilbert(sampled(start, step, f), a, k);
      },
      py::arg("f"), py::arg("start"), py::arg("step"), py::arg("a"), py::arg("k"));

  py::enum_<Polarization>(m, "Polarization").value("TE", Polarization::TE).value("TM", Polarization::TM);
  py::class_<InterfaceScenario>(m, "InterfaceScenario")
      .def(py::init([](double omega, double alpha, Polarization pol, double eps1, Complex eps2, double c) {
             InterfaceScenario s{omega, alpha, pol, eps1, eps2, c};
             s.validate();
             return s;
           }),
           py::arg("omega") = 1.0, py::arg("alpha") = 0.0, py::arg("polarization") = Polarization::TE,
           py::arg("eps1") = 1.0, py::arg("eps2") = Complex(4.0, 0.0), py::arg("c") = 1.0)
      .def_property_readonly("wavelength", &InterfaceScenario::wavelength)
      .def_property_readonly("layer_depths", [](const InterfaceScenario& s) {
        const LayerDepths d = layer_depths(s);
        return py::make_tuple(d.a, d.b);
      });
  m.def(
      "fresnel_coefficients",
      [](const InterfaceScenario& s) {
        const ReflectionResult rt = fresnel_coefficients(s);
        return py::make_tuple(rt.r, rt.t);
      },
      py::arg("scenario"));
  m.def(
      "graded_interface_reflection",
      [](const InterfaceScenario& s, const FlatteningParams& p, int slices, double tolerance) {
        const GradedResult g = graded_interface_reflection(s, p, slices, tolerance);
        py::dict out;
        out["r"] = g.r;
        out["t"] = g.t;
        out["energy_residual"] = g.energy_residual;
        out["slices"] = g.slices;
        out["evanescent"] = g.evanescent;
        return out;
      },
      py::arg("scenario"), py::arg("params"), py::arg("slices") = 512, py::arg("tolerance") = 1e-6);

  m.def(
      "shifted_window_vs_series",
      [](double half_width, double shift, int order, const FlatteningParams& p) {
        WindowSpec w;
        w.half_width = half_width;
        w.shift = shift;
        w.validate();
        return shifted_window_vs_series(w, order, p);
      },
      py::arg("half_width"), py::arg("shift"), py::arg("order"), py::arg("params"));
  m.def(
      "shannon_reconstruct",
      [](const std::vector<double>& samples, long first_index, double band, double t) {
        return shannon_reconstruct(samples, first_index, band, t);
      },
      py::arg("samples"), py::arg("first_index"), py::arg("band"), py::arg("t"));

  m.def(
      "compute",
      [](const std::string& command, const std::map<std::string, std::string>& params) {
        cli::RunConfig c;
        c.command = command;
        c.params = params;
        const cli::Table t = cli::compute(c);
        py::dict out;
        out["columns"] = t.columns;
        out["rows"] = t.rows;
        py::dict summary;
        for (const auto& [k, v] : t.summary) summary[py::str(k)] = v;
        out["summary"] = summary;
        return out;
      },
      py::arg("command"), py::arg("params") = std::map<std::string, std::string>{},
      "Run one CLI command in memory and return its table.");
}
