#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specwell/inverse.hpp"
#include "specwell/invariants.hpp"
#include "specwell/laplace.hpp"
#include "specwell/measure.hpp"
#include "specwell/profiles.hpp"
#include "specwell/semiclassics.hpp"
#include "specwell/testfunction.hpp"

namespace py = pybind11;
using namespace specwell;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Equivariant spectra and inverse spectral reconstruction for "
              "circle-invariant metrics on the two-sphere";

    py::class_<MetricProfile>(m, "MetricProfile")
        .def("v", &MetricProfile::v, py::arg("x"))
        .def("v1", &MetricProfile::v1, py::arg("x"))
        .def("v2", &MetricProfile::v2, py::arg("x"))
        .def("v3", &MetricProfile::v3, py::arg("x"))
        .def_property_readonly("pole_regular", &MetricProfile::pole_regular)
        .def_property_readonly("x_limit", &MetricProfile::x_limit);

    m.def("make_round_sphere", &make_round_sphere,
          "Profile v(x) = 1/(1-x^2) with exact derivatives");
    m.def("make_perturbed_well", &make_perturbed_well, py::arg("coefficients"),
          "Profile 1/(1-x^2) + P(x); coefficients constant-term first, no linear term");
    m.def(
        "make_tabulated",
        [](std::vector<double> x, std::vector<double> v) {
            return MetricProfile::tabulated(std::move(x), std::move(v));
        },
        py::arg("x"), py::arg("v"));

    py::class_<SingleWellCertificate>(m, "SingleWellCertificate")
        .def_readonly("min_value", &SingleWellCertificate::min_value)
        .def_readonly("curvature", &SingleWellCertificate::curvature)
        .def_readonly("grid_size", &SingleWellCertificate::grid_size);

    m.def("certify_single_well", &certify_single_well, py::arg("profile"),
          py::arg("grid_size") = 10000, py::arg("x_extent") = 0.0);

    py::class_<EquivariantSpectrum>(m, "EquivariantSpectrum")
        .def_readonly("m", &EquivariantSpectrum::m)
        .def_readonly("cells", &EquivariantSpectrum::cells)
        .def_readonly("eigenvalues", &EquivariantSpectrum::eigenvalues);

    m.def("equivariant_spectrum", &equivariant_spectrum, py::arg("profile"),
          py::arg("m"), py::arg("cells"), py::arg("lambda_max"));

    py::class_<TestFunction>(m, "TestFunction")
        .def("__call__", &TestFunction::operator(), py::arg("tau"))
        .def("derivative", &TestFunction::derivative, py::arg("order"), py::arg("tau"))
        .def_property_readonly("support_min", &TestFunction::support_min)
        .def_property_readonly("support_max", &TestFunction::support_max)
        .def_static("smooth_bump", &TestFunction::smooth_bump, py::arg("center"),
                    py::arg("width"))
        .def_static("mollified_indicator", &TestFunction::mollified_indicator,
                    py::arg("level"), py::arg("eps"))
        .def_static("exponential", &TestFunction::exponential, py::arg("decay"),
                    py::arg("truncation_radius"));

    py::class_<MeasureSample>(m, "MeasureSample")
        .def_readonly("m", &MeasureSample::m)
        .def_readonly("hbar", &MeasureSample::hbar)
        .def_readonly("value", &MeasureSample::value)
        .def_readonly("cells", &MeasureSample::cells)
        .def_readonly("complete", &MeasureSample::complete);

    m.def(
        "spectral_measure",
        [](const MetricProfile& p, const TestFunction& rho, double alpha, int mode) {
            return spectral_measure(p, rho, alpha, mode);
        },
        py::arg("profile"), py::arg("rho"), py::arg("alpha"), py::arg("m"));

    m.def("expansion_prediction", &expansion_prediction, py::arg("profile"),
          py::arg("rho"), py::arg("alpha"), py::arg("order") = 2);

    m.def("first_invariant_smooth", &first_invariant_smooth, py::arg("profile"),
          py::arg("rho"), py::arg("alpha"), py::arg("rel_tol") = 1e-10);
    m.def("second_invariant_smooth", &second_invariant_smooth, py::arg("profile"),
          py::arg("rho"), py::arg("alpha"), py::arg("rel_tol") = 1e-10);
    m.def("area_at", &area_at, py::arg("profile"), py::arg("alpha"),
          py::arg("lambda"), py::arg("rel_tol") = 1e-11);
    m.def("q_at", &q_at, py::arg("profile"), py::arg("alpha"), py::arg("lambda"),
          py::arg("rel_tol") = 1e-11);

    py::class_<InvariantCurve>(m, "InvariantCurve")
        .def_readonly("alpha", &InvariantCurve::alpha)
        .def_readonly("lam", &InvariantCurve::lambda)
        .def_readonly("W", &InvariantCurve::W)
        .def_readonly("Q", &InvariantCurve::Q);

    m.def("area_curve", &area_curve, py::arg("profile"), py::arg("alpha"),
          py::arg("lambda_grid"), py::arg("parallel_degree") = 1);
    m.def("q_curve", &q_curve, py::arg("profile"), py::arg("alpha"),
          py::arg("lambda_grid"), py::arg("parallel_degree") = 1);
    m.def("default_lambda_grid", &default_lambda_grid, py::arg("profile"),
          py::arg("alpha"), py::arg("points") = 200);

    py::class_<ReconstructionResult>(m, "ReconstructionResult")
        .def_readonly("c", &ReconstructionResult::c)
        .def_readonly("curvature", &ReconstructionResult::curvature)
        .def_readonly("x", &ReconstructionResult::x)
        .def_readonly("v", &ReconstructionResult::v)
        .def_readonly("x_max", &ReconstructionResult::x_max);

    py::class_<StageDiagnostics>(m, "StageDiagnostics")
        .def_readonly("c_detected", &StageDiagnostics::c_detected)
        .def_readonly("curvature", &StageDiagnostics::curvature)
        .def_readonly("linf", &StageDiagnostics::linf)
        .def_readonly("linf_reflected", &StageDiagnostics::linf_reflected)
        .def_readonly("linf_best", &StageDiagnostics::linf_best)
        .def_readonly("l2_best", &StageDiagnostics::l2_best);

    py::class_<RoundtripReport>(m, "RoundtripReport")
        .def_readonly("curve", &RoundtripReport::curve)
        .def_readonly("result", &RoundtripReport::result)
        .def_readonly("diagnostics", &RoundtripReport::diagnostics);

    m.def(
        "roundtrip",
        [](const MetricProfile& p, double alpha, std::size_t lambda_points,
           std::size_t s_points, double x_cap, double compare_x) {
            RoundtripOptions opt;
            opt.lambda_points = lambda_points;
            opt.s_points = s_points;
            opt.x_cap = x_cap;
            opt.compare_x = compare_x;
            return roundtrip(p, alpha, opt);
        },
        py::arg("profile"), py::arg("alpha") = 1.0, py::arg("lambda_points") = 200,
        py::arg("s_points") = 400, py::arg("x_cap") = 0.9, py::arg("compare_x") = 0.8);
}
