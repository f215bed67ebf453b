#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/complex.h>
#include <pybind11/eigen.h>

#include "phasedetect/analytic.hpp"
#include "phasedetect/fock_space.hpp"
#include "phasedetect/loss_channel.hpp"
#include "phasedetect/protocols.hpp"
#include "phasedetect/verification.hpp"

namespace py = pybind11;
using namespace phasedetect;

namespace {

ProtocolParams make_params(const std::string& family, int n, double alpha, double eta, double r, double photons,
                           double p0) {
  ProtocolParams p;
  p.family = family_from_string(family);
  p.n = n;
  p.alpha = alpha;
  p.eta = eta;
  p.r = r;
  p.photons = photons;
  p.p0 = p0;
  p.p_delta = 1.0 - p0;
  p.validate();
  return p;
}

NumericOptions make_options(bool oracle, std::optional<int> dim, double tail_tol) {
  NumericOptions o;
  o.with_oracle = oracle;
  o.dim = dim;
  o.tail_tol = tail_tol;
  return o;
}

}  // namespace

PYBIND11_MODULE(phasedetect, m) {
  m.doc() = "Phase-shift detection with Fock and cat probes: closed forms and truncated Fock-space simulation";

  static py::exception<Error> base_error(m, "Error", PyExc_RuntimeError);
  static py::exception<ValidationError> validation_error(m, "ValidationError", base_error.ptr());
  static py::exception<ComputationError> computation_error(m, "ComputationError", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const ComputationError& e) {
      py::set_error(computation_error, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  py::class_<ProtocolParams>(m, "ProtocolParams")
      .def(py::init(&make_params), py::kw_only(), py::arg("family") = "fock", py::arg("n") = 1,
           py::arg("alpha") = 2.0, py::arg("eta") = 1.0, py::arg("r") = 0.0, py::arg("photons") = 1e6,
           py::arg("p0") = 0.5)
      .def_property_readonly("family", [](const ProtocolParams& p) { return std::string(to_string(p.family)); })
      .def_readonly("n", &ProtocolParams::n)
      .def_readonly("alpha", &ProtocolParams::alpha)
      .def_readonly("eta", &ProtocolParams::eta)
      .def_readonly("r", &ProtocolParams::r)
      .def_readonly("photons", &ProtocolParams::photons)
      .def_readonly("p0", &ProtocolParams::p0)
      .def_readonly("p_delta", &ProtocolParams::p_delta)
      .def("delta_from_phi", &ProtocolParams::delta_from_phi)
      .def("phi_from_delta", &ProtocolParams::phi_from_delta);

  py::class_<ErrorRates>(m, "ErrorRates")
      .def_readonly("p_fp", &ErrorRates::p_fp)
      .def_readonly("p_fn", &ErrorRates::p_fn)
      .def_readonly("helstrom", &ErrorRates::helstrom)
      .def("__repr__", [](const ErrorRates& r) {
        return "ErrorRates(p_fp=" + std::to_string(r.p_fp) + ", p_fn=" + std::to_string(r.p_fn) +
               ", helstrom=" + std::to_string(r.helstrom) + ")";
      });

  py::class_<Evaluation>(m, "Evaluation")
      .def_readonly("phi", &Evaluation::phi)
      .def_readonly("delta", &Evaluation::delta)
      .def_readonly("delta_detected", &Evaluation::delta_detected)
      .def_readonly("analytic", &Evaluation::analytic)
      .def_readonly("numeric", &Evaluation::numeric)
      .def_readonly("discrepancy", &Evaluation::discrepancy)
      .def_readonly("dim", &Evaluation::dim)
      .def_property_readonly("rates", &Evaluation::rates);

  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def_readonly("phi0", &OperatingPoint::phi0)
      .def_readonly("delta", &OperatingPoint::delta)
      .def_property_readonly("source", [](const OperatingPoint& op) { return std::string(to_string(op.source)); });

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("value", &SweepPoint::value)
      .def_readonly("operating_point", &SweepPoint::operating_point)
      .def_readonly("evaluation", &SweepPoint::evaluation);

  py::class_<SweepResult>(m, "SweepResult")
      .def_property_readonly("axis", [](const SweepResult& s) { return std::string(to_string(s.axis)); })
      .def_readonly("values", &SweepResult::values)
      .def_readonly("points", &SweepResult::points)
      .def_readonly("max_discrepancy", &SweepResult::max_discrepancy);

  m.def(
      "evaluate",
      [](const ProtocolParams& params, double phi, bool oracle, std::optional<int> dim, double tail_tol) {
        return evaluate(params, phi, make_options(oracle, dim, tail_tol));
      },
      py::arg("params"), py::arg("phi"), py::kw_only(), py::arg("oracle") = false, py::arg("dim") = py::none(),
      py::arg("tail_tol") = kDefaultTailTol);
  m.def("optimize_delta", &optimize_delta, py::arg("params"));
  m.def(
      "sweep",
      [](const ProtocolParams& base, const std::string& axis, const std::vector<double>& values, bool oracle,
         unsigned threads) {
        py::gil_scoped_release release;
        return sweep(base, sweep_axis_from_string(axis), values, make_options(oracle, std::nullopt, kDefaultTailTol),
                     threads);
      },
      py::arg("base"), py::arg("axis"), py::arg("values"), py::kw_only(), py::arg("oracle") = false,
      py::arg("threads") = 0);
  m.def("threshold_phase", &analytic::threshold_phase, py::arg("params"));

  auto a = m.def_submodule("analytic", "Closed-form expressions");
  a.def("laguerre", &analytic::laguerre, py::arg("n"), py::arg("x"));
  a.def("laguerre_first_root", &analytic::laguerre_first_root, py::arg("n"), py::arg("tol") = 1e-12);
  a.def("fock_overlap", &analytic::fock_overlap, py::arg("n"), py::arg("delta"));
  a.def("cat_overlap", &analytic::cat_overlap, py::arg("alpha"), py::arg("delta"));
  a.def("cat_overlap_zero", &analytic::cat_overlap_zero, py::arg("alpha"), py::arg("k") = 0);
  a.def("cat_overlap_zero_approx", &analytic::cat_overlap_zero_approx, py::arg("alpha"));
  a.def("helstrom", &analytic::helstrom, py::arg("p0"), py::arg("p_delta"), py::arg("overlap_sq"));
  a.def("fock1_error_rates", &analytic::fock1_error_rates, py::arg("delta"), py::arg("eta"));
  a.def("cat_parity", &analytic::cat_parity, py::arg("alpha"), py::arg("delta"), py::arg("eta") = 1.0);
  a.def("cat_error_rates", &analytic::cat_error_rates, py::arg("alpha"), py::arg("delta"), py::arg("eta") = 1.0);
  a.def("cat_false_positive_product", &analytic::cat_false_positive_product, py::arg("alpha"), py::arg("eta"));
  a.def("cat_pn", &analytic::cat_pn, py::arg("alpha"), py::arg("delta"), py::arg("eta"), py::arg("n"));
  a.def(
      "baseline_phase_errors",
      [](double photons, double r) {
        auto b = analytic::baseline_phase_errors(photons, r);
        return py::make_tuple(b.shot_noise, b.squeezed);
      },
      py::arg("photons"), py::arg("r") = 0.0);
  a.def(
      "minimize_cat_parity",
      [](double alpha, double eta) {
        auto best = analytic::minimize_cat_parity(alpha, eta);
        return py::make_tuple(best.delta, best.delta_detected, best.parity);
      },
      py::arg("alpha"), py::arg("eta") = 1.0);

  auto f = m.def_submodule("fock", "Truncated Fock-space simulation");
  f.def("recommend_dim", &recommend_dim, py::arg("max_alpha"), py::arg("max_delta"),
        py::arg("tail_tol") = kDefaultTailTol);
  f.def(
      "coherent_state", [](int dim, std::complex<double> alpha) { return coherent_state(FockSpace(dim), alpha).amplitudes(); },
      py::arg("dim"), py::arg("alpha"));
  f.def(
      "cat_state", [](int dim, double alpha) { return cat_state(FockSpace(dim), alpha).amplitudes(); }, py::arg("dim"),
      py::arg("alpha"));
  f.def(
      "displacement", [](int dim, double delta) { return displacement(FockSpace(dim), delta).matrix(); },
      py::arg("dim"), py::arg("delta"));
  f.def(
      "lossy_displaced_cat",
      [](int dim, double alpha, double delta, double eta) {
        return lossy_displaced_cat(FockSpace(dim), alpha, delta, eta).matrix();
      },
      py::arg("dim"), py::arg("alpha"), py::arg("delta"), py::arg("eta"));

  py::class_<verification::CheckResult>(m, "CheckResult")
      .def_readonly("name", &verification::CheckResult::name)
      .def_readonly("passed", &verification::CheckResult::passed)
      .def_readonly("max_discrepancy", &verification::CheckResult::max_discrepancy)
      .def_readonly("tolerance", &verification::CheckResult::tolerance)
      .def_readonly("seconds", &verification::CheckResult::seconds)
      .def_readonly("error", &verification::CheckResult::error);
  m.def(
      "verify",
      [](const std::string& grid, std::optional<double> tolerance) {
        verification::Options o;
        if (grid == "small") {
          o.grid = verification::Grid::Small;
        } else if (grid != "full") {
          throw ValidationError("grid must be 'small' or 'full'");
        }
        o.tolerance = tolerance;
        py::gil_scoped_release release;
        return verification::run(o);
      },
      py::arg("grid") = "full", py::arg("tolerance") = py::none());
}
