#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qseries/modular.hpp"
#include "qseries/partitions.hpp"
#include "qseries/qexpr.hpp"
#include "qseries/verifier.hpp"

namespace py = pybind11;
using namespace qseries;

namespace {

// Coefficients go across as "p/q" strings; the Python side makes Fractions.
py::tuple series_tuple(const LaurentSeries& s) {
  std::vector<std::string> coeffs;
  coeffs.reserve(s.coeffs().size());
  for (const auto& c : s.coeffs()) coeffs.push_back(rational_to_string(c));
  return py::make_tuple(s.lo(), s.prec(), coeffs);
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["id"] = r.id;
  d["passed"] = r.pass;
  d["checked_order"] = r.checked_order;
  d["first_failure"] = r.first_failure ? py::cast(*r.first_failure) : py::none();
  d["lhs_coeff"] = r.lhs_coeff;
  d["rhs_coeff"] = r.rhs_coeff;
  d["message"] = r.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact q-series arithmetic and certification at level 121";

  // Translators run newest first, so the specific one is registered last.
  py::register_exception<Error>(m, "QSeriesError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  m.def("_expand", [](const std::string& text, Exponent order) {
    LaurentSeries s;
    {
      py::gil_scoped_release release;
      Evaluator ev;
      s = ev.eval(parse(text), order);
    }
    return series_tuple(s);
  }, py::arg("text"), py::arg("order"));

  m.def("_mathcal_f", [](Exponent b, Exponent order) { return series_tuple(mathcal_f(b, order)); },
        py::arg("b"), py::arg("order"));

  m.def("stats", [](int n, int modulus, bool allow_large) {
    const auto s = stats_table(n, modulus, allow_large);
    py::dict d;
    d["n"] = s.n;
    d["m"] = s.m;
    d["p"] = s.p;
    d["M"] = s.M;
    d["N"] = s.N;
    d["M_omega"] = s.M_omega;
    d["NT"] = s.NT;
    return d;
  }, py::arg("n"), py::arg("modulus") = 11, py::arg("allow_large") = false);

  m.def("cusps", [](Exponent level) {
    std::vector<std::tuple<Exponent, Exponent, Exponent>> out;
    for (const auto& c : cusp_set(level)) out.emplace_back(c.a, c.c, c.width);
    return out;
  }, py::arg("level"), "(a, c, width) for each cusp a/c of Gamma_1(level).");

  m.def("_bound", [](const std::string& lhs, const std::string& rhs, Exponent level) {
    return rational_to_string(bound_for(parse(lhs), parse(rhs), level));
  }, py::arg("lhs"), py::arg("rhs"), py::arg("level"));

  m.def("_certify", [](const std::string& id, const std::string& lhs, const std::string& rhs,
                       Exponent level) {
    Evaluator ev;
    return certificate_to_json(certify(id, parse(lhs), parse(rhs), level, ev));
  }, py::arg("id"), py::arg("lhs"), py::arg("rhs"), py::arg("level"),
     py::call_guard<py::gil_scoped_release>());

  m.def("verify_suite", [](const std::string& name, std::optional<Exponent> order, int jobs) {
    SuiteOptions opts;
    opts.order = order;
    opts.jobs = jobs;
    std::vector<VerificationReport> reports;
    {
      py::gil_scoped_release release;
      reports = run_suite(name, opts);
    }
    py::list out;
    for (const auto& r : reports) out.append(report_dict(r));
    return out;
  }, py::arg("name"), py::arg("order") = py::none(), py::arg("jobs") = 1);

  m.def("suite_names", &suite_names);
}
