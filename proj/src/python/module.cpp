#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pct/cli.hpp"
#include "pct/errors.hpp"
#include "pct/oracle/suites.hpp"
#include "pct/speclang/model.hpp"
#include "pct/speclang/parser.hpp"
#include "pct/speclang/printer.hpp"

namespace py = pybind11;

namespace {

// Rationals cross the boundary as "n/d" strings; the Python side turns them
// into fractions.Fraction.
std::string exact(const pct::Rational& r) { return pct::to_string(r); }

py::object maybe(const std::optional<pct::Rational>& r) {
  return r ? py::object(py::str(exact(*r))) : py::object(py::none());
}

std::string sat_level(const std::string& text, const std::string& impl, const std::string& contract) {
  const auto model = pct::speclang::Model::from_text(text);
  return exact(pct::sat_level(model.implementation(impl), model.prob_contract(contract)).level);
}

py::dict refine_level(const std::string& text, const std::string& from, const std::string& to) {
  const auto model = pct::speclang::Model::from_text(text);
  const pct::RefineReport r = pct::refine_level(model.prob_contract(from), model.prob_contract(to));
  py::dict d;
  d["level"] = maybe(r.level);
  d["p_good1"] = exact(r.p_good1);
  d["p_good_both"] = exact(r.p_good_both);
  d["degenerate"] = r.degenerate();
  return d;
}

std::string compose(const std::string& text, const std::string& left, const std::string& right,
                    const std::string& name) {
  const auto model = pct::speclang::Model::from_text(text);
  return pct::speclang::print(pct::speclang::with_composition(model, left, right, name));
}

std::string format(const std::string& text) { return pct::speclang::print(pct::speclang::parse(text)); }

py::dict verify(std::size_t seeds, std::uint64_t first_seed, const std::string& budget) {
  pct::oracle::SuiteOptions opt;
  opt.seeds = seeds;
  opt.first_seed = first_seed;
  opt.budget = pct::oracle::Budget::parse(budget);
  const pct::oracle::VerifyReport report = pct::oracle::verify(opt);
  py::dict out;
  for (const auto& s : report.suites) {
    py::dict d;
    d["passed"] = s.passed;
    d["total"] = s.total;
    d["skipped"] = s.skipped;
    d["oracle_mismatches"] = s.oracle_mismatches;
    d["first_failure"] = s.first_failure ? py::object(py::int_(*s.first_failure)) : py::object(py::none());
    out[py::str(s.name)] = d;
  }
  return out;
}

py::dict example() {
  const pct::cli::ExampleReport r = pct::cli::run_example();
  py::dict d;
  d["alpha"] = exact(r.alpha);
  d["beta"] = exact(r.beta);
  d["composed"] = exact(r.composed);
  d["composed_pports"] = r.composed_pports;
  d["composed_vs_stated"] = exact(r.composed_vs_stated);
  d["gamma"] = maybe(r.gamma);
  d["gamma_p_good1"] = exact(r.gamma_p_good1);
  d["gamma_computed"] = maybe(r.gamma_computed);
  d["vs_prime"] = exact(r.vs_prime);
  d["disjoint_composed"] = exact(r.disjoint_composed);
  d["disjoint_product"] = exact(r.disjoint_product);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact probabilistic assume/guarantee contract queries";

  static py::exception<pct::Error> error(m, "ContractError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const pct::speclang::SpecError& e) {
      py::set_error(error, e.diagnostic().format().c_str());
    } catch (const pct::Error& e) {
      py::set_error(error, (std::string(pct::to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("sat_level", &sat_level, py::arg("text"), py::arg("impl"), py::arg("contract"));
  m.def("refine_level", &refine_level, py::arg("text"), py::arg("refining"), py::arg("refined"));
  m.def("compose", &compose, py::arg("text"), py::arg("left"), py::arg("right"), py::arg("name"));
  m.def("format", &format, py::arg("text"));
  m.def("verify", &verify, py::arg("seeds") = 50, py::arg("first_seed") = 0, py::arg("budget") = "");
  m.def("example", &example);
  m.def("example_document", [] { return std::string(pct::cli::example_document()); });
}
