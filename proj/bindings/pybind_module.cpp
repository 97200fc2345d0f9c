// Python face of the core: the five pipeline verbs operating on instance JSON
// text (returning (exit_code, report_json, summary) tuples) and exact scalar
// helpers for the bracket/Pochhammer symbols. Rationals cross the boundary as
// "num/den" strings so no precision is lost.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperint/bracket.hpp"
#include "hyperint/report.hpp"

namespace py = pybind11;
using namespace hyperint;

namespace {

py::tuple pack(const CommandResult& res) {
  return py::make_tuple(res.exit_code, render_report(res.report), res.summary);
}

std::string valuation_text(const Valuation& v) {
  if (v.infinite) return "inf";
  Rat c = v.value;
  c.canonicalize();
  if (c.get_den() != 1) return rat_to_string(c);
  return c.get_num().get_str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact certification of hypergeometric coefficient integrality (core)";

  py::register_exception<InvalidInstance>(m, "InvalidInstanceError", PyExc_ValueError);
  py::register_exception<NotMember>(m, "NotMemberError", PyExc_ValueError);
  py::register_exception<NotPIntegral>(m, "NotPIntegralError", PyExc_ValueError);
  py::register_exception<UndefinedSymbol>(m, "UndefinedSymbolError", PyExc_ValueError);
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimensionError", PyExc_ValueError);
  py::register_exception<PrecisionExhausted>(m, "PrecisionExhaustedError", PyExc_RuntimeError);

  m.def(
      "run_certify",
      [](const std::string& text) { return pack(cmd_certify(parse_instance(text))); },
      py::arg("instance_json"),
      "Run the orbit + weight-maximality certification with empirical prime checks.");

  m.def(
      "run_orbit",
      [](const std::string& text) { return pack(cmd_orbit(parse_instance(text))); },
      py::arg("instance_json"), "Tabulate the parameter orbit.");

  m.def(
      "run_expand",
      [](const std::string& text, const std::vector<long>& shift, unsigned long prime) {
        IntVec s;
        for (long x : shift) s.push_back(Int(x));
        std::optional<unsigned long> p;
        if (prime != 0) p = prime;
        return pack(cmd_expand(parse_instance(text), s, p));
      },
      py::arg("instance_json"), py::arg("shift") = std::vector<long>{}, py::arg("prime") = 0,
      "Expand the series at the (shifted) base point with exact valuations; prime 0 selects "
      "the first admissible prime.");

  m.def(
      "run_classical",
      [](const std::string& text, const std::string& mode) {
        std::optional<RhoMode> rm;
        if (mode == "exact")
          rm = RhoMode::ExactCell;
        else if (mode == "grid")
          rm = RhoMode::Grid;
        else if (!mode.empty())
          throw InvalidInstance("rho mode must be \"exact\" or \"grid\"");
        return pack(cmd_classical(parse_instance(text), rm));
      },
      py::arg("instance_json"), py::arg("rho_mode") = "",
      "Step-function analysis of a classical instance across its parameter orbit.");

  m.def(
      "run_padic_selftest",
      [](unsigned long p, long precision, const std::vector<std::string>& v_list,
         long min_samples) {
        SelftestOptions opt;
        opt.p = p;
        opt.precision = precision;
        opt.min_samples = min_samples;
        for (const std::string& s : v_list) opt.v_list.push_back(rat_from_string(s));
        Int pp(static_cast<long>(p));
        if (p < 2 || mpz_probab_prime_p(pp.get_mpz_t(), 40) == 0)
          throw InvalidInstance("padic selftest: p must be prime");
        return pack(cmd_padic_selftest(opt));
      },
      py::arg("p"), py::arg("precision") = 12, py::arg("v_list") = std::vector<std::string>{},
      py::arg("min_samples") = 10,
      "Verification suite for the ramified p-adic layer.");

  m.def(
      "bracket_value",
      [](const std::string& z, long l) { return rat_to_string(bracket(rat_from_string(z), l)); },
      py::arg("z"), py::arg("l"), "The bracket symbol [z]_l as a \"num/den\" string.");

  m.def(
      "pochhammer_value",
      [](const std::string& z, long l) {
        return rat_to_string(pochhammer(rat_from_string(z), l));
      },
      py::arg("z"), py::arg("l"), "The Pochhammer symbol (z)_l as a \"num/den\" string.");

  m.def(
      "bracket_ord",
      [](const std::string& z, long l, unsigned long p) {
        return valuation_text(bracket_ord_digits(rat_from_string(z), l, p));
      },
      py::arg("z"), py::arg("l"), py::arg("p"),
      "ord_p([z]_l) by the digit formula, as a decimal string or \"inf\".");
}
