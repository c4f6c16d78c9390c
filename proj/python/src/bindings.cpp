#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halfzero/basecurve.hpp"
#include "halfzero/census.hpp"
#include "halfzero/io.hpp"
#include "halfzero/twist.hpp"
#include "halfzero/vanishing.hpp"

namespace py = pybind11;
using namespace hz;

namespace {

// Results cross the boundary as plain dicts/lists, built from the same JSON
// the CLI writes.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Poly parse(std::uint32_t p, std::uint32_t e, const std::string& text) { return Poly::parse(make_field(p, e), text); }

BaseCurve base_for(std::uint32_t p, std::uint32_t e, const std::optional<std::string>& text) {
  if (text) return make_base_curve(parse(p, e, *text), "user");
  FieldPtr F = make_field(p, e);
  auto known = known_bases(F->size());
  if (!known) throw ArithmeticError("no registered base curve for q = " + std::to_string(F->size()));
  return known->curves.front();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact central-point vanishing for quadratic L-functions over F_q(t)";

  py::register_exception<BudgetError>(m, "BudgetError");
  py::register_exception<TwistVerificationError>(m, "TwistVerificationError");
  py::register_exception<CensusInterrupted>(m, "CensusInterrupted");
  py::register_exception<CrossCheckError>(m, "CrossCheckError");
  py::register_exception<InternalAssertion>(m, "InternalAssertion");

  m.def(
      "normalize", [](std::uint32_t p, std::uint32_t e, const std::string& text) {
        Poly f = parse(p, e, text);
        return py::make_tuple(f.to_text(), f.to_pretty());
      },
      py::arg("p"), py::arg("e"), py::arg("poly"), "Canonical text and pretty form of a polynomial.");

  m.def(
      "lpoly",
      [](std::uint32_t p, std::uint32_t e, const std::string& text) {
        return to_py(to_json(l_polynomial(curve_from_model(parse(p, e, text)))));
      },
      py::arg("p"), py::arg("e"), py::arg("poly"), "L-polynomial {q, g, coefficients} of y^2 = D.");

  m.def(
      "vanishes",
      [](std::uint32_t p, std::uint32_t e, const std::string& text) {
        return vanishes(l_polynomial(curve_from_model(parse(p, e, text))));
      },
      py::arg("p"), py::arg("e"), py::arg("poly"));

  m.def(
      "eigenvalue_report",
      [](std::uint32_t p, std::uint32_t e, const std::string& text, int end_rank) {
        LPolynomial L = l_polynomial(curve_from_model(parse(p, e, text)));
        Json j = to_json(eigenvalue_report(L, end_rank));
        auto parts = central_value_parts(L);
        j["E"] = parts.even;
        j["O"] = parts.odd;
        return to_py(j);
      },
      py::arg("p"), py::arg("e"), py::arg("poly"), py::arg("end_rank") = 2);

  m.def(
      "squarefree_part",
      [](std::uint32_t p, std::uint32_t e, const std::string& text) {
        auto d = squarefree_part(parse(p, e, text));
        return py::make_tuple(d.unit, d.squarefree.to_text(), d.square_root.to_text());
      },
      py::arg("p"), py::arg("e"), py::arg("poly"), "(unit, S, Y) with f = unit * S * Y^2.");

  m.def(
      "jacobi",
      [](std::uint32_t p, std::uint32_t e, const std::string& D, const std::string& f) {
        return jacobi(parse(p, e, D), parse(p, e, f));
      },
      py::arg("p"), py::arg("e"), py::arg("D"), py::arg("f"));

  m.def(
      "census",
      [](std::uint32_t p, std::uint32_t e, unsigned degree, bool collect_list, unsigned jobs,
         const std::string& checkpoint, bool force) {
        CensusOptions opts;
        opts.collect_list = collect_list;
        opts.jobs = jobs;
        opts.checkpoint = checkpoint;
        opts.force = force;
        CensusRecord rec;
        {
          py::gil_scoped_release release;
          rec = census(FieldDesc(p, e), degree, opts);
        }
        return to_py(to_json(rec));
      },
      py::arg("p"), py::arg("e"), py::arg("degree"), py::arg("collect_list") = false, py::arg("jobs") = 1,
      py::arg("checkpoint") = "", py::arg("force") = false);

  m.def(
      "sample_census",
      [](std::uint32_t p, std::uint32_t e, unsigned degree, std::uint64_t size, std::uint64_t seed, unsigned jobs) {
        CensusRecord rec;
        {
          py::gil_scoped_release release;
          rec = sample_census(FieldDesc(p, e), degree, size, seed, jobs);
        }
        return to_py(to_json(rec));
      },
      py::arg("p"), py::arg("e"), py::arg("degree"), py::arg("size"), py::arg("seed"), py::arg("jobs") = 1);

  m.def(
      "find_base_curves",
      [](std::uint32_t p, std::uint32_t e, int max_genus, int min_genus, bool twists, unsigned jobs) {
        BaseSearchOptions opts;
        opts.max_genus = max_genus;
        opts.min_genus = min_genus;
        opts.twists = twists;
        opts.jobs = jobs;
        std::vector<BaseCurve> found;
        {
          py::gil_scoped_release release;
          found = find_base_curves(FieldDesc(p, e), opts);
        }
        Json out = Json::array();
        for (const auto& b : found) out.push_back(to_json(b));
        return to_py(out);
      },
      py::arg("p"), py::arg("e"), py::arg("max_genus") = 1, py::arg("min_genus") = 1, py::arg("twists") = true,
      py::arg("jobs") = 1);

  m.def(
      "twist_family",
      [](std::uint32_t p, std::uint32_t e, unsigned bound, std::optional<std::string> base, bool verify,
         unsigned jobs) {
        BaseCurve b = base_for(p, e, base);
        FamilyOptions opts;
        opts.degree_bound = bound;
        opts.verify = verify;
        opts.jobs = jobs;
        TwistFamilyReport r = [&] {
          py::gil_scoped_release release;
          return generate_family(b, opts);
        }();
        return to_py(to_json(r));
      },
      py::arg("p"), py::arg("e"), py::arg("bound"), py::arg("base") = py::none(), py::arg("verify") = true,
      py::arg("jobs") = 1);

  m.def(
      "density",
      [](std::uint32_t p, std::uint32_t e, unsigned truncation_degree, std::optional<std::string> base) {
        BinaryForm form = homogenize(base_for(p, e, base));
        DensityEstimate est = [&] {
          py::gil_scoped_release release;
          return poonen_density(form, truncation_degree);
        }();
        return to_py(to_json(est));
      },
      py::arg("p"), py::arg("e"), py::arg("truncation_degree"), py::arg("base") = py::none());
}
