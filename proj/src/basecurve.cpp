#include "halfzero/basecurve.hpp"

#include <fstream>
#include <mutex>

#include "halfzero/parallel.hpp"
#include "json.hpp"

namespace hz {

std::string to_string(CurveForm form) {
  switch (form) {
    case CurveForm::kOdd:
      return "odd";
    case CurveForm::kEvenReducible:
      return "even_reducible";
    case CurveForm::kUnsuitable:
      return "unsuitable";
  }
  return "unknown";
}

FormCheck check_form(const Poly& f) {
  if (f.degree() < 3) throw ArithmeticError("base curve polynomial must have degree >= 3");
  if (!is_squarefree(f)) throw ArithmeticError("base curve polynomial " + f.to_pretty() + " is not squarefree");
  Poly one = Poly::constant(f.field(), 1);
  if (f.degree() % 2 == 1) return {CurveForm::kOdd, f, one};

  auto factors = factor(f);
  if (factors.size() < 2) return {CurveForm::kUnsuitable, f, one};
  const std::size_t r = factors.size();
  std::optional<Poly> best;
  int best_gap = 0;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << r); ++mask) {
    Poly f1 = one;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask & (std::uint64_t{1} << i)) f1 = f1 * factors[i].first;
    }
    int gap = std::abs(2 * f1.degree() - f.degree());
    if (!best || gap < best_gap || (gap == best_gap && canonical_less(f1, *best))) {
      best = f1;
      best_gap = gap;
    }
  }
  Poly f2 = f / *best;
  return {CurveForm::kEvenReducible, *best, f2};
}

BaseCurve make_base_curve(const Poly& f, std::string provenance) {
  FormCheck form = check_form(f);
  if (form.form == CurveForm::kUnsuitable) {
    throw ArithmeticError("base curve " + f.to_pretty() + " has even degree and irreducible f");
  }
  Curve C = curve_from_model(f);
  LPolynomial L = l_polynomial(C);
  EigenvalueReport eig = eigenvalue_report(L);
  if (!eig.vanishes) {
    throw ArithmeticError("sqrt(q) is not a Frobenius eigenvalue of y^2 = " + f.to_pretty());
  }
  return BaseCurve{f, C.genus, std::move(form), std::move(L), eig, std::move(provenance)};
}

std::vector<BaseCurve> find_base_curves(const FieldDesc& field, const BaseSearchOptions& options) {
  const FieldPtr& F = field.field();
  std::vector<Elem> leads{1};
  if (options.twists) leads.push_back(F->nonsquare());

  struct Task {
    unsigned degree;
    Elem lead;
    std::uint64_t begin;
    std::uint64_t end;
  };
  constexpr std::uint64_t kBlock = 2048;
  std::vector<Task> tasks;
  const unsigned dmin = static_cast<unsigned>(std::max(3, 2 * options.min_genus + 1));
  const unsigned dmax = static_cast<unsigned>(2 * options.max_genus + 2);
  for (unsigned d = dmin; d <= dmax; ++d) {
    if (options.parity == DegreeParity::kOdd && d % 2 == 0) continue;
    if (options.parity == DegreeParity::kEven && d % 2 == 1) continue;
    const std::uint64_t pop = ipow(F->size(), d);
    for (Elem lead : leads) {
      for (std::uint64_t b = 0; b < pop; b += kBlock) tasks.push_back({d, lead, b, std::min(pop, b + kBlock)});
    }
  }

  std::vector<std::vector<BaseCurve>> found(tasks.size());
  parallel_blocks(0, tasks.size(), options.jobs, [&](std::uint64_t t) {
    const Task& task = tasks[t];
    MonicEnumerator en(F, task.degree, true, task.begin, task.end);
    while (auto g = en.next()) {
      Poly f = task.lead == 1 ? *g : scale(*g, task.lead);
      Curve C = curve_from_model(f);
      LPolynomial L = l_polynomial(C);
      if (!vanishes(L)) continue;
      FormCheck form = check_form(f);
      if (form.form == CurveForm::kUnsuitable) continue;
      found[t].push_back(BaseCurve{f, C.genus, std::move(form), L, eigenvalue_report(L), "search"});
    }
  });
  std::vector<BaseCurve> out;
  for (auto& v : found) {
    for (auto& b : v) out.push_back(std::move(b));
  }
  return out;
}

const std::vector<RegistryEntry>& builtin_registry() {
  static const std::vector<RegistryEntry> entries{
      {3, 1, "1000000020", "paper"},
      {5, 1, "100040", "paper"},
  };
  return entries;
}

std::optional<KnownBases> known_bases(std::uint64_t q) {
  KnownBases out;
  for (const auto& entry : builtin_registry()) {
    if (ipow(entry.p, entry.e) != q) continue;
    FieldPtr F = make_field(entry.p, entry.e);
    out.curves.push_back(make_base_curve(Poly::parse(F, entry.f_text), entry.provenance));
  }
  if (out.curves.empty()) return std::nullopt;
  return out;
}

BaseSearchOptions search_recipe(const FieldDesc& field) {
  BaseSearchOptions opts;
  if (exact_sqrt(field.q())) {
    opts.max_genus = 1;
  } else if (field.q() == 3) {
    opts.max_genus = 4;
  } else {
    opts.max_genus = 2;
  }
  return opts;
}

std::string describe_recipe(const FieldDesc& field) {
  auto r = search_recipe(field);
  return "find-base --p " + std::to_string(field.p()) + " --e " + std::to_string(field.e()) + " --max-genus " +
         std::to_string(r.max_genus);
}

std::vector<RegistryEntry> load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry file " + path);
  nlohmann::json j;
  in >> j;
  if (j.value("schema", 0) != 1) throw std::runtime_error("unsupported registry schema in " + path);
  std::vector<RegistryEntry> out;
  for (const auto& b : j.at("bases")) {
    out.push_back({b.at("p").get<std::uint32_t>(), b.at("e").get<std::uint32_t>(), b.at("f").get<std::string>(),
                   b.at("provenance").get<std::string>()});
  }
  return out;
}

}  // namespace hz
