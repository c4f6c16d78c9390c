#include "halfzero/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hz {

namespace {

Json poly_json(const Poly& f) { return Json{{"text", f.to_text()}, {"pretty", f.to_pretty()}}; }

std::string format_exponent(const std::optional<double>& x) {
  if (!x) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *x);
  return buf;
}

}  // namespace

Json to_json(const LPolynomial& P) { return Json{{"q", P.q}, {"g", P.genus}, {"coefficients", P.coeffs}}; }

LPolynomial lpoly_from_json(const Json& j) {
  LPolynomial P;
  P.q = j.at("q").get<std::uint64_t>();
  P.genus = j.at("g").get<int>();
  P.coeffs = j.at("coefficients").get<std::vector<std::int64_t>>();
  if (P.coeffs.size() != static_cast<std::size_t>(2 * P.genus + 1)) {
    throw ArithmeticError("L-polynomial JSON has " + std::to_string(P.coeffs.size()) + " coefficients for genus " +
                          std::to_string(P.genus));
  }
  return P;
}

Json to_json(const EigenvalueReport& r) {
  return Json{{"vanishes", r.vanishes}, {"nu", r.nu}, {"m", r.m}, {"rank_lower_bound", r.rank_lower_bound}};
}

Json to_json(const CensusRecord& r) {
  Json j{{"p", r.p},
         {"e", r.e},
         {"q", r.q},
         {"degree", r.degree},
         {"mode", to_string(r.mode)},
         {"total", r.total},
         {"vanishing_count", r.vanishing_count},
         {"exponent", r.exponent ? Json(*r.exponent) : Json(nullptr)}};
  if (r.mode == CensusMode::kSampled || r.fallback_exhaustive) {
    j["sample_size"] = r.sample_size;
    j["seed"] = r.seed;
    j["hits"] = r.hits;
    j["fallback_exhaustive"] = r.fallback_exhaustive;
  }
  if (r.list_collected) j["list"] = r.list;
  return j;
}

CensusRecord census_record_from_json(const Json& j) {
  CensusRecord r;
  r.p = j.at("p").get<std::uint32_t>();
  r.e = j.at("e").get<std::uint32_t>();
  r.q = j.at("q").get<std::uint64_t>();
  r.degree = j.at("degree").get<unsigned>();
  r.mode = j.at("mode").get<std::string>() == "sampled" ? CensusMode::kSampled : CensusMode::kExhaustive;
  r.total = j.at("total").get<std::uint64_t>();
  r.vanishing_count = j.at("vanishing_count").get<std::uint64_t>();
  if (!j.at("exponent").is_null()) r.exponent = j.at("exponent").get<double>();
  r.sample_size = j.value("sample_size", std::uint64_t{0});
  r.seed = j.value("seed", std::uint64_t{0});
  r.hits = j.value("hits", std::uint64_t{0});
  r.fallback_exhaustive = j.value("fallback_exhaustive", false);
  if (j.contains("list")) {
    r.list_collected = true;
    r.list = j.at("list").get<std::vector<std::string>>();
  }
  return r;
}

Json to_json(const BaseCurve& b) {
  return Json{{"f", poly_json(b.f)},
              {"genus", b.genus},
              {"form", to_string(b.form.form)},
              {"f1", poly_json(b.form.f1)},
              {"f2", poly_json(b.form.f2)},
              {"lpoly", to_json(b.lpoly)},
              {"eigen", to_json(b.eigen)},
              {"provenance", b.provenance}};
}

Json to_json(const TwistFamilyReport& r) {
  Json skipped = Json::object();
  for (const auto& [s, c] : r.skipped) skipped[to_string(s)] = c;
  Json primes = Json::array();
  for (const auto& p : r.localized_primes) primes.push_back(p.to_pretty());
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"D", poly_json(e.D)},
                           {"u", e.first_witness.u.to_pretty()},
                           {"v", e.first_witness.v.to_pretty()},
                           {"unit", e.first_witness.unit},
                           {"Y", e.first_witness.Y.to_pretty()},
                           {"fiber_size", e.fiber_size},
                           {"max_divisor_count", e.max_divisor_count},
                           {"verified", e.verified}});
  }
  return Json{{"base", to_json(r.base)},
              {"n", r.form.n},
              {"form_coefficients", r.form.coeffs},
              {"degree_bound", r.options.degree_bound},
              {"verify", r.options.verify},
              {"canonicalize", r.options.canonicalize},
              {"localized_primes", primes},
              {"pairs_scanned", r.pairs_scanned},
              {"pairs_emitted", r.pairs_emitted},
              {"pairs_in_w", r.pairs_in_w},
              {"skipped", skipped},
              {"distinct_d", r.entries.size()},
              {"verified_count", r.verified_count},
              {"max_fiber", r.max_fiber},
              {"fiber_bound", r.fiber_bound},
              {"exponent", r.exponent ? Json(*r.exponent) : Json(nullptr)},
              {"entries", entries}};
}

Json to_json(const DensityEstimate& d) {
  Json primes = Json::array();
  for (const auto& p : d.localized_primes) primes.push_back(p.to_pretty());
  Json factors = Json::array();
  for (const auto& f : d.factors) {
    factors.push_back(Json{{"prime", f.prime.to_pretty()}, {"norm", f.norm}, {"c_p", f.c_p}, {"factor", f.factor}});
  }
  return Json{{"n", d.n},
              {"truncation_degree", d.truncation_degree},
              {"localized_primes", primes},
              {"factors", factors},
              {"partial_product", d.partial_product},
              {"heuristic_tail", d.heuristic_tail},
              {"heuristic_density", d.heuristic_density},
              {"tail_note", "heuristic: assumes c_p <= n |p|^2 for every prime beyond the truncation degree"}};
}

std::string census_csv(const std::vector<CensusRecord>& records) {
  std::ostringstream out;
  out << "degree,vanishing_count,total,exponent\n";
  for (const auto& r : records) {
    out << r.degree << ',' << r.vanishing_count << ',' << r.total << ',' << format_exponent(r.exponent) << '\n';
  }
  return out.str();
}

std::string family_csv(const TwistFamilyReport& r) {
  std::ostringstream out;
  out << "D,u,v,unit,Y,fiber_size,verified\n";
  for (const auto& e : r.entries) {
    out << e.D.to_text() << ',' << e.first_witness.u.to_text() << ',' << e.first_witness.v.to_text() << ','
        << e.first_witness.unit << ',' << e.first_witness.Y.to_text() << ',' << e.fiber_size << ','
        << (e.verified ? "true" : "false") << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    if (!out.flush()) throw std::runtime_error("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hz
