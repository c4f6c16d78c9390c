// Command line front end: census tables, sampling, single-curve reports, base
// curve search, twist families and local densities.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "halfzero/basecurve.hpp"
#include "halfzero/census.hpp"
#include "halfzero/io.hpp"
#include "halfzero/parallel.hpp"
#include "halfzero/twist.hpp"
#include "halfzero/vanishing.hpp"

using namespace hz;

namespace {

struct FieldArgs {
  std::uint32_t p = 0;
  std::uint32_t e = 1;
};

void add_field(CLI::App* cmd, FieldArgs& f) {
  cmd->add_option("--p", f.p, "Characteristic (odd prime)")->required();
  cmd->add_option("--e", f.e, "Extension degree of F_q over F_p")->default_val(1);
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out, text);
  }
}

void emit_csv(const std::string& text, const std::string& path) {
  if (!path.empty()) write_file_atomic(path, text);
}

Json lpoly_report(const Poly& D, int end_rank) {
  Curve C = curve_from_model(D);
  LPolynomial L = l_polynomial(C);
  auto parts = central_value_parts(L);
  auto eig = eigenvalue_report(L, end_rank);
  return Json{{"D", {{"text", D.to_text()}, {"pretty", D.to_pretty()}}},
              {"genus", C.genus},
              {"lpoly", to_json(L)},
              {"E", parts.even},
              {"O", parts.odd},
              {"vanishes", eig.vanishes},
              {"nu", eig.nu},
              {"m", eig.m},
              {"rank_lower_bound", eig.rank_lower_bound}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact central-point vanishing for quadratic L-functions over F_q(t)"};
  app.require_subcommand(1);
  unsigned jobs = default_jobs();
  std::string out;

  // census
  FieldArgs cf;
  unsigned c_degree = 0;
  unsigned c_to = 0;
  bool c_list = false, c_force = false;
  std::string c_checkpoint, c_csv;
  double c_cross = -1.0;
  long c_every_ms = 2000;
  auto* census_cmd = app.add_subcommand("census", "Exhaustive vanishing count over monic squarefree D of degree d");
  add_field(census_cmd, cf);
  census_cmd->add_option("--degree", c_degree, "Degree d of D")->required();
  census_cmd->add_option("--to-degree", c_to, "Also run degrees d+1..TO (one record each)");
  census_cmd->add_flag("--list", c_list, "Include the vanishing D in the record");
  census_cmd->add_option("--jobs", jobs, "Worker threads (default: HALFZERO_JOBS or all cores)");
  census_cmd->add_option("--checkpoint", c_checkpoint, "Checkpoint file (resumed if present; single degree only)");
  census_cmd->add_option("--checkpoint-every", c_every_ms, "Milliseconds between checkpoint writes")
      ->default_val(2000);
  census_cmd->add_flag("--force", c_force, "Run even when the cost estimate exceeds the budget");
  census_cmd->add_option("--csv", c_csv, "Also write the degree,vanishing_count,total,exponent table here");
  census_cmd->add_option("--cross-check", c_cross,
                         "Recheck the listed D (and this fraction of the rest) with character sums");
  census_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  // sample
  FieldArgs sf;
  unsigned s_degree = 0;
  std::uint64_t s_size = 0, s_seed = 0;
  std::string s_csv;
  auto* sample_cmd = app.add_subcommand("sample", "Sampled vanishing estimate (SplitMix64, with replacement)");
  add_field(sample_cmd, sf);
  sample_cmd->add_option("--degree", s_degree, "Degree d of D")->required();
  sample_cmd->add_option("--size", s_size, "Number of sampled D")->required();
  sample_cmd->add_option("--seed", s_seed, "Seed")->required();
  sample_cmd->add_option("--jobs", jobs, "Worker threads");
  sample_cmd->add_option("--csv", s_csv, "Also write a CSV row here");
  sample_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  // lpoly / rank
  FieldArgs lf;
  std::string l_poly;
  int end_rank = 2;
  auto* lpoly_cmd = app.add_subcommand("lpoly", "L-polynomial, central value parts and Weil multiplicity of y^2 = D");
  add_field(lpoly_cmd, lf);
  lpoly_cmd->add_option("--poly", l_poly, "D, canonical text or comma-separated coefficients (leading first)")
      ->required();
  lpoly_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  FieldArgs rf;
  std::string r_poly;
  auto* rank_cmd = app.add_subcommand("rank", "Twist rank lower bound 2m or 4m from the Weil multiplicity");
  add_field(rank_cmd, rf);
  rank_cmd->add_option("--poly", r_poly, "D, canonical text or comma-separated coefficients")->required();
  rank_cmd->add_option("--end-rank", end_rank, "Rank of End(E0): 2 or 4")
      ->check(CLI::IsMember({2, 4}))
      ->default_val(2);
  rank_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  // find-base
  FieldArgs bf;
  int b_max_genus = 1, b_min_genus = 1;
  bool b_no_twists = false;
  auto* base_cmd = app.add_subcommand("find-base", "Search for base curves with sqrt(q) as a Frobenius eigenvalue");
  add_field(base_cmd, bf);
  base_cmd->add_option("--max-genus", b_max_genus, "Largest genus searched")->default_val(1);
  base_cmd->add_option("--min-genus", b_min_genus, "Smallest genus searched")->default_val(1);
  base_cmd->add_flag("--no-twists", b_no_twists, "Only monic f");
  base_cmd->add_option("--jobs", jobs, "Worker threads");
  base_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  // twist
  FieldArgs tf;
  std::string t_base, t_csv;
  unsigned t_bound = 1;
  bool t_verify = false, t_raw = false;
  auto* twist_cmd = app.add_subcommand("twist", "Twist family D = squarefree part of F(u, v), deg u, v < B");
  add_field(twist_cmd, tf);
  twist_cmd->add_option("--base", t_base, "Base polynomial f (default: the registered base for q)");
  twist_cmd->add_option("--bound", t_bound, "Degree bound B")->required();
  twist_cmd->add_flag("--verify", t_verify, "Check every distinct D with the zeta pipeline");
  twist_cmd->add_flag("--no-dedup", t_raw, "Scan every pair instead of coprime pairs with v monic");
  twist_cmd->add_option("--jobs", jobs, "Worker threads");
  twist_cmd->add_option("--csv", t_csv, "Also write D,u,v,unit,Y,fiber_size,verified here");
  twist_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  // density
  FieldArgs df;
  std::string d_base;
  unsigned d_bound = 1;
  double d_budget = 2e8;
  auto* density_cmd = app.add_subcommand("density", "Truncated local density product for the base form");
  add_field(density_cmd, df);
  density_cmd->add_option("--base", d_base, "Base polynomial f (default: the registered base for q)");
  density_cmd->add_option("--max-prime-degree", d_bound, "Truncation degree B")->required();
  density_cmd->add_option("--budget", d_budget, "Maximum residue pairs enumerated");
  density_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  auto base_for = [](const FieldArgs& fa, const std::string& text) {
    FieldPtr F = make_field(fa.p, fa.e);
    if (!text.empty()) return make_base_curve(Poly::parse(F, text), "user");
    auto known = known_bases(F->size());
    if (!known) {
      throw ArithmeticError("no registered base curve for q = " + std::to_string(F->size()) + "; try " +
                            describe_recipe(FieldDesc(fa.p, fa.e)));
    }
    return known->curves.front();
  };

  try {
    if (*census_cmd) {
      FieldDesc field(cf.p, cf.e);
      const unsigned last = std::max(c_degree, c_to);
      if (last != c_degree && !c_checkpoint.empty()) throw ArithmeticError("--checkpoint needs a single degree");
      std::vector<CensusRecord> records;
      Json cross = Json::array();
      for (unsigned d = c_degree; d <= last; ++d) {
        CensusOptions opts;
        opts.collect_list = c_list || c_cross >= 0.0;
        opts.jobs = jobs;
        opts.checkpoint = c_checkpoint;
        opts.force = c_force;
        opts.checkpoint_interval = std::chrono::milliseconds(c_every_ms);
        const double est = census_cost_estimate(field.q(), d);
        std::fprintf(stderr, "census q=%llu d=%u: %llu D, about %.3g character evaluations\n",
                     static_cast<unsigned long long>(field.q()), d,
                     static_cast<unsigned long long>(monic_squarefree_count(field.q(), d)), est);
        CensusRecord rec = census(field, d, opts);
        if (c_cross >= 0.0) {
          CrossCheckOptions co;
          co.fraction = c_cross;
          auto rep = cross_check(rec, co);
          cross.push_back(Json{{"degree", d},
                               {"vanishing_checked", rep.vanishing_checked},
                               {"other_checked", rep.other_checked},
                               {"passed", rep.passed}});
          if (!c_list) {
            rec.list.clear();
            rec.list_collected = false;
          }
        }
        records.push_back(std::move(rec));
      }
      Json j;
      if (records.size() == 1 && cross.empty()) {
        j = to_json(records.front());
      } else {
        Json recs = Json::array();
        for (const auto& r : records) recs.push_back(to_json(r));
        Json cum = Json::array();
        for (const auto& row : cumulative(records)) {
          cum.push_back(Json{{"degree", row.degree},
                             {"population", row.population},
                             {"vanishing", row.vanishing},
                             {"vanishing_odd_degree", row.vanishing_odd_degree},
                             {"vanishing_even_degree", row.vanishing_even_degree}});
        }
        j = Json{{"records", recs}, {"cumulative", cum}};
        if (!cross.empty()) j["cross_check"] = cross;
      }
      emit(j, out);
      emit_csv(census_csv(records), c_csv);
    } else if (*sample_cmd) {
      FieldDesc field(sf.p, sf.e);
      std::fprintf(stderr, "sample q=%llu d=%u: %llu draws\n", static_cast<unsigned long long>(field.q()), s_degree,
                   static_cast<unsigned long long>(s_size));
      auto rec = sample_census(field, s_degree, s_size, s_seed, jobs);
      emit(to_json(rec), out);
      emit_csv(census_csv({rec}), s_csv);
    } else if (*lpoly_cmd) {
      FieldPtr F = make_field(lf.p, lf.e);
      emit(lpoly_report(Poly::parse(F, l_poly), 2), out);
    } else if (*rank_cmd) {
      FieldPtr F = make_field(rf.p, rf.e);
      Json j = lpoly_report(Poly::parse(F, r_poly), end_rank);
      j["end_rank"] = end_rank;
      emit(j, out);
    } else if (*base_cmd) {
      FieldDesc field(bf.p, bf.e);
      BaseSearchOptions opts;
      opts.max_genus = b_max_genus;
      opts.min_genus = b_min_genus;
      opts.twists = !b_no_twists;
      opts.jobs = jobs;
      Json curves = Json::array();
      for (const auto& b : find_base_curves(field, opts)) curves.push_back(to_json(b));
      emit(Json{{"q", field.q()}, {"max_genus", b_max_genus}, {"curves", curves}}, out);
    } else if (*twist_cmd) {
      FamilyOptions opts;
      opts.degree_bound = t_bound;
      opts.verify = t_verify;
      opts.canonicalize = !t_raw;
      opts.jobs = jobs;
      auto report = generate_family(base_for(tf, t_base), opts);
      emit(to_json(report), out);
      emit_csv(family_csv(report), t_csv);
    } else if (*density_cmd) {
      auto form = homogenize(base_for(df, d_base));
      emit(to_json(poonen_density(form, d_bound, static_cast<std::uint64_t>(d_budget))), out);
    }
  } catch (const TwistVerificationError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 3;
  } catch (const BudgetError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 4;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 0;
}
