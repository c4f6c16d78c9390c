#include <filesystem>

#include "doctest.h"
#include "halfzero/census.hpp"
#include "halfzero/io.hpp"
#include "oracles.hpp"

using namespace hz;

namespace {

std::uint64_t oracle_count(const FieldDesc& fd, unsigned d) {
  std::uint64_t n = 0;
  for (const auto& D : enumerate_monic(fd.field(), d, true)) {
    if (D.degree() >= 3 && oracle::divisible_by_weil_factor(oracle::brute_lpoly(D), fd.q())) ++n;
  }
  return n;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("halfzero_test_" + name);
}

}  // namespace

TEST_CASE("weil divisibility oracle") {
  CHECK(oracle::divisible_by_weil_factor({1, 0, -10, 0, 25}, 5));
  CHECK(oracle::divisible_by_weil_factor({1, -6, 9}, 9));
  CHECK_FALSE(oracle::divisible_by_weil_factor({1, 6, 9}, 9));
  CHECK_FALSE(oracle::divisible_by_weil_factor({1, 2, 5}, 5));
}

TEST_CASE("census agrees with the brute-force oracle") {
  for (auto [p, e, dmax] : {std::tuple{3u, 1u, 7u}, std::tuple{5u, 1u, 5u}, std::tuple{3u, 2u, 4u}}) {
    FieldDesc fd(p, e);
    for (unsigned d = 1; d <= dmax; ++d) {
      CensusOptions opts;
      auto rec = census(fd, d, opts);
      CHECK(rec.total == monic_squarefree_count(fd.q(), d));
      CHECK(rec.vanishing_count == oracle_count(fd, d));
    }
  }
}

TEST_CASE("census reference rows") {
  FieldDesc f5(5, 1);
  CensusOptions opts;
  opts.collect_list = true;
  auto r5 = census(f5, 5, opts);
  CHECK(r5.total == 2500);
  CHECK(r5.list == std::vector<std::string>{"100040"});
  CHECK(*r5.exponent == 0.0);
  auto r3 = census(f5, 3, opts);
  CHECK(r3.vanishing_count == 0);
  CHECK_FALSE(r3.exponent.has_value());
  auto r9 = census(FieldDesc(3, 2), 4, opts);
  CHECK(r9.vanishing_count == 18);
  CHECK(std::abs(*r9.exponent - std::log(18.0) / std::log(5832.0)) < 1e-12);
}

TEST_CASE("census is independent of worker count and block size") {
  FieldDesc fd(3, 2);
  CensusOptions a;
  a.collect_list = true;
  a.jobs = 1;
  CensusOptions b = a;
  b.jobs = 4;
  b.block_size = 97;
  auto ra = census(fd, 4, a);
  auto rb = census(fd, 4, b);
  CHECK(to_json(ra).dump() == to_json(rb).dump());
}

TEST_CASE("checkpoint kill and resume") {
  FieldDesc fd(5, 1);
  auto path = temp_path("ckpt.json");
  std::filesystem::remove(path);
  CensusOptions base;
  base.collect_list = true;
  base.block_size = 257;
  auto ref = census(fd, 7, base);

  CensusOptions first = base;
  first.checkpoint = path.string();
  first.jobs = 3;
  first.stop_after_blocks = 123;
  CHECK_THROWS_AS(census(fd, 7, first), CensusInterrupted);
  REQUIRE(std::filesystem::exists(path));

  CensusOptions resume = base;
  resume.checkpoint = path.string();
  resume.jobs = 2;
  auto got = census(fd, 7, resume);
  CHECK(to_json(got).dump() == to_json(ref).dump());

  // A finished checkpoint is resumed as a no-op.
  auto again = census(fd, 7, resume);
  CHECK(to_json(again).dump() == to_json(ref).dump());

  // A checkpoint for another census is refused.
  CHECK_THROWS_AS(census(fd, 6, resume), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("census budget") {
  CensusOptions opts;
  CHECK_THROWS_AS(census(FieldDesc(3, 2), 7, opts), BudgetError);
  CHECK(census_cost_estimate(5, 8) == 312500.0 * (5 + 25 + 125));
  CHECK_THROWS_AS(census(FieldDesc(5, 1), 0, opts), ArithmeticError);
}

TEST_CASE("SplitMix64") {
  // Reference outputs of the published generator for seed 0.
  SplitMix64 r(0);
  CHECK(r.next() == 0xE220A8397B1DCDAFULL);
  CHECK(r.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(r.next() == 0x06C45D188009454FULL);
  SplitMix64 s(42);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    auto x = s.below(7);
    REQUIRE(x < 7);
    ++hist[x];
  }
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  CHECK(SplitMix64(1).below(1) == 0);
}

TEST_CASE("sample_census") {
  FieldDesc f5(5, 1);
  auto a = sample_census(f5, 7, 20000, 99, 1);
  auto b = sample_census(f5, 7, 20000, 99, 3);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.mode == CensusMode::kSampled);
  CHECK(a.hits <= a.sample_size);

  auto fb = sample_census(FieldDesc(3, 1), 3, 1000000000ULL, 5);
  CHECK(fb.fallback_exhaustive);
  CHECK(fb.mode == CensusMode::kExhaustive);
  CHECK(fb.total == 18);

  // d = 9 over F_5: the exact rate is 105 / 1562500 (exhaustive census); a
  // seeded sample must land inside its 99% binomial interval.
  const std::uint64_t n = 200000;
  auto s = sample_census(f5, 9, n, 2024, 1);
  auto [lo, hi] = binomial_interval(n, 105.0 / 1562500.0);
  CHECK(static_cast<double>(s.hits) >= lo);
  CHECK(static_cast<double>(s.hits) <= hi);
  CHECK_THROWS_AS(sample_census(f5, 9, 0, 1), ArithmeticError);
}

TEST_CASE("cumulative view") {
  std::vector<CensusRecord> recs;
  CensusOptions opts;
  for (unsigned d = 8; d >= 3; --d) recs.push_back(census(FieldDesc(5, 1), d, opts));
  auto rows = cumulative(recs);
  REQUIRE(rows.size() == 6);
  CHECK(rows.front().degree == 3);
  CHECK(rows.back().vanishing == 16);
  CHECK(rows.back().population == 100 + 500 + 2500 + 12500 + 62500 + 312500);
  CHECK(rows.back().vanishing_odd_degree == 11);
  CHECK(rows.back().vanishing_even_degree == 5);
}

TEST_CASE("cross_check") {
  CensusOptions opts;
  opts.collect_list = true;
  auto rec = census(FieldDesc(5, 1), 5, opts);
  CrossCheckOptions co;
  co.fraction = 0.02;
  auto rep = cross_check(rec, co);
  CHECK(rep.vanishing_checked == 1);
  CHECK(rep.other_checked == 50);
  CHECK(rep.passed == 51);

  auto empty = census(FieldDesc(5, 1), 3, opts);
  CHECK(cross_check(empty, {}).passed == 0);

  CrossCheckOptions bad;
  bad.mutate = [](LPolynomial& L) { L.coeffs[1] += 1; };
  CHECK_THROWS_AS(cross_check(rec, bad), CrossCheckError);

  CensusRecord nolist = rec;
  nolist.list_collected = false;
  CHECK_THROWS_AS(cross_check(nolist, {}), ArithmeticError);
}

TEST_CASE("json and csv") {
  LPolynomial L;
  L.q = 5;
  L.genus = 2;
  L.coeffs = {1, 0, -10, 0, 25};
  auto j = to_json(L);
  CHECK(j.dump() == R"({"q":5,"g":2,"coefficients":[1,0,-10,0,25]})");
  CHECK(lpoly_from_json(j).coeffs == L.coeffs);
  Json broken = j;
  broken["g"] = 3;
  CHECK_THROWS_AS(lpoly_from_json(broken), ArithmeticError);

  CensusOptions opts;
  opts.collect_list = true;
  auto rec = census(FieldDesc(5, 1), 5, opts);
  auto back = census_record_from_json(to_json(rec));
  CHECK(to_json(back).dump() == to_json(rec).dump());
  CHECK(census_csv({rec}) == "degree,vanishing_count,total,exponent\n5,1,2500,0.000000\n");
}
