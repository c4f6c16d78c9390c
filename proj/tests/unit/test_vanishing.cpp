#include "doctest.h"
#include "halfzero/vanishing.hpp"
#include "oracles.hpp"

using namespace hz;

namespace {

LPolynomial lp(std::uint64_t q, std::vector<std::int64_t> c) {
  LPolynomial L;
  L.q = q;
  L.genus = static_cast<int>(c.size() - 1) / 2;
  L.coeffs = std::move(c);
  return L;
}

}  // namespace

TEST_CASE("central_value_parts") {
  auto a = central_value_parts(lp(7, {1}));
  CHECK(a.even == 1);
  CHECK(a.odd == 0);
  // 1 - 6u + 9u^2, q = 9: E = 9 + 9 = 18, O = -6
  auto b = central_value_parts(lp(9, {1, -6, 9}));
  CHECK(b.even == 18);
  CHECK(b.odd == -6);
  CHECK(b.even + 3 * b.odd == 0);
  auto c = central_value_parts(lp(5, {1, 0, -10, 0, 25}));
  CHECK(c.even == 0);
  CHECK(c.odd == 0);
}

TEST_CASE("vanishes") {
  CHECK(vanishes(lp(5, {1, 0, -10, 0, 25})));
  CHECK(vanishes(lp(9, {1, -6, 9})));
  CHECK_FALSE(vanishes(lp(9, {1, 6, 9})));
  CHECK_FALSE(vanishes(lp(5, {1})));
  // Non-square q needs both parts zero: 1 - 5u^2 alone is not a curve
  // polynomial but exercises the rule.
  CHECK_FALSE(vanishes(lp(5, {1, 2, 5})));
}

TEST_CASE("weil_multiplicity") {
  auto w = weil_multiplicity(lp(5, {1, 0, -10, 0, 25}));
  CHECK(w.nu == 2);
  CHECK(w.m == 1);
  auto z = weil_multiplicity(lp(5, {1}));
  CHECK(z.nu == 0);
  CHECK(z.m == 0);
  // (1 - 3u)^4 (1 + 3u)^2 over q = 9: only the +3 eigenvalue counts.
  auto c = oracle::from_roots({3, 3, 3, 3, -3, -3});
  auto w2 = weil_multiplicity(lp(9, c));
  CHECK(w2.nu == 4);
  CHECK(w2.m == 2);
  // Odd multiplicity cannot come from a curve.
  CHECK_THROWS_AS(weil_multiplicity(lp(9, oracle::from_roots({3, -3}))), InternalAssertion);
}

TEST_CASE("rank_lower_bound") {
  CHECK(rank_lower_bound(1, 2) == 2);
  CHECK(rank_lower_bound(0, 4) == 0);
  CHECK(rank_lower_bound(2, 4) == 8);
  CHECK_THROWS_AS(rank_lower_bound(1, 3), ArithmeticError);
  CHECK(has_full_endomorphism_rank(lp(9, {1, -6, 9})));
  CHECK_FALSE(has_full_endomorphism_rank(lp(9, {1, -2, 9})));
}

TEST_CASE("vanishing agrees with multiplicity; multiplicity even (F_9 deg <= 4, F_3 deg <= 8)") {
  for (auto [p, e, dmax] : {std::tuple{3u, 2u, 4u}, {3u, 1u, 8u}}) {
    auto F = make_field(p, e);
    for (unsigned d = 1; d <= dmax; ++d) {
      for (const auto& D : enumerate_monic(F, d, true)) {
        auto L = l_polynomial(curve_new(D));
        auto w = weil_multiplicity(L);
        REQUIRE(vanishes(L) == (w.nu >= 1));
        REQUIRE(w.nu % 2 == 0);
      }
    }
  }
}
