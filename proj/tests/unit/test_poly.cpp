#include <random>

#include "doctest.h"
#include "halfzero/poly.hpp"
#include "oracles.hpp"

using namespace hz;

namespace {

Poly P(const FieldPtr& F, std::vector<Elem> c) { return Poly(F, std::move(c)); }

Poly random_poly(const FieldPtr& F, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> d(0, F->size() - 1);
  std::vector<Elem> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = d(rng);
  if (c.back() == 0) c.back() = 1;
  return Poly(F, c);
}

}  // namespace

TEST_CASE("poly_core examples") {
  auto F3 = make_field(3, 1);
  auto F5 = make_field(5, 1);
  // gcd(t^2 - 1, t - 1) = t - 1
  CHECK(gcd(P(F3, {2, 0, 1}), P(F3, {2, 1})) == P(F3, {2, 1}));
  // derivative(t^5 - t) over F_5 = -1
  CHECK(derivative(P(F5, {0, 4, 0, 0, 0, 1})) == Poly::constant(F5, 4));
  // (t^3 + 1) / (t + 1) = t^2 - t + 1 exactly
  auto [q, r] = divrem(P(F3, {1, 0, 0, 1}), P(F3, {1, 1}));
  CHECK(q == P(F3, {1, 2, 1}));
  CHECK(r.is_zero());
  CHECK(eval(P(F5, {0, 4, 0, 0, 0, 1}), 3) == 0);
}

TEST_CASE("poly_core errors") {
  auto F3 = make_field(3, 1);
  auto F5 = make_field(5, 1);
  CHECK_THROWS_AS(divrem(P(F3, {1, 1}), Poly(F3)), ArithmeticError);
  CHECK_THROWS_AS(P(F3, {1, 1}) + P(F5, {1, 1}), ArithmeticError);
  CHECK_THROWS_AS(P(F3, {3}), ArithmeticError);
}

TEST_CASE("is_squarefree examples") {
  auto F3 = make_field(3, 1);
  auto F5 = make_field(5, 1);
  CHECK(is_squarefree(P(F5, {0, 4, 0, 0, 0, 1})));
  CHECK_FALSE(is_squarefree(P(F3, {0, 0, 1, 1})));  // t^2 (t + 1)
  CHECK_FALSE(is_squarefree(P(F3, {0, 0, 0, 1})));  // t^3, zero derivative
  CHECK_THROWS_AS(is_squarefree(Poly(F3)), ArithmeticError);
}

TEST_CASE("squarefree_part examples") {
  auto F3 = make_field(3, 1);
  auto F5 = make_field(5, 1);
  auto a = squarefree_part(P(F3, {0, 0, 1, 1}));
  CHECK(a.unit == 1);
  CHECK(a.squarefree == P(F3, {1, 1}));
  CHECK(a.square_root == P(F3, {0, 1}));

  auto b = squarefree_part(P(F5, {0, 3, 0, 0, 0, 2}));  // 2 (t^5 - t)
  CHECK(b.unit == 2);
  CHECK(b.squarefree == P(F5, {0, 4, 0, 0, 0, 1}));
  CHECK(b.square_root == Poly::constant(F5, 1));

  // t^3: oracle trial division gives t^3 = t * t^2.
  auto fac = oracle::trial_factor(P(F3, {0, 0, 0, 1}));
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].second == 3);
  auto c = squarefree_part(P(F3, {0, 0, 0, 1}));
  CHECK(c.squarefree == P(F3, {0, 1}));
  CHECK(c.square_root == P(F3, {0, 1}));
  CHECK_THROWS_AS(squarefree_part(Poly(F3)), ArithmeticError);
}

TEST_CASE("squarefree decomposition recomposes, p-th powers included") {
  std::mt19937_64 rng(11);
  for (auto [p, e] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}}) {
    auto F = make_field(p, e);
    for (int trial = 0; trial < 300; ++trial) {
      // Products with repeated and p-th power factors.
      Poly a = random_poly(F, 1 + static_cast<int>(rng() % 3), rng);
      Poly b = random_poly(F, static_cast<int>(rng() % 3), rng);
      Poly f = a * pow(b, 2 + static_cast<unsigned>(rng() % p));
      if (rng() % 3 == 0) f = f * pow(random_poly(F, 1, rng), p);
      auto dec = squarefree_part(f);
      CHECK(is_squarefree(dec.squarefree));
      CHECK(dec.squarefree.is_monic());
      CHECK(dec.square_root.is_monic());
      CHECK(scale(dec.squarefree * dec.square_root * dec.square_root, dec.unit) == f);
      CHECK(is_squarefree(f) == (dec.square_root.degree() == 0));
      // Odd-multiplicity radical matches the trial-division factorization.
      Poly expected = Poly::constant(F, 1);
      for (const auto& [g, m] : oracle::trial_factor(f)) {
        if (m % 2 == 1) expected = expected * g;
      }
      CHECK(dec.squarefree == expected);
    }
  }
}

TEST_CASE("factor agrees with trial division") {
  std::mt19937_64 rng(5);
  for (auto [p, e] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}}) {
    auto F = make_field(p, e);
    for (int trial = 0; trial < 100; ++trial) {
      Poly f = make_monic(random_poly(F, 1 + static_cast<int>(rng() % 7), rng));
      CHECK(factor(f) == oracle::trial_factor(f));
    }
  }
}

TEST_CASE("jacobi examples") {
  auto F3 = make_field(3, 1);
  // D = t^2 - 1, f = t: D(0) = -1, a nonsquare mod 3.
  CHECK(jacobi(P(F3, {2, 0, 1}), P(F3, {0, 1})) == -1);
  CHECK(jacobi(P(F3, {2, 0, 1}), P(F3, {2, 1})) == 0);
  CHECK_THROWS_AS(jacobi(P(F3, {2, 0, 1}), Poly::constant(F3, 1)), ArithmeticError);
  CHECK_THROWS_AS(jacobi(Poly(F3), P(F3, {0, 1})), ArithmeticError);
}

TEST_CASE("jacobi descent equals factorization route on all monic f of degree <= 4 over F_3") {
  auto F3 = make_field(3, 1);
  std::mt19937_64 rng(3);
  std::vector<Poly> Ds;
  for (int i = 0; i < 12; ++i) Ds.push_back(random_poly(F3, 1 + static_cast<int>(rng() % 5), rng));
  Ds.push_back(P(F3, {2, 0, 1}));
  Ds.push_back(Poly::constant(F3, 2));
  for (unsigned d = 1; d <= 4; ++d) {
    for (const auto& f : enumerate_monic(F3, d, false)) {
      for (const auto& D : Ds) REQUIRE(jacobi(D, f) == oracle::jacobi_by_factorization(D, f));
    }
  }
}

TEST_CASE("jacobi is multiplicative in the modulus") {
  auto F9 = make_field(3, 2);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    Poly D = random_poly(F9, 1 + static_cast<int>(rng() % 5), rng);
    Poly f = make_monic(random_poly(F9, 1 + static_cast<int>(rng() % 3), rng));
    Poly g = make_monic(random_poly(F9, 1 + static_cast<int>(rng() % 3), rng));
    CHECK(jacobi(D, f * g) == jacobi(D, f) * jacobi(D, g));
  }
}

TEST_CASE("enumerate_monic cardinalities") {
  auto F5 = make_field(5, 1);
  auto F9 = make_field(3, 2);
  CHECK(enumerate_monic(F5, 3, true).size() == 100);
  CHECK(enumerate_monic(F9, 3, true).size() == 648);
  auto zero = enumerate_monic(F5, 0, true);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == Poly::constant(F5, 1));

  for (auto [p, e] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}}) {
    auto F = make_field(p, e);
    const unsigned max_d = F->size() == 9 ? 5 : 6;
    for (unsigned d = 0; d <= max_d; ++d) {
      CHECK(enumerate_monic(F, d, true).size() == monic_squarefree_count(F->size(), d));
    }
  }
}

TEST_CASE("enumeration order is canonical and ranges partition") {
  auto F3 = make_field(3, 1);
  auto all = enumerate_monic(F3, 4, true);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(canonical_less(all[i - 1], all[i]));
  std::vector<Poly> pieces;
  for (std::uint64_t b = 0; b < 81; b += 10) {
    MonicEnumerator en(F3, 4, true, b, b + 10);
    while (auto f = en.next()) pieces.push_back(*f);
  }
  CHECK(pieces == all);
  for (const auto& f : all) CHECK(monic_from_index(F3, 4, monic_index(f)) == f);
}

TEST_CASE("monic_squarefree_count") {
  CHECK(monic_squarefree_count(5, 8) == 312500);
  CHECK(monic_squarefree_count(9, 7) == 4251528);
  CHECK(monic_squarefree_count(7, 1) == 7);
  CHECK(monic_squarefree_count(7, 0) == 1);
  CHECK(monic_irreducible_count(5, 2) == 10);
  CHECK(monic_irreducible_count(5, 3) == 40);
}

TEST_CASE("text forms") {
  auto F5 = make_field(5, 1);
  auto F9 = make_field(3, 2);
  Poly f = P(F5, {0, 4, 0, 0, 0, 1});
  CHECK(f.to_pretty() == "t^5+4*t");
  CHECK(f.to_text() == "100040");
  CHECK(Poly::parse(F5, "100040") == f);
  CHECK(Poly::parse(F5, "1,0,0,0,4,0") == f);
  Poly g = P(F9, {5, 0, 3, 1});
  CHECK(g.to_text() == "01100012");
  CHECK(Poly::parse(F9, g.to_text()) == g);
  CHECK(g.to_pretty() == "t^3+a*t^2+(a+2)");
  CHECK_THROWS_AS(Poly::parse(F9, "123"), ArithmeticError);
  CHECK_THROWS_AS(Poly::parse(F5, "1,7"), ArithmeticError);
}
