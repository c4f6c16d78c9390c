#include "halfzero/vanishing.hpp"

#include <cmath>
#include <string>

namespace hz {

namespace {

std::int64_t to_i64(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("central value overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

// Exact division of P by (1 - c u^step); nullopt if it does not divide.
std::optional<std::vector<std::int64_t>> divide_weil_factor(const std::vector<std::int64_t>& a, std::int64_t c,
                                                            std::size_t step) {
  if (a.size() <= step) return std::nullopt;
  const std::size_t n = a.size() - step;
  std::vector<std::int64_t> b(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    __int128 v = a[i];
    if (i >= step) v += static_cast<__int128>(c) * b[i - step];
    b[i] = to_i64(v);
  }
  // The top `step` coefficients of a must equal -c times the tail of b.
  for (std::size_t i = n; i < a.size(); ++i) {
    __int128 v = a[i];
    if (i >= step && i - step < n) v += static_cast<__int128>(c) * b[i - step];
    if (v != 0) return std::nullopt;
  }
  return b;
}

}  // namespace

std::optional<std::int64_t> exact_sqrt(std::uint64_t q) {
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(q))));
  for (std::int64_t c = std::max<std::int64_t>(r - 2, 0); c <= r + 2; ++c) {
    if (static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(c) == q) return c;
  }
  return std::nullopt;
}

CentralValueParts central_value_parts(const LPolynomial& P) {
  const int g = P.genus;
  __int128 even = 0;
  __int128 odd = 0;
  for (int i = 0; i <= 2 * g; ++i) {
    const std::int64_t a = P.coeffs[static_cast<std::size_t>(i)];
    if (i % 2 == 0) {
      even += static_cast<__int128>(a) * static_cast<__int128>(ipow(P.q, static_cast<unsigned>(g - i / 2)));
    } else {
      odd += static_cast<__int128>(a) * static_cast<__int128>(ipow(P.q, static_cast<unsigned>((2 * g - i - 1) / 2)));
    }
  }
  return {to_i64(even), to_i64(odd)};
}

bool vanishes(const LPolynomial& P) {
  const auto parts = central_value_parts(P);
  if (auto r = exact_sqrt(P.q)) {
    return static_cast<__int128>(parts.even) + static_cast<__int128>(*r) * parts.odd == 0;
  }
  return parts.even == 0 && parts.odd == 0;
}

WeilMultiplicity weil_multiplicity(const LPolynomial& P) {
  std::int64_t c;
  std::size_t step;
  if (auto r = exact_sqrt(P.q)) {
    c = *r;
    step = 1;
  } else {
    c = static_cast<std::int64_t>(P.q);
    step = 2;
  }
  int nu = 0;
  std::vector<std::int64_t> cur = P.coeffs;
  while (auto next = divide_weil_factor(cur, c, step)) {
    cur = std::move(*next);
    ++nu;
  }
  if (nu % 2 != 0) {
    throw InternalAssertion("Weil factor multiplicity " + std::to_string(nu) + " is odd for q = " +
                            std::to_string(P.q));
  }
  return {nu, nu / 2};
}

int rank_lower_bound(int m, int end_rank) {
  if (end_rank != 2 && end_rank != 4) throw ArithmeticError("end_rank must be 2 or 4");
  if (m < 0) throw ArithmeticError("multiplicity must be non-negative");
  return m * end_rank;
}

bool has_full_endomorphism_rank(const LPolynomial& P) {
  if (P.genus != 1) return false;
  const __int128 a = P.coeffs[1];
  return a * a == static_cast<__int128>(4) * P.q;
}

EigenvalueReport eigenvalue_report(const LPolynomial& P, int end_rank) {
  const bool v = vanishes(P);
  const auto w = weil_multiplicity(P);
  if (v != (w.nu >= 1)) throw InternalAssertion("vanishing test disagrees with the Weil factor multiplicity");
  return {v, w.nu, w.m, rank_lower_bound(w.m, end_rank)};
}

}  // namespace hz
