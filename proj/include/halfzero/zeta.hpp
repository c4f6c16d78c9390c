#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "halfzero/field.hpp"
#include "halfzero/poly.hpp"

namespace hz {

/// Hyperelliptic curve y^2 = D(t) over F_q.
///
/// The census only ever builds curves from monic D (curve_new). The base
/// curve search also needs non-monic models, which curve_from_model accepts;
/// for those the number of points at infinity over F_{q^k} is
/// 1 + chi_k(lead(D)) in even degree.
struct Curve {
  FieldDesc field;
  Poly D;
  int genus;
  /// 1 if deg D is even, else 0.
  int lambda;

  /// Points at infinity over F_{q^k}: 1 for odd degree, 1 + chi_k(lead) for
  /// even degree (2 for monic D).
  int points_at_infinity(unsigned k) const;
};

/// Validates D monic, squarefree, deg >= 1. Genus 0 (deg 1 or 2) is legal.
Curve curve_new(const Poly& D);
/// As curve_new but allows any nonzero leading coefficient.
Curve curve_from_model(const Poly& f);

FieldDesc field_of(const Poly& f);

/// Precomputed tables for evaluating the quadratic character of F_{q^k} on
/// values of polynomials with F_q coefficients. Shared read-only; obtain via
/// counting_context().
struct CountingContext {
  CountingContext(FieldDesc b, unsigned degree) : base(std::move(b)), k(degree) {}

  FieldDesc base;
  unsigned k;
  FieldPtr ext;
  /// Discrete log in ext of the embedded F_q element, or Field::kNoLog for 0.
  std::vector<std::uint32_t> embed_log;
  /// One representative (as a discrete log) per Frobenius orbit on the
  /// nonzero elements of F_{q^k}, with the orbit size.
  std::vector<std::uint32_t> orbit_rep;
  std::vector<std::uint32_t> orbit_size;
  /// squares[x] = 1 iff x (encoding in ext) is a nonzero square.
  std::vector<std::uint8_t> squares;
};

std::shared_ptr<const CountingContext> counting_context(const FieldDesc& base, unsigned k);

/// Sum over x in F_{q^k} of chi_k(D(x)).
std::int64_t character_sum(const CountingContext& ctx, const Poly& D);

/// Number of points on the smooth model of C over F_{q^k}. Throws
/// InternalAssertion if the Weil bound is violated.
std::int64_t count_points(const Curve& C, unsigned k);

/// Integer L-polynomial P(u) = prod (1 - pi_j u) of degree 2g.
struct LPolynomial {
  std::uint64_t q = 0;
  int genus = 0;
  /// a_0..a_{2g}.
  std::vector<std::int64_t> coeffs{1};
  /// s_k = sum_j pi_j^k for k = 1..g.
  std::vector<std::int64_t> power_sums;

  /// P(1), the order of the Jacobian over F_q.
  std::int64_t value_at_one() const;
  friend bool operator==(const LPolynomial& a, const LPolynomial& b) {
    return a.q == b.q && a.genus == b.genus && a.coeffs == b.coeffs;
  }
};

/// From point counts over F_q, ..., F_{q^g}: s_k = q^k + 1 - N_k, Newton's
/// identities for a_1..a_g, functional equation for the rest.
LPolynomial l_polynomial(const Curve& C);

/// Same recurrence starting from given power sums s_1..s_g.
LPolynomial l_polynomial_from_power_sums(std::uint64_t q, int genus, const std::vector<std::int64_t>& s);

/// s_1..s_kmax recovered from the coefficients of P (a_i = 0 for i > 2g).
std::vector<std::int64_t> power_sums(const LPolynomial& P, unsigned kmax);

/// L*(u) = sum_{d < deg D} S_d u^d, S_d = sum of chi_D(f) over monic f of
/// degree d, by direct enumeration with the Jacobi symbol.
struct CharSumL {
  std::vector<std::int64_t> coeffs;
};

CharSumL char_sum_lpoly(const Poly& D);

/// (1 - u)^lambda * P(u) as a coefficient vector.
std::vector<std::int64_t> completed_lpoly(const LPolynomial& P, int lambda);

/// True iff L*(u) = (1 - u)^lambda P(u) exactly.
bool dual_identity_holds(const CharSumL& Lstar, const LPolynomial& P, int lambda);

}  // namespace hz
