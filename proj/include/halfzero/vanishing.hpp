#pragma once

#include <cstdint>
#include <optional>

#include "halfzero/zeta.hpp"

namespace hz {

/// q^g P(q^{-1/2}) = E + sqrt(q) O, split into its rational and sqrt(q) parts:
/// E = sum over even i of a_i q^{g - i/2}, O = sum over odd i of
/// a_i q^{(2g - i - 1)/2}.
struct CentralValueParts {
  std::int64_t even;
  std::int64_t odd;
};

CentralValueParts central_value_parts(const LPolynomial& P);

/// Exact integer square root of q, if q is a perfect square.
std::optional<std::int64_t> exact_sqrt(std::uint64_t q);

/// True iff P(q^{-1/2}) = 0, i.e. +sqrt(q) is a Frobenius eigenvalue.
bool vanishes(const LPolynomial& P);

struct WeilMultiplicity {
  /// Exponent of (1 - sqrt(q) u) (square q) or (1 - q u^2) (non-square q).
  int nu;
  /// Multiplicity of the simple class A_q in the Jacobian, nu / 2.
  int m;
};

/// Repeated exact division by the Weil factor. Throws InternalAssertion if
/// the exponent comes out odd.
WeilMultiplicity weil_multiplicity(const LPolynomial& P);

/// m * end_rank, a lower bound on the rank of the quadratic twist of the
/// constant elliptic curve by D. end_rank must be 2 or 4.
int rank_lower_bound(int m, int end_rank);

/// True iff the genus-1 L-polynomial 1 + a_1 u + q u^2 has a_1^2 = 4q, the
/// case where the endomorphism ring over F_q has rank 4.
bool has_full_endomorphism_rank(const LPolynomial& P);

struct EigenvalueReport {
  bool vanishes;
  int nu;
  int m;
  int rank_lower_bound;
};

EigenvalueReport eigenvalue_report(const LPolynomial& P, int end_rank = 2);

}  // namespace hz
