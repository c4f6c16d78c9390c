#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfzero/basecurve.hpp"
#include "halfzero/poly.hpp"

namespace hz {

/// Homogenization F(u, v) = v^n f(u/v) of a base curve polynomial, n = 2g+2,
/// with the split F = F1 * F2 induced by f = f1 * f2.
struct BinaryForm {
  FieldPtr field;
  int n;
  /// c_0..c_n: F = sum c_i u^i v^(n-i).
  std::vector<Elem> coeffs;
  /// F1 = v^deg(f1) f1(u/v), degree n1 = deg f1.
  std::vector<Elem> coeffs1;
  /// F2 = v^(n - deg f1) f2(u/v).
  std::vector<Elem> coeffs2;
};

BinaryForm homogenize(const BaseCurve& base);

/// sum c_i u^i v^(deg - i) for a binary form given by its coefficients.
Poly evaluate_form(const std::vector<Elem>& coeffs, const Poly& u, const Poly& v);

/// Coefficient-wise product of two binary forms.
std::vector<Elem> multiply_forms(const FieldPtr& field, const std::vector<Elem>& a, const std::vector<Elem>& b);

/// Certificate for one emitted D: unit * D * Y^2 = F(u, v), so that
/// (x, y) = (u/v, Y sqrt(unit) / v^(n/2)) lies on D y^2 = f(x).
struct TwistWitness {
  Poly u;
  Poly v;
  Elem unit;
  Poly Y;
};

enum class TwistStatus {
  kEmitted,
  /// F(u, v) = 0.
  kSkipZero,
  /// F(u, v) or its squarefree part is constant.
  kSkipConstant,
  /// The unit is a nonsquare constant: the point lies on the twist of
  /// y^2 = unit*D, not on one for monic D.
  kSkipNonsquareUnit,
};

std::string to_string(TwistStatus status);

struct TwistOutcome {
  TwistStatus status;
  Poly value;
  std::optional<Poly> D;
  std::optional<TwistWitness> witness;
};

/// Squarefree part of F(u(t), v(t)) together with its witness. Throws
/// ArithmeticError for (u, v) = (0, 0) or a field mismatch.
TwistOutcome twist_d(const BinaryForm& form, const Poly& u, const Poly& v);

/// Re-evaluates F(u, v) and checks unit * D * Y^2 = F(u, v) exactly.
bool verify_witness(const BinaryForm& form, const Poly& D, const TwistWitness& w);

/// Primes P with |P| < n, inverted in the localization A.
std::vector<Poly> localization_primes(const FieldPtr& field, int n);

/// True iff no prime outside `localized` divides value twice.
bool squarefree_in_localization(const Poly& value, const std::vector<Poly>& localized);

/// Number of monic divisors of a nonzero polynomial.
std::uint64_t divisor_count(const Poly& value);

struct FamilyEntry {
  Poly D;
  TwistWitness first_witness;
  /// Pairs (after canonicalization) mapping to D.
  std::uint64_t fiber_size = 0;
  /// Largest divisor count of F(u, v) / unit over this D's pairs.
  std::uint64_t max_divisor_count = 0;
  bool verified = false;
};

class TwistVerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyOptions {
  unsigned degree_bound = 1;
  bool verify = true;
  /// Scan only canonical pairs: gcd(u, v) = 1 and v monic (or (1, 0)).
  bool canonicalize = true;
  unsigned jobs = 1;
};

struct TwistFamilyReport {
  BaseCurve base;
  BinaryForm form;
  FamilyOptions options;
  std::vector<Poly> localized_primes;
  std::uint64_t pairs_scanned = 0;
  std::uint64_t pairs_emitted = 0;
  std::uint64_t pairs_in_w = 0;
  std::map<TwistStatus, std::uint64_t> skipped;
  /// Distinct D in canonical order.
  std::vector<FamilyEntry> entries;
  std::uint64_t max_fiber = 0;
  /// n^2 times the largest divisor count seen.
  std::uint64_t fiber_bound = 0;
  std::uint64_t verified_count = 0;
  /// log(#D) / log(q^(n*b)), reported for comparison with 2/n.
  std::optional<double> exponent;
};

/// Scans all pairs with deg u, deg v < degree_bound, emits the distinct D
/// (re-checking the witness identity of every emission) and optionally checks every D with the zeta pipeline. Throws
/// TwistVerificationError naming (u, v, D) on the first D that fails.
TwistFamilyReport generate_family(const BaseCurve& base, const FamilyOptions& options);

struct LocalFactor {
  Poly prime;
  std::uint64_t norm;
  std::uint64_t c_p;
  /// 1 - c_p / norm^4.
  double factor;
};

struct DensityEstimate {
  int n;
  unsigned truncation_degree;
  std::vector<Poly> localized_primes;
  std::vector<LocalFactor> factors;
  double partial_product = 1.0;
  /// Product over deg p > truncation_degree of (1 - n / |p|^2), from the
  /// heuristic bound c_p <= n |p|^2. Not a proven bound.
  double heuristic_tail = 1.0;
  double heuristic_density = 1.0;
};

/// c_p = #{(u, v) mod p^2 : F(u, v) = 0 mod p^2}, counted by lifting the
/// |p|^2 residue pairs mod p (a zero with nonzero gradient has |p| lifts, a
/// singular zero has |p|^2 or 0).
std::uint64_t local_zero_count(const BinaryForm& form, const Poly& prime);

/// Throws BudgetError when the total number of residue pairs exceeds budget.
DensityEstimate poonen_density(const BinaryForm& form, unsigned truncation_degree,
                               std::uint64_t budget = 200'000'000);

}  // namespace hz
