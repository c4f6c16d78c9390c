#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfzero/field.hpp"

namespace hz {

/// Dense univariate polynomial over a finite field, coefficients low-to-high.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
 public:
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  /// The monomial t^d with coefficient c.
  static Poly monomial(FieldPtr field, Elem c, int d);
  /// Parse the canonical text form (see to_text) or a comma-separated list of
  /// element indices, leading coefficient first.
  static Poly parse(FieldPtr field, const std::string& text);

  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  /// Canonical text: every coefficient from the leading one down to the
  /// constant term as e base-p digits (most significant digit first), no
  /// separators. The zero polynomial is "0".
  std::string to_text() const;
  /// Human readable form, e.g. "t^5+4*t".
  std::string to_pretty() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Canonical order: by degree, then coefficients from the leading one down.
  /// Matches enumerate_monic order within a degree.
  friend bool canonical_less(const Poly& a, const Poly& b);

 private:
  void normalize();

  FieldPtr field_;
  std::vector<Elem> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, Elem c);

/// Quotient and remainder. Throws ArithmeticError on a zero divisor or field
/// mismatch.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly make_monic(const Poly& a);
Poly derivative(const Poly& a);
Elem eval(const Poly& a, Elem x);
Poly pow(const Poly& a, unsigned k);
/// base^k mod m.
Poly powmod(const Poly& base, std::uint64_t k, const Poly& m);

/// True iff no irreducible factor divides f twice. Throws on f = 0.
bool is_squarefree(const Poly& f);

/// f = unit * squarefree * square_root^2 with squarefree and square_root monic.
struct SquarefreeDecomposition {
  Elem unit;
  Poly squarefree;
  Poly square_root;
};

/// Odd-multiplicity radical with the square cofactor, characteristic-p aware.
SquarefreeDecomposition squarefree_part(const Poly& f);

/// Multiplicity structure of a monic polynomial: pairs (g_i, i) with
/// f = prod g_i^i, each g_i monic squarefree and pairwise coprime.
std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const Poly& f);

/// Polynomial Jacobi symbol (D / f) for monic nonconstant f, computed by
/// reciprocity descent without factoring f.
int jacobi(const Poly& D, const Poly& f);

/// Full factorization into monic irreducibles with multiplicities, sorted
/// canonically. Distinct-degree plus Cantor-Zassenhaus splitting; the random
/// choices are seeded deterministically.
std::vector<std::pair<Poly, unsigned>> factor(const Poly& f);

bool is_irreducible(const Poly& f);

/// q^d as an integer (throws on 64-bit overflow).
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Number of monic squarefree polynomials of degree d over F_q.
std::uint64_t monic_squarefree_count(std::uint64_t q, unsigned d);

/// Number of monic irreducible polynomials of degree d over F_q.
std::uint64_t monic_irreducible_count(std::uint64_t q, unsigned d);

/// The monic polynomial of degree d whose lower coefficients are the base-q
/// digits of index (c_0 least significant). Indices 0..q^d-1 enumerate all
/// monic polynomials of degree d in canonical order.
Poly monic_from_index(const FieldPtr& field, unsigned d, std::uint64_t index);
std::uint64_t monic_index(const Poly& f);

/// Streams monic polynomials of a fixed degree in canonical order, optionally
/// restricted to squarefree ones. A range [begin, end) of monic indices can be
/// selected so that disjoint ranges can be consumed in parallel.
class MonicEnumerator {
 public:
  MonicEnumerator(FieldPtr field, unsigned degree, bool only_squarefree);
  MonicEnumerator(FieldPtr field, unsigned degree, bool only_squarefree, std::uint64_t begin,
                  std::uint64_t end);

  /// Next polynomial, or nullopt when exhausted.
  std::optional<Poly> next();
  /// Index of the polynomial most recently returned by next().
  std::uint64_t last_index() const { return index_ - 1; }
  std::uint64_t population() const { return population_; }

 private:
  FieldPtr field_;
  unsigned degree_;
  bool only_squarefree_;
  std::uint64_t index_;
  std::uint64_t end_;
  std::uint64_t population_;
};

/// Collects enumerate_monic output into a vector.
std::vector<Poly> enumerate_monic(const FieldPtr& field, unsigned degree, bool only_squarefree);

}  // namespace hz
