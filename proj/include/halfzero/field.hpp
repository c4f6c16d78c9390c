#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hz {

/// Element of a finite field, stored as its encoding index 0..Q-1.
/// The index is the base-p number whose digits are the coefficients of the
/// element written in the power basis of the conductor root (low digit =
/// constant coefficient).
using Elem = std::uint32_t;

/// Raised for invalid user input: bad characteristic, field mismatch, etc.
class ArithmeticError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (Weil bound, inexact
/// Newton division, odd Weil multiplicity). Indicates a bug, not bad input.
class InternalAssertion : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a requested computation exceeds its work budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest field size for which tables are built (F_{p^n} with p^n <= this).
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 22;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_{p^n}, represented by log/antilog and Zech tables over
/// the lexicographically smallest monic irreducible conductor of degree n.
///
/// Fields are interned: make_field(p, n) always returns the same object for
/// the same (p, n), so field identity can be compared by pointer. All members
/// are immutable after construction.
class Field {
 public:
  std::uint32_t p() const { return p_; }
  /// Degree over the prime field.
  std::uint32_t degree() const { return n_; }
  /// Number of elements p^n.
  std::uint32_t size() const { return q_; }
  /// Conductor coefficients over F_p, low-to-high, monic of length n+1.
  const std::vector<std::uint32_t>& conductor() const { return conductor_; }
  /// Encoding of the primitive element used for the log tables.
  Elem generator() const { return exp_[1]; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t la = log_[a];
    std::uint32_t lb = log_[b];
    std::uint32_t d = lb >= la ? lb - la : lb + order_ - la;
    std::uint32_t z = zech_[d];
    if (z == kNoLog) return 0;
    return exp_[la + z];
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  /// Quadratic character: 0 for zero, +1 for nonzero squares, -1 otherwise.
  int chi(Elem a) const {
    if (a == 0) return 0;
    return (log_[a] & 1U) == 0 ? 1 : -1;
  }
  bool is_square(Elem a) const { return chi(a) >= 0; }
  /// Smallest-encoding nonsquare.
  Elem nonsquare() const { return nonsquare_; }
  /// Element for the integer n (image of Z -> F_p -> F).
  Elem from_int(std::int64_t n) const;

  /// Discrete log relative to generator(); a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a]; }
  /// generator()^k for 0 <= k < 2(Q-1).
  Elem exp(std::uint32_t k) const { return exp_[k]; }
  /// Multiplicative group order Q-1.
  std::uint32_t order() const { return order_; }
  /// Zech logarithm table: zech(d) = log(1 + g^d), or kNoLog when 1+g^d = 0.
  std::uint32_t zech(std::uint32_t d) const { return zech_[d]; }

  /// Base-p digits of an element, low first, length degree().
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& digits) const;

  /// Human readable form, e.g. "2" or "a+2" (a = conductor root).
  std::string to_string(Elem a) const;

  static constexpr std::uint32_t kNoLog = 0xFFFFFFFFU;

 private:
  friend FieldPtr make_field(std::uint32_t p, std::uint32_t n);
  Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> conductor);

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::uint32_t order_;
  std::vector<std::uint32_t> conductor_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::vector<Elem> neg_;
  Elem nonsquare_ = 0;
};

/// Interned F_{p^n}. Throws ArithmeticError for p = 2, composite p, n = 0 or
/// a field larger than kMaxFieldSize.
FieldPtr make_field(std::uint32_t p, std::uint32_t n);

bool is_prime(std::uint64_t n);

/// Lexicographically smallest monic irreducible polynomial of degree n over
/// F_p, coefficients low-to-high. Ordering compares the constant coefficient
/// first. For n = 1 this is t.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t n);

/// Field descriptor F_q = F_{p^e} together with its extension tower.
class FieldDesc {
 public:
  FieldDesc(std::uint32_t p, std::uint32_t e);

  std::uint32_t p() const { return base_->p(); }
  std::uint32_t e() const { return base_->degree(); }
  std::uint32_t q() const { return base_->size(); }
  const FieldPtr& field() const { return base_; }

  /// F_{q^k} as F_{p^{ek}}.
  FieldPtr extension(std::uint32_t k) const;
  /// Embedding F_q -> F_{q^k}: element index in F_q -> element index in
  /// F_{q^k}. Sends the conductor root of F_q to the smallest-encoding root
  /// of the same conductor in F_{q^k}.
  std::vector<Elem> embedding(std::uint32_t k) const;

 private:
  FieldPtr base_;
};

}  // namespace hz
