#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfzero/poly.hpp"
#include "halfzero/vanishing.hpp"
#include "halfzero/zeta.hpp"

namespace hz {

enum class CurveForm { kOdd, kEvenReducible, kUnsuitable };

std::string to_string(CurveForm form);

/// Result of checking whether y^2 = f(x) has a defining equation usable by
/// the twist construction: odd degree, or even degree with a nontrivial
/// coprime factorization f = f1 * f2 (f1 monic, f2 carries the leading
/// coefficient).
struct FormCheck {
  CurveForm form;
  Poly f1;
  Poly f2;
};

/// Odd degree gives (f, 1). Even degree groups the irreducible factors into
/// the split minimizing |deg f1 - deg f2|, ties broken by the canonically
/// smaller f1. Throws ArithmeticError if f is not squarefree or deg f < 3.
FormCheck check_form(const Poly& f);

/// A curve y^2 = f(x) over F_q whose Jacobian has +sqrt(q) as a Frobenius
/// eigenvalue, in a form the twist construction accepts.
struct BaseCurve {
  Poly f;
  int genus;
  FormCheck form;
  LPolynomial lpoly;
  EigenvalueReport eigen;
  /// "paper", "search" or "user".
  std::string provenance;
};

/// Builds and validates a base curve from f. Throws ArithmeticError if the
/// curve does not vanish at the central point or has an unsuitable form.
BaseCurve make_base_curve(const Poly& f, std::string provenance = "user");

enum class DegreeParity { kAny, kOdd, kEven };

struct BaseSearchOptions {
  int max_genus = 1;
  int min_genus = 1;
  DegreeParity parity = DegreeParity::kAny;
  /// Also try the quadratic twist by a nonsquare constant (leading
  /// coefficient = smallest nonsquare). Every other leading coefficient gives
  /// a curve isomorphic to one of these two.
  bool twists = true;
  unsigned jobs = 1;
};

/// Exhaustive search over squarefree f of degree 3..2*max_genus+2, returning
/// every vanishing curve with a suitable form. Ordered by degree, then
/// leading coefficient, then canonical polynomial order.
std::vector<BaseCurve> find_base_curves(const FieldDesc& field, const BaseSearchOptions& options);

struct RegistryEntry {
  std::uint32_t p;
  std::uint32_t e;
  std::string f_text;
  std::string provenance;
};

struct KnownBases {
  std::vector<BaseCurve> curves;
  /// Suggested search parameters when the registry has no entry.
  std::string recipe;
};

/// Built-in base curves for q = 3 (x^9 - x) and q = 5 (x^5 - x); nullopt
/// otherwise.
std::optional<KnownBases> known_bases(std::uint64_t q);
/// Recommended search bound when no registered base exists.
BaseSearchOptions search_recipe(const FieldDesc& field);
std::string describe_recipe(const FieldDesc& field);

/// Built-in registry entries.
const std::vector<RegistryEntry>& builtin_registry();
/// Reads a registry file: {"schema": 1, "bases": [{"p", "e", "f", "provenance"}]}.
std::vector<RegistryEntry> load_registry(const std::string& path);

}  // namespace hz
