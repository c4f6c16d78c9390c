#include "halfzero/twist.hpp"

#include <cmath>
#include <mutex>

#include "halfzero/parallel.hpp"

namespace hz {

namespace {

// Polynomial of degree < b whose coefficients are the base-q digits of index.
Poly poly_from_index(const FieldPtr& F, unsigned b, std::uint64_t index) {
  std::vector<Elem> c(b, 0);
  for (unsigned i = 0; i < b; ++i) {
    c[i] = static_cast<Elem>(index % F->size());
    index /= F->size();
  }
  return Poly(F, std::move(c));
}

std::vector<Elem> poly_coeffs_padded(const Poly& f, std::size_t len) {
  std::vector<Elem> c(len, 0);
  for (std::size_t i = 0; i < len; ++i) c[i] = f[i];
  return c;
}

struct PairResult {
  Poly D;
  TwistWitness witness;
  std::uint64_t divisors;
};

struct BlockResult {
  std::uint64_t scanned = 0;
  std::uint64_t emitted = 0;
  std::uint64_t in_w = 0;
  std::map<TwistStatus, std::uint64_t> skipped;
  std::vector<PairResult> pairs;
};

}  // namespace

std::string to_string(TwistStatus status) {
  switch (status) {
    case TwistStatus::kEmitted:
      return "emitted";
    case TwistStatus::kSkipZero:
      return "zero";
    case TwistStatus::kSkipConstant:
      return "constant";
    case TwistStatus::kSkipNonsquareUnit:
      return "nonsquare_unit";
  }
  return "unknown";
}

BinaryForm homogenize(const BaseCurve& base) {
  BinaryForm form;
  form.field = base.f.field();
  form.n = 2 * base.genus + 2;
  form.coeffs = poly_coeffs_padded(base.f, static_cast<std::size_t>(form.n) + 1);
  const int n1 = base.form.f1.degree();
  form.coeffs1 = poly_coeffs_padded(base.form.f1, static_cast<std::size_t>(n1) + 1);
  form.coeffs2 = poly_coeffs_padded(base.form.f2, static_cast<std::size_t>(form.n - n1) + 1);
  return form;
}

Poly evaluate_form(const std::vector<Elem>& coeffs, const Poly& u, const Poly& v) {
  if (u.field() != v.field()) throw ArithmeticError("u and v over different fields");
  const std::size_t n = coeffs.size() - 1;
  std::vector<Poly> upow{Poly::constant(u.field(), 1)};
  std::vector<Poly> vpow{Poly::constant(u.field(), 1)};
  for (std::size_t i = 1; i <= n; ++i) {
    upow.push_back(upow.back() * u);
    vpow.push_back(vpow.back() * v);
  }
  Poly acc(u.field());
  for (std::size_t i = 0; i <= n; ++i) {
    if (coeffs[i] == 0) continue;
    acc = acc + scale(upow[i] * vpow[n - i], coeffs[i]);
  }
  return acc;
}

std::vector<Elem> multiply_forms(const FieldPtr& field, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  const Field& F = *field;
  std::vector<Elem> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

TwistOutcome twist_d(const BinaryForm& form, const Poly& u, const Poly& v) {
  if (u.field() != form.field || v.field() != form.field) throw ArithmeticError("pair over a different field");
  if (u.is_zero() && v.is_zero()) throw ArithmeticError("twist_d needs (u, v) != (0, 0)");
  TwistOutcome out{TwistStatus::kSkipZero, evaluate_form(form.coeffs, u, v), std::nullopt, std::nullopt};
  if (out.value.is_zero()) return out;
  if (out.value.is_constant()) {
    out.status = TwistStatus::kSkipConstant;
    return out;
  }
  auto dec = squarefree_part(out.value);
  if (dec.squarefree.degree() < 1) {
    out.status = TwistStatus::kSkipConstant;
    return out;
  }
  out.D = dec.squarefree;
  out.witness = TwistWitness{u, v, dec.unit, dec.square_root};
  out.status = form.field->is_square(dec.unit) ? TwistStatus::kEmitted : TwistStatus::kSkipNonsquareUnit;
  return out;
}

bool verify_witness(const BinaryForm& form, const Poly& D, const TwistWitness& w) {
  Poly value = evaluate_form(form.coeffs, w.u, w.v);
  return scale(D * w.Y * w.Y, w.unit) == value;
}

std::vector<Poly> localization_primes(const FieldPtr& field, int n) {
  std::vector<Poly> out;
  for (unsigned d = 1; ipow(field->size(), d) < static_cast<std::uint64_t>(n); ++d) {
    for (auto& f : enumerate_monic(field, d, false)) {
      if (is_irreducible(f)) out.push_back(std::move(f));
    }
  }
  return out;
}

bool squarefree_in_localization(const Poly& value, const std::vector<Poly>& localized) {
  Poly rest = value;
  for (const auto& P : localized) {
    while (rest.degree() >= P.degree()) {
      auto [q, r] = divrem(rest, P);
      if (!r.is_zero()) break;
      rest = std::move(q);
    }
  }
  return is_squarefree(rest);
}

std::uint64_t divisor_count(const Poly& value) {
  std::uint64_t d = 1;
  for (const auto& [g, m] : factor(value)) d *= (m + 1);
  return d;
}

TwistFamilyReport generate_family(const BaseCurve& base, const FamilyOptions& options) {
  if (options.degree_bound < 1) throw ArithmeticError("degree bound must be at least 1");
  TwistFamilyReport report{base, homogenize(base), options, {}, 0, 0, 0, {}, {}, 0, 0, 0, std::nullopt};
  const BinaryForm& form = report.form;
  const FieldPtr& F = form.field;
  report.localized_primes = localization_primes(F, form.n);
  const unsigned b = options.degree_bound;
  const std::uint64_t side = ipow(F->size(), b);

  std::vector<BlockResult> blocks(side);
  parallel_blocks(0, side, options.jobs, [&](std::uint64_t iv) {
    BlockResult& res = blocks[iv];
    Poly v = poly_from_index(F, b, iv);
    auto handle = [&](const Poly& u) {
      ++res.scanned;
      TwistOutcome o = twist_d(form, u, v);
      if (o.status != TwistStatus::kEmitted) {
        ++res.skipped[o.status];
        return;
      }
      ++res.emitted;
      if (!verify_witness(form, *o.D, *o.witness)) {
        throw InternalAssertion("witness identity fails for u = " + u.to_pretty() + ", v = " + v.to_pretty());
      }
      if (squarefree_in_localization(o.value, report.localized_primes)) ++res.in_w;
      Poly monic_value = make_monic(o.value);
      res.pairs.push_back({*o.D, *o.witness, divisor_count(monic_value)});
    };
    if (options.canonicalize) {
      if (v.is_zero()) {
        handle(Poly::constant(F, 1));
        return;
      }
      if (!v.is_monic()) return;
      for (std::uint64_t iu = 0; iu < side; ++iu) {
        Poly u = poly_from_index(F, b, iu);
        if (gcd(u, v).degree() != 0) continue;
        handle(u);
      }
    } else {
      for (std::uint64_t iu = 0; iu < side; ++iu) {
        Poly u = poly_from_index(F, b, iu);
        if (u.is_zero() && v.is_zero()) continue;
        handle(u);
      }
    }
  });

  // Deterministic merge in block order; entries keyed canonically.
  std::map<std::pair<int, std::uint64_t>, FamilyEntry> by_d;
  std::uint64_t max_div = 0;
  for (auto& blk : blocks) {
    report.pairs_scanned += blk.scanned;
    report.pairs_emitted += blk.emitted;
    report.pairs_in_w += blk.in_w;
    for (const auto& [s, c] : blk.skipped) report.skipped[s] += c;
    for (auto& pr : blk.pairs) {
      auto key = std::make_pair(pr.D.degree(), monic_index(pr.D));
      auto it = by_d.find(key);
      if (it == by_d.end()) it = by_d.emplace(key, FamilyEntry{pr.D, pr.witness, 0, 0, false}).first;
      it->second.fiber_size += 1;
      it->second.max_divisor_count = std::max(it->second.max_divisor_count, pr.divisors);
      max_div = std::max(max_div, pr.divisors);
    }
  }
  for (auto& [key, entry] : by_d) report.entries.push_back(std::move(entry));
  for (const auto& e : report.entries) report.max_fiber = std::max(report.max_fiber, e.fiber_size);
  report.fiber_bound = static_cast<std::uint64_t>(form.n) * form.n * max_div;
  if (report.max_fiber > report.fiber_bound && !report.entries.empty()) {
    throw InternalAssertion("fiber size " + std::to_string(report.max_fiber) + " exceeds n^2 * divisor bound " +
                            std::to_string(report.fiber_bound));
  }

  if (options.verify) {
    std::vector<char> ok(report.entries.size(), 0);
    parallel_blocks(0, report.entries.size(), options.jobs, [&](std::uint64_t i) {
      ok[i] = vanishes(l_polynomial(curve_new(report.entries[i].D))) ? 1 : 0;
    });
    for (std::size_t i = 0; i < ok.size(); ++i) {
      auto& e = report.entries[i];
      if (!ok[i]) {
        throw TwistVerificationError("twist verification failed: u = " + e.first_witness.u.to_pretty() +
                                     ", v = " + e.first_witness.v.to_pretty() + ", D = " + e.D.to_pretty() +
                                     " does not vanish at the central point");
      }
      e.verified = true;
      ++report.verified_count;
    }
  }

  if (!report.entries.empty()) {
    const double logN = static_cast<double>(form.n) * b * std::log(static_cast<double>(F->size()));
    report.exponent = std::log(static_cast<double>(report.entries.size())) / logN;
  }
  return report;
}

std::uint64_t local_zero_count(const BinaryForm& form, const Poly& prime) {
  const FieldPtr& F = form.field;
  const unsigned d = static_cast<unsigned>(prime.degree());
  const std::uint64_t norm = ipow(F->size(), d);
  const Poly prime_sq = prime * prime;
  const int n = form.n;
  std::vector<Elem> du(static_cast<std::size_t>(n), 0);
  std::vector<Elem> dv(static_cast<std::size_t>(n), 0);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) du[i - 1] = F->mul(F->from_int(i), form.coeffs[i]);
    if (i < n) dv[i] = F->mul(F->from_int(n - i), form.coeffs[i]);
  }
  std::uint64_t count = 0;
  for (std::uint64_t iu = 0; iu < norm; ++iu) {
    Poly u = poly_from_index(F, d, iu);
    for (std::uint64_t iv = 0; iv < norm; ++iv) {
      Poly v = poly_from_index(F, d, iv);
      Poly value = evaluate_form(form.coeffs, u, v);
      if (!(value % prime).is_zero()) continue;
      bool smooth = !(evaluate_form(du, u, v) % prime).is_zero() || !(evaluate_form(dv, u, v) % prime).is_zero();
      if (smooth) {
        count += norm;
      } else if ((value % prime_sq).is_zero()) {
        count += norm * norm;
      }
    }
  }
  return count;
}

DensityEstimate poonen_density(const BinaryForm& form, unsigned truncation_degree, std::uint64_t budget) {
  if (truncation_degree < 1) throw ArithmeticError("truncation degree must be at least 1");
  const FieldPtr& F = form.field;
  const std::uint64_t q = F->size();
  DensityEstimate est;
  est.n = form.n;
  est.truncation_degree = truncation_degree;
  est.localized_primes = localization_primes(F, form.n);

  std::uint64_t work = 0;
  for (unsigned d = 1; d <= truncation_degree; ++d) {
    const std::uint64_t norm = ipow(q, d);
    work += monic_irreducible_count(q, d) * norm * norm;
    if (work > budget) {
      throw BudgetError("local densities up to degree " + std::to_string(truncation_degree) + " need " +
                        std::to_string(work) + "+ residue pairs, over the budget of " + std::to_string(budget));
    }
  }

  std::vector<Poly> primes;
  for (unsigned d = 1; d <= truncation_degree; ++d) {
    if (ipow(q, d) < static_cast<std::uint64_t>(form.n)) continue;
    for (auto& f : enumerate_monic(F, d, false)) {
      if (is_irreducible(f)) primes.push_back(std::move(f));
    }
  }
  est.factors.resize(primes.size(), LocalFactor{Poly(F), 0, 0, 0.0});
  parallel_blocks(0, primes.size(), default_jobs(), [&](std::uint64_t i) {
    const Poly& P = primes[i];
    const std::uint64_t norm = ipow(q, static_cast<unsigned>(P.degree()));
    const std::uint64_t c = local_zero_count(form, P);
    const double n4 = std::pow(static_cast<double>(norm), 4.0);
    est.factors[i] = LocalFactor{P, norm, c, 1.0 - static_cast<double>(c) / n4};
  });
  for (const auto& lf : est.factors) {
    const std::uint64_t n4 = lf.norm * lf.norm * lf.norm * lf.norm;
    if (lf.c_p >= n4) throw InternalAssertion("local factor vanishes at " + lf.prime.to_pretty());
    est.partial_product *= lf.factor;
  }

  double log_tail = 0.0;
  bool tail_available = true;
  for (unsigned d = truncation_degree + 1; d <= 200; ++d) {
    const double qd = std::pow(static_cast<double>(q), static_cast<double>(d));
    const double ratio = static_cast<double>(form.n) / (qd * qd);
    if (ratio >= 1.0) {
      tail_available = false;
      break;
    }
    const double primes_d = qd / d;
    const double term = primes_d * std::log1p(-ratio);
    log_tail += term;
    if (std::abs(term) < 1e-18) break;
  }
  est.heuristic_tail = tail_available ? std::exp(log_tail) : 0.0;
  est.heuristic_density = est.partial_product * est.heuristic_tail;
  return est;
}

}  // namespace hz
