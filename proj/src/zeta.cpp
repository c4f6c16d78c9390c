#include "halfzero/zeta.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace hz {

namespace {

std::int64_t checked(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(std::string(what) + " overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

std::int64_t ipow_signed(std::uint64_t q, unsigned k) { return static_cast<std::int64_t>(ipow(q, k)); }

}  // namespace

FieldDesc field_of(const Poly& f) { return FieldDesc(f.F().p(), f.F().degree()); }

int Curve::points_at_infinity(unsigned k) const {
  if (D.degree() % 2 == 1) return 1;
  int c = field.field()->chi(D.lead());
  if (k % 2 == 0) c = 1;
  return 1 + c;
}

Curve curve_from_model(const Poly& f) {
  if (f.degree() < 1) throw ArithmeticError("curve needs a nonconstant polynomial");
  if (!is_squarefree(f)) throw ArithmeticError("curve polynomial " + f.to_pretty() + " is not squarefree");
  const int d = f.degree();
  return Curve{field_of(f), f, (d - 1) / 2, d % 2 == 0 ? 1 : 0};
}

Curve curve_new(const Poly& D) {
  if (D.degree() < 1) throw ArithmeticError("curve needs a nonconstant polynomial");
  if (!D.is_monic()) throw ArithmeticError("curve polynomial " + D.to_pretty() + " is not monic");
  return curve_from_model(D);
}

std::shared_ptr<const CountingContext> counting_context(const FieldDesc& base, unsigned k) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, unsigned>, std::shared_ptr<const CountingContext>> cache;
  const auto key = std::make_tuple(base.p(), base.e(), k);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto ctx = std::make_shared<CountingContext>(base, k);
  ctx->ext = base.extension(k);
  const Field& E = *ctx->ext;
  auto emb = base.embedding(k);
  ctx->embed_log.resize(emb.size());
  for (std::size_t a = 0; a < emb.size(); ++a) ctx->embed_log[a] = emb[a] == 0 ? Field::kNoLog : E.log(emb[a]);

  const std::uint32_t ord = E.order();
  const std::uint64_t q = base.q();
  std::vector<std::uint8_t> seen(ord, 0);
  for (std::uint32_t l = 0; l < ord; ++l) {
    if (seen[l]) continue;
    std::uint32_t size = 0;
    std::uint32_t cur = l;
    do {
      seen[cur] = 1;
      ++size;
      cur = static_cast<std::uint32_t>((static_cast<std::uint64_t>(cur) * q) % ord);
    } while (cur != l);
    ctx->orbit_rep.push_back(l);
    ctx->orbit_size.push_back(size);
  }
  ctx->squares.assign(E.size(), 0);
  for (Elem a = 1; a < E.size(); ++a) ctx->squares[a] = E.chi(a) == 1 ? 1 : 0;

  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, ctx);
  return it->second;
}

std::int64_t character_sum(const CountingContext& ctx, const Poly& D) {
  const Field& E = *ctx.ext;
  const std::uint32_t ord = E.order();
  constexpr std::uint32_t kZero = Field::kNoLog;
  const auto& c = D.coeffs();
  const int deg = D.degree();
  std::uint32_t logs[256];
  std::vector<std::uint32_t> big;
  std::uint32_t* cl = logs;
  if (c.size() > 256) {
    big.resize(c.size());
    cl = big.data();
  }
  for (std::size_t i = 0; i < c.size(); ++i) cl[i] = ctx.embed_log[c[i]];

  auto chi_of_log = [](std::uint32_t l) -> int { return l == kZero ? 0 : ((l & 1U) ? -1 : 1); };

  // x = 0 contributes chi(D(0)).
  std::int64_t total = chi_of_log(cl[0]);
  const std::size_t n = ctx.orbit_rep.size();
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint32_t xl = ctx.orbit_rep[r];
    std::uint32_t acc = cl[deg];
    for (int i = deg - 1; i >= 0; --i) {
      if (acc != kZero) {
        acc += xl;
        if (acc >= ord) acc -= ord;
      }
      const std::uint32_t ci = cl[i];
      if (ci == kZero) continue;
      if (acc == kZero) {
        acc = ci;
        continue;
      }
      std::uint32_t d = ci >= acc ? ci - acc : ci + ord - acc;
      std::uint32_t z = E.zech(d);
      if (z == kZero) {
        acc = kZero;
      } else {
        acc += z;
        if (acc >= ord) acc -= ord;
      }
    }
    total += static_cast<std::int64_t>(ctx.orbit_size[r]) * chi_of_log(acc);
  }
  return total;
}

std::int64_t count_points(const Curve& C, unsigned k) {
  if (k == 0) throw ArithmeticError("extension degree must be positive");
  auto ctx = counting_context(C.field, k);
  const std::int64_t qk = ipow_signed(C.field.q(), k);
  const std::int64_t n = qk + character_sum(*ctx, C.D) + C.points_at_infinity(k);
  const __int128 dev = static_cast<__int128>(n) - qk - 1;
  const __int128 bound_sq = static_cast<__int128>(4) * C.genus * C.genus * qk;
  if (dev * dev > bound_sq) {
    throw InternalAssertion("Weil bound violated counting points on y^2 = " + C.D.to_pretty() + " over degree " +
                            std::to_string(k) + " extension");
  }
  return n;
}

std::int64_t LPolynomial::value_at_one() const {
  __int128 s = 0;
  for (auto a : coeffs) s += a;
  return checked(s, "P(1)");
}

LPolynomial l_polynomial_from_power_sums(std::uint64_t q, int genus, const std::vector<std::int64_t>& s) {
  LPolynomial P;
  P.q = q;
  P.genus = genus;
  P.power_sums = s;
  P.coeffs.assign(2 * static_cast<std::size_t>(genus) + 1, 0);
  P.coeffs[0] = 1;
  for (int i = 1; i <= genus; ++i) {
    __int128 acc = 0;
    for (int j = 1; j <= i; ++j) acc += static_cast<__int128>(s[j - 1]) * P.coeffs[i - j];
    acc = -acc;
    if (acc % i != 0) {
      throw InternalAssertion("inexact Newton division at a_" + std::to_string(i) + " (point counts inconsistent)");
    }
    P.coeffs[i] = checked(acc / i, "L-polynomial coefficient");
  }
  for (int i = 0; i < genus; ++i) {
    __int128 v = static_cast<__int128>(P.coeffs[i]) * ipow_signed(q, static_cast<unsigned>(genus - i));
    P.coeffs[2 * genus - i] = checked(v, "L-polynomial coefficient");
  }
  return P;
}

LPolynomial l_polynomial(const Curve& C) {
  std::vector<std::int64_t> s;
  const std::uint64_t q = C.field.q();
  for (int k = 1; k <= C.genus; ++k) {
    std::int64_t n = count_points(C, static_cast<unsigned>(k));
    s.push_back(ipow_signed(q, static_cast<unsigned>(k)) + 1 - n);
  }
  return l_polynomial_from_power_sums(q, C.genus, s);
}

std::vector<std::int64_t> power_sums(const LPolynomial& P, unsigned kmax) {
  // Newton: s_k = -k a_k - sum_{j=1}^{k-1} a_j s_{k-j}.
  std::vector<std::int64_t> s;
  auto a = [&](unsigned i) -> std::int64_t { return i < P.coeffs.size() ? P.coeffs[i] : 0; };
  for (unsigned k = 1; k <= kmax; ++k) {
    __int128 v = -static_cast<__int128>(k) * a(k);
    for (unsigned j = 1; j < k; ++j) v -= static_cast<__int128>(a(j)) * s[k - j - 1];
    s.push_back(checked(v, "power sum"));
  }
  return s;
}

CharSumL char_sum_lpoly(const Poly& D) {
  if (D.is_zero()) throw ArithmeticError("character sum of the zero polynomial");
  CharSumL L;
  const int n = D.degree();
  L.coeffs.assign(static_cast<std::size_t>(std::max(n, 1)), 0);
  L.coeffs[0] = 1;
  for (int d = 1; d < n; ++d) {
    std::int64_t sum = 0;
    MonicEnumerator en(D.field(), static_cast<unsigned>(d), false);
    while (auto f = en.next()) sum += jacobi(D, *f);
    L.coeffs[d] = sum;
  }
  return L;
}

std::vector<std::int64_t> completed_lpoly(const LPolynomial& P, int lambda) {
  std::vector<std::int64_t> r = P.coeffs;
  if (lambda == 1) {
    r.push_back(0);
    for (std::size_t i = r.size() - 1; i > 0; --i) r[i] -= P.coeffs[i - 1];
  }
  return r;
}

bool dual_identity_holds(const CharSumL& Lstar, const LPolynomial& P, int lambda) {
  return Lstar.coeffs == completed_lpoly(P, lambda);
}

}  // namespace hz
