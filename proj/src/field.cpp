#include "halfzero/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <utility>

namespace hz {

namespace {

// Dense polynomials over F_p with small p, coefficients low-to-high. Only used
// to find conductors and primitive elements before any Field exists.
using PrimePoly = std::vector<std::int64_t>;

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1;
  std::int64_t b = a % p;
  for (std::int64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

PrimePoly poly_mod(PrimePoly a, const PrimePoly& m, std::int64_t p) {
  trim(a);
  std::int64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    std::int64_t c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

PrimePoly mul_mod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(r), m, p);
}

PrimePoly pow_mod(PrimePoly base, std::uint64_t e, const PrimePoly& m, std::int64_t p) {
  PrimePoly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, base, m, p);
    base = mul_mod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PrimePoly poly_gcd(PrimePoly a, PrimePoly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test: f of degree n is irreducible over F_p iff t^(p^n) = t mod f
// and gcd(t^(p^(n/r)) - t, f) = 1 for every prime r | n.
bool is_irreducible_prime_field(const PrimePoly& f, std::int64_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  auto frobenius_power = [&](std::size_t k) {
    PrimePoly x{0, 1};
    for (std::size_t i = 0; i < k; ++i) x = pow_mod(x, static_cast<std::uint64_t>(p), f, p);
    return x;
  };
  PrimePoly t{0, 1};
  if (frobenius_power(n) != poly_mod(t, f, p)) return false;
  for (std::uint64_t r : prime_factors(n)) {
    PrimePoly x = frobenius_power(n / r);
    x.resize(std::max<std::size_t>(x.size(), 2), 0);
    x[1] = (x[1] - 1 + p) % p;
    PrimePoly g = poly_gcd(x, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

PrimePoly from_encoding(Elem a, std::uint32_t p, std::uint32_t n) {
  PrimePoly r(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    r[i] = a % p;
    a /= p;
  }
  trim(r);
  return r;
}

Elem to_encoding(const PrimePoly& a, std::uint32_t p) {
  Elem r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * p + static_cast<Elem>(a[i]);
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t n) {
  if (n == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  // The ordering key is (c_0, c_1, ..., c_{n-1}); enumerate with c_0 as the
  // most significant digit.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PrimePoly f(n + 1, 0);
    std::uint64_t rest = idx;
    for (std::uint32_t i = n; i-- > 0;) {
      f[i] = static_cast<std::int64_t>(rest % p);
      rest /= p;
    }
    f[n] = 1;
    if (f[0] == 0) continue;
    if (is_irreducible_prime_field(f, p)) {
      return std::vector<std::uint32_t>(f.begin(), f.end());
    }
  }
  throw InternalAssertion("no irreducible polynomial found");
}

Field::Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> conductor)
    : p_(p), n_(n), conductor_(std::move(conductor)) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) q *= p;
  q_ = static_cast<std::uint32_t>(q);
  order_ = q_ - 1;

  const PrimePoly modulus(conductor_.begin(), conductor_.end());
  const auto factors = prime_factors(order_);
  const std::int64_t sp = p;

  // Smallest-encoding primitive element.
  Elem gen = 0;
  for (Elem cand = 1; cand < q_; ++cand) {
    PrimePoly c = from_encoding(cand, p, n);
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (pow_mod(c, order_ / r, modulus, sp) == PrimePoly{1}) {
        primitive = false;
        break;
      }
    }
    if (order_ == 1 && cand != 1) primitive = false;
    if (primitive) {
      gen = cand;
      break;
    }
  }
  if (gen == 0) throw InternalAssertion("no primitive element");

  exp_.assign(2 * static_cast<std::size_t>(order_) + 1, 0);
  log_.assign(q_, kNoLog);
  const PrimePoly g = from_encoding(gen, p, n);
  PrimePoly cur{1};
  for (std::uint32_t k = 0; k < order_; ++k) {
    Elem enc = to_encoding(cur, p);
    exp_[k] = enc;
    log_[enc] = k;
    cur = mul_mod(cur, g, modulus, sp);
  }
  for (std::uint32_t k = order_; k < exp_.size(); ++k) exp_[k] = exp_[k - order_];

  neg_.assign(q_, 0);
  for (Elem a = 0; a < q_; ++a) {
    Elem r = 0;
    Elem rest = a;
    Elem scale = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      r += ((p - rest % p) % p) * scale;
      rest /= p;
      scale *= p;
    }
    neg_[a] = r;
  }

  // 1 + g^d only changes the constant digit.
  zech_.assign(order_, kNoLog);
  for (std::uint32_t d = 0; d < order_; ++d) {
    Elem v = exp_[d];
    Elem low = v % p;
    Elem sum = v - low + (low + 1) % p;
    zech_[d] = sum == 0 ? kNoLog : log_[sum];
  }

  for (Elem a = 1; a < q_; ++a) {
    if ((log_[a] & 1U) == 1) {
      nonsquare_ = a;
      break;
    }
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw ArithmeticError("inverse of zero");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : order_ - l];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (k % order_)) % order_)];
}

Elem Field::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(n_, 0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(const std::vector<std::uint32_t>& digits) const {
  if (digits.size() != n_) throw ArithmeticError("wrong digit count for field element");
  Elem r = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw ArithmeticError("digit out of range");
    r = r * p_ + digits[i];
  }
  return r;
}

std::string Field::to_string(Elem a) const {
  if (n_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::ostringstream out;
  bool first = true;
  for (std::uint32_t i = n_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << d[i];
    } else {
      if (d[i] != 1) out << d[i] << '*';
      out << 'a';
      if (i > 1) out << '^' << i;
    }
  }
  if (first) out << '0';
  return out.str();
}

FieldPtr make_field(std::uint32_t p, std::uint32_t n) {
  if (p == 2) throw ArithmeticError("characteristic 2 is not supported: p must be an odd prime");
  if (!is_prime(p)) throw ArithmeticError("p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw ArithmeticError("extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxFieldSize) {
      throw ArithmeticError("field F_" + std::to_string(p) + "^" + std::to_string(n) +
                            " exceeds the table size budget");
    }
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, n});
  if (it != cache.end()) return it->second;
  FieldPtr f(new Field(p, n, smallest_irreducible(p, n)));
  cache.emplace(std::make_pair(p, n), f);
  return f;
}

FieldDesc::FieldDesc(std::uint32_t p, std::uint32_t e) : base_(make_field(p, e)) {}

FieldPtr FieldDesc::extension(std::uint32_t k) const {
  if (k == 0) throw ArithmeticError("extension degree must be positive");
  return make_field(p(), e() * k);
}

std::vector<Elem> FieldDesc::embedding(std::uint32_t k) const {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::vector<Elem>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p(), e(), k});
    if (it != cache.end()) return it->second;
  }
  FieldPtr ext = extension(k);
  const std::uint32_t qq = q();
  std::vector<Elem> emb(qq, 0);
  if (e() == 1) {
    for (Elem a = 0; a < qq; ++a) emb[a] = a;
  } else {
    const auto& cond = base_->conductor();
    Elem root = 0;
    bool found = false;
    for (Elem beta = 0; beta < ext->size() && !found; ++beta) {
      Elem acc = 0;
      for (std::size_t i = cond.size(); i-- > 0;) acc = ext->add(ext->mul(acc, beta), cond[i]);
      if (acc == 0) {
        root = beta;
        found = true;
      }
    }
    if (!found) throw InternalAssertion("conductor has no root in extension");
    for (Elem a = 0; a < qq; ++a) {
      auto d = base_->digits(a);
      Elem acc = 0;
      for (std::size_t i = d.size(); i-- > 0;) acc = ext->add(ext->mul(acc, root), d[i]);
      emb[a] = acc;
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_tuple(p(), e(), k), emb);
  return emb;
}

}  // namespace hz
