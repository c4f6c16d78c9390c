#include "halfzero/poly.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace hz {

namespace {

void check_same_field(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw ArithmeticError("polynomials over different fields");
}

// a^(1/p) coefficientwise on a polynomial in t^p.
Poly pth_root(const Poly& f) {
  const Field& F = f.F();
  const std::uint32_t p = F.p();
  // x -> x^(q/p) inverts Frobenius x -> x^p on F_q.
  const std::uint64_t root_exp = F.size() / p;
  std::vector<Elem> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F.pow(f.coeffs()[i], root_exp));
  return Poly(f.field(), std::move(c));
}

int moebius(std::uint64_t n) {
  int result = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (Elem c : c_) {
    if (c >= field_->size()) throw ArithmeticError("coefficient is not a field element");
  }
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr field, Elem c) {
  return Poly(std::move(field), std::vector<Elem>{c});
}

Poly Poly::monomial(FieldPtr field, Elem c, int d) {
  std::vector<Elem> v(static_cast<std::size_t>(d) + 1, 0);
  v[d] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::parse(FieldPtr field, const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ArithmeticError("empty polynomial text");
  std::vector<Elem> high_to_low;
  if (s.find(',') != std::string::npos) {
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit)) {
        throw ArithmeticError("bad coefficient '" + item + "'");
      }
      unsigned long v = std::stoul(item);
      if (v >= field->size()) throw ArithmeticError("coefficient " + item + " out of range");
      high_to_low.push_back(static_cast<Elem>(v));
    }
  } else {
    const std::uint32_t e = field->degree();
    if (s == "0") return Poly(field);
    if (s.size() % e != 0) throw ArithmeticError("text length is not a multiple of the extension degree");
    for (std::size_t i = 0; i < s.size(); i += e) {
      std::vector<std::uint32_t> digits(e);
      for (std::uint32_t j = 0; j < e; ++j) {
        char ch = s[i + j];
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw ArithmeticError("bad digit in '" + s + "'");
        digits[e - 1 - j] = static_cast<std::uint32_t>(ch - '0');
      }
      high_to_low.push_back(field->from_digits(digits));
    }
  }
  std::reverse(high_to_low.begin(), high_to_low.end());
  return Poly(std::move(field), std::move(high_to_low));
}

std::string Poly::to_text() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    auto d = field_->digits(c_[i]);
    for (std::size_t j = d.size(); j-- > 0;) out.push_back(static_cast<char>('0' + d[j]));
  }
  return out;
}

std::string Poly::to_pretty() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    Elem c = c_[i];
    if (c == 0) continue;
    std::string cs = field_->to_string(c);
    bool compound = cs.find('+') != std::string::npos;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << (compound ? "(" + cs + ")" : cs);
      continue;
    }
    if (c != 1) out << (compound ? "(" + cs + ")" : cs) << '*';
    out << 't';
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  }
  return false;
}

Poly operator+(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const Field& F = a.F();
  std::vector<Elem> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a[i], b[i]);
  return Poly(a.field(), std::move(r));
}

Poly operator-(const Poly& a) {
  const Field& F = a.F();
  std::vector<Elem> r(a.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.neg(a[i]);
  return Poly(a.field(), std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const Field& F = a.F();
  std::vector<Elem> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return Poly(a.field(), std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  const Field& F = a.F();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> r(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
  }
  return Poly(a.field(), std::move(r));
}

Poly scale(const Poly& a, Elem c) {
  const Field& F = a.F();
  std::vector<Elem> r(a.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(a[i], c);
  return Poly(a.field(), std::move(r));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw ArithmeticError("division by the zero polynomial");
  const Field& F = a.F();
  if (a.degree() < b.degree()) return {Poly(a.field()), a};
  std::vector<Elem> rem = a.coeffs();
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  const Elem lead_inv = F.inv(d.back());
  std::vector<Elem> quo(rem.size() - db, 0);
  for (std::size_t k = quo.size(); k-- > 0;) {
    Elem c = F.mul(rem[k + db], lead_inv);
    quo[k] = c;
    if (c == 0) continue;
    Elem nc = F.neg(c);
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] = F.add(rem[k + j], F.mul(nc, d[j]));
  }
  rem.resize(db);
  return {Poly(a.field(), std::move(quo)), Poly(a.field(), std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }

Poly make_monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(a, a.F().inv(a.lead()));
}

Poly gcd(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

Poly derivative(const Poly& a) {
  const Field& F = a.F();
  if (a.coeffs().size() <= 1) return Poly(a.field());
  std::vector<Elem> r(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) {
    r[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i)), a[i]);
  }
  return Poly(a.field(), std::move(r));
}

Elem eval(const Poly& a, Elem x) {
  const Field& F = a.F();
  Elem acc = 0;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

Poly pow(const Poly& a, unsigned k) {
  Poly r = Poly::constant(a.field(), 1);
  Poly b = a;
  while (k > 0) {
    if (k & 1U) r = r * b;
    k >>= 1;
    if (k > 0) b = b * b;
  }
  return r;
}

Poly powmod(const Poly& base, std::uint64_t k, const Poly& m) {
  Poly r = Poly::constant(base.field(), 1) % m;
  Poly b = base % m;
  while (k > 0) {
    if (k & 1U) r = (r * b) % m;
    k >>= 1;
    if (k > 0) b = (b * b) % m;
  }
  return r;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw ArithmeticError("is_squarefree of the zero polynomial");
  if (f.degree() <= 0) return true;
  Poly d = derivative(f);
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const Poly& f_in) {
  if (f_in.is_zero()) throw ArithmeticError("squarefree factorization of the zero polynomial");
  Poly f = make_monic(f_in);
  std::vector<std::pair<Poly, unsigned>> out;
  if (f.degree() <= 0) return out;
  const unsigned p = f.F().p();
  Poly one = Poly::constant(f.field(), 1);

  Poly c = gcd(f, derivative(f));
  Poly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    for (auto& [g, m] : squarefree_factorization(pth_root(c))) out.emplace_back(g, m * p);
  }
  // Merge equal multiplicities coming from different recursion levels.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<std::pair<Poly, unsigned>> merged;
  for (auto& item : out) {
    if (!merged.empty() && merged.back().second == item.second) {
      merged.back().first = merged.back().first * item.first;
    } else {
      merged.push_back(item);
    }
  }
  return merged;
}

SquarefreeDecomposition squarefree_part(const Poly& f) {
  if (f.is_zero()) throw ArithmeticError("squarefree part of the zero polynomial");
  Poly s = Poly::constant(f.field(), 1);
  Poly y = Poly::constant(f.field(), 1);
  for (const auto& [g, m] : squarefree_factorization(f)) {
    if (m % 2 == 1) s = s * g;
    if (m >= 2) y = y * pow(g, m / 2);
  }
  return {f.lead(), std::move(s), std::move(y)};
}

int jacobi(const Poly& D, const Poly& f_in) {
  check_same_field(D, f_in);
  if (D.is_zero()) throw ArithmeticError("jacobi symbol of the zero polynomial");
  if (f_in.degree() < 1 || !f_in.is_monic()) throw ArithmeticError("jacobi modulus must be monic nonconstant");
  const Field& F = D.F();
  const bool half_odd = ((F.size() - 1) / 2) % 2 == 1;
  int res = 1;
  Poly a = D % f_in;
  Poly m = f_in;
  while (true) {
    if (m.degree() == 0) return res;
    if (a.is_zero()) return 0;
    Elem c = a.lead();
    if (c != 1) {
      if (F.chi(c) == -1 && (m.degree() % 2 == 1)) res = -res;
      a = make_monic(a);
    }
    if (a.degree() == 0) return res;
    if (half_odd && (a.degree() % 2 == 1) && (m.degree() % 2 == 1)) res = -res;
    Poly r = m % a;
    m = std::move(a);
    a = std::move(r);
  }
}

namespace {

void equal_degree_split(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const Field& F = g.F();
  const std::uint64_t qd = ipow(F.size(), static_cast<unsigned>(d));
  const std::uint64_t e = (qd - 1) / 2;
  Poly one = Poly::constant(g.field(), 1);
  std::uniform_int_distribution<Elem> coeff(0, F.size() - 1);
  while (true) {
    std::vector<Elem> c(static_cast<std::size_t>(g.degree()));
    for (auto& x : c) x = coeff(rng);
    Poly a(g.field(), std::move(c));
    if (a.degree() < 1) continue;
    Poly h = gcd(g, a);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
    Poly b = powmod(a, e, g) - one;
    h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
  }
}

std::vector<Poly> factor_squarefree(const Poly& f, std::mt19937_64& rng) {
  std::vector<Poly> out;
  Poly g = f;
  const Field& F = f.F();
  Poly t = Poly::monomial(f.field(), 1, 1);
  Poly h = t % g;
  for (int d = 1; g.degree() >= 2 * d; ++d) {
    h = powmod(h, F.size(), g);
    Poly part = gcd(g, h - t);
    if (part.degree() > 0) {
      equal_degree_split(part, d, rng, out);
      g = g / part;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.push_back(g);
  return out;
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> factor(const Poly& f) {
  if (f.is_zero()) throw ArithmeticError("factorization of the zero polynomial");
  std::mt19937_64 rng(0x5EEDULL);
  std::vector<std::pair<Poly, unsigned>> out;
  for (const auto& [g, m] : squarefree_factorization(f)) {
    for (auto& irr : factor_squarefree(g, rng)) out.emplace_back(std::move(irr), m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor(f);
  return fac.size() == 1 && fac[0].second == 1;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("integer power overflows 64 bits");
  }
  return r;
}

std::uint64_t monic_squarefree_count(std::uint64_t q, unsigned d) {
  if (d == 0) return 1;
  if (d == 1) return q;
  return ipow(q, d) - ipow(q, d - 1);
}

std::uint64_t monic_irreducible_count(std::uint64_t q, unsigned d) {
  if (d == 0) return 0;
  std::int64_t sum = 0;
  for (unsigned k = 1; k <= d; ++k) {
    if (d % k == 0) sum += moebius(k) * static_cast<std::int64_t>(ipow(q, d / k));
  }
  return static_cast<std::uint64_t>(sum) / d;
}

Poly monic_from_index(const FieldPtr& field, unsigned d, std::uint64_t index) {
  const std::uint32_t q = field->size();
  std::vector<Elem> c(d + 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    c[i] = static_cast<Elem>(index % q);
    index /= q;
  }
  c[d] = 1;
  return Poly(field, std::move(c));
}

std::uint64_t monic_index(const Poly& f) {
  if (!f.is_monic()) throw ArithmeticError("monic_index of a non-monic polynomial");
  std::uint64_t r = 0;
  const std::uint64_t q = f.F().size();
  for (std::size_t i = f.coeffs().size() - 1; i-- > 0;) r = r * q + f.coeffs()[i];
  return r;
}

MonicEnumerator::MonicEnumerator(FieldPtr field, unsigned degree, bool only_squarefree)
    : MonicEnumerator(field, degree, only_squarefree, 0, ipow(field->size(), degree)) {}

MonicEnumerator::MonicEnumerator(FieldPtr field, unsigned degree, bool only_squarefree, std::uint64_t begin,
                                 std::uint64_t end)
    : field_(std::move(field)),
      degree_(degree),
      only_squarefree_(only_squarefree),
      index_(begin),
      end_(end),
      population_(ipow(field_->size(), degree)) {
  if (end_ > population_) end_ = population_;
}

std::optional<Poly> MonicEnumerator::next() {
  while (index_ < end_) {
    Poly f = monic_from_index(field_, degree_, index_++);
    if (!only_squarefree_ || is_squarefree(f)) return f;
  }
  return std::nullopt;
}

std::vector<Poly> enumerate_monic(const FieldPtr& field, unsigned degree, bool only_squarefree) {
  std::vector<Poly> out;
  MonicEnumerator en(field, degree, only_squarefree);
  while (auto f = en.next()) out.push_back(std::move(*f));
  return out;
}

}  // namespace hz
