#include "bbc/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace bbc {

namespace {

std::size_t g_karatsuba_threshold = 64;

using Coeffs = std::vector<Word>;

void mul_schoolbook(const Word* a, std::size_t na, const Word* b, std::size_t nb, Word* out,
                    const PrimeField& f) {
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i + j] = f.mul_add(a[i], b[j], out[i + j]);
  }
}

// out has room for na + nb - 1 entries and is accumulated into.
void mul_karatsuba(const Word* a, std::size_t na, const Word* b, std::size_t nb, Word* out,
                   const PrimeField& f) {
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  if (nb == 0) return;
  if (nb < g_karatsuba_threshold) {
    mul_schoolbook(a, na, b, nb, out, f);
    return;
  }
  const std::size_t m = na / 2;
  if (nb <= m) {
    // Unbalanced: split the long operand only.
    mul_karatsuba(a, m, b, nb, out, f);
    mul_karatsuba(a + m, na - m, b, nb, out + m, f);
    return;
  }
  const std::size_t a1n = na - m, b1n = nb - m;
  Coeffs z0(2 * m - 1, 0), z2(a1n + b1n - 1, 0);
  mul_karatsuba(a, m, b, m, z0.data(), f);
  mul_karatsuba(a + m, a1n, b + m, b1n, z2.data(), f);
  Coeffs sa(std::max(m, a1n), 0), sb(std::max(m, b1n), 0);
  for (std::size_t i = 0; i < m; ++i) sa[i] = a[i];
  for (std::size_t i = 0; i < a1n; ++i) sa[i] = f.add(sa[i], a[m + i]);
  for (std::size_t i = 0; i < m; ++i) sb[i] = b[i];
  for (std::size_t i = 0; i < b1n; ++i) sb[i] = f.add(sb[i], b[m + i]);
  Coeffs z1(sa.size() + sb.size() - 1, 0);
  mul_karatsuba(sa.data(), sa.size(), sb.data(), sb.size(), z1.data(), f);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = f.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = f.sub(z1[i], z2[i]);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = f.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) out[m + i] = f.add(out[m + i], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * m + i] = f.add(out[2 * m + i], z2[i]);
}

FieldPoly random_below(const PrimeField& f, int deg_bound, Rng& rng) {
  std::vector<Word> c(static_cast<std::size_t>(deg_bound));
  for (auto& x : c) x = f.random(rng);
  return FieldPoly(f, std::move(c));
}

// X^(p^k) mod m by k successive p-th powers.
FieldPoly frobenius_power(const FieldPoly& m, unsigned k) {
  const PrimeField& f = m.field();
  FieldPoly h = FieldPoly::x(f) % m;
  const mpz_class p(static_cast<unsigned long>(f.modulus()));
  for (unsigned i = 0; i < k; ++i) h = powmod(h, p, m);
  return h;
}

void equal_degree_split(const FieldPoly& u, unsigned d, Rng& rng, std::vector<FieldPoly>& out) {
  if (u.degree() == static_cast<int>(d)) {
    out.push_back(u);
    return;
  }
  const PrimeField& f = u.field();
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(f.modulus()), d);
  e = (e - 1) / 2;
  const FieldPoly one = FieldPoly::constant(f, 1);
  for (;;) {
    FieldPoly a = random_below(f, u.degree(), rng);
    if (a.degree() < 1) continue;
    FieldPoly w = gcd(u, a);
    if (w.degree() > 0 && w.degree() < u.degree()) {
      equal_degree_split(w, d, rng, out);
      equal_degree_split(exact_div(u, w), d, rng, out);
      return;
    }
    FieldPoly b = powmod(a, e, u) - one;
    w = gcd(u, b);
    if (w.degree() > 0 && w.degree() < u.degree()) {
      equal_degree_split(w, d, rng, out);
      equal_degree_split(exact_div(u, w), d, rng, out);
      return;
    }
  }
}

std::int64_t canon_key_abs(const PrimeField& f, Word c) { return std::llabs(f.symmetric(c)); }

}  // namespace

void set_karatsuba_threshold(std::size_t t) { g_karatsuba_threshold = std::max<std::size_t>(t, 2); }
std::size_t karatsuba_threshold() { return g_karatsuba_threshold; }

FieldPoly::FieldPoly(const PrimeField& f, std::vector<Word> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= field_.modulus();
  normalize();
}

FieldPoly FieldPoly::from_ints(const PrimeField& f, const std::vector<std::int64_t>& coeffs) {
  std::vector<Word> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(f.from_int(v));
  return FieldPoly(f, std::move(c));
}

FieldPoly FieldPoly::constant(const PrimeField& f, Word c) { return FieldPoly(f, {c}); }
FieldPoly FieldPoly::x(const PrimeField& f) { return FieldPoly(f, {0, 1}); }
FieldPoly FieldPoly::linear(const PrimeField& f, Word a) { return FieldPoly(f, {f.neg(a % f.modulus()), 1}); }

void FieldPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Word FieldPoly::operator()(Word x) const {
  Word r = 0;
  x %= field_.modulus();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_.mul_add(r, x, *it);
  return r;
}

FieldPoly& FieldPoly::operator+=(const FieldPoly& o) {
  if (!(field_ == o.field_)) throw FieldMismatch();
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.add(c_[i], o.c_[i]);
  normalize();
  return *this;
}

FieldPoly& FieldPoly::operator-=(const FieldPoly& o) {
  if (!(field_ == o.field_)) throw FieldMismatch();
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.sub(c_[i], o.c_[i]);
  normalize();
  return *this;
}

FieldPoly FieldPoly::operator-() const {
  FieldPoly r = *this;
  for (auto& x : r.c_) x = field_.neg(x);
  return r;
}

FieldPoly FieldPoly::scaled(Word s) const {
  FieldPoly r = *this;
  for (auto& x : r.c_) x = field_.mul(x, s);
  r.normalize();
  return r;
}

FieldPoly FieldPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(field_.inv(c_.back()));
}

FieldPoly FieldPoly::shifted(std::size_t k) const {
  if (c_.empty()) return *this;
  FieldPoly r(field_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch();
  if (a.is_zero() || b.is_zero()) return FieldPoly(a.field_);
  std::vector<Word> out(a.c_.size() + b.c_.size() - 1, 0);
  mul_karatsuba(a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), out.data(), a.field_);
  return FieldPoly(a.field_, std::move(out));
}

std::string FieldPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::int64_t v = field_.symmetric(c_[i]);
    if (first) {
      os << v;
    } else {
      os << (v < 0 ? " - " : " + ") << std::llabs(v);
    }
    if (i == 1) os << "*X";
    if (i >= 2) os << "*X^" << i;
    first = false;
  }
  return os.str();
}

std::pair<FieldPoly, FieldPoly> divrem(const FieldPoly& f, const FieldPoly& g) {
  if (!(f.field() == g.field())) throw FieldMismatch();
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  const PrimeField& F = f.field();
  if (f.degree() < g.degree()) return {FieldPoly(F), f};
  std::vector<Word> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  const Word inv_lead = F.inv(gc.back());
  std::vector<Word> q(r.size() - dg, 0);
  for (std::size_t i = r.size(); i-- > dg;) {
    Word coef = F.mul(r[i], inv_lead);
    q[i - dg] = coef;
    if (coef == 0) continue;
    const Word neg = F.neg(coef);
    for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] = F.mul_add(neg, gc[j], r[i - dg + j]);
  }
  r.resize(dg);
  return {FieldPoly(F, std::move(q)), FieldPoly(F, std::move(r))};
}

FieldPoly operator%(const FieldPoly& f, const FieldPoly& g) { return divrem(f, g).second; }

FieldPoly exact_div(const FieldPoly& f, const FieldPoly& g) {
  auto [q, r] = divrem(f, g);
  if (!r.is_zero()) throw Error("exact_div: divisor does not divide dividend");
  return q;
}

bool divides(const FieldPoly& g, const FieldPoly& f) { return (f % g).is_zero(); }

FieldPoly gcd(const FieldPoly& a, const FieldPoly& b) {
  FieldPoly x = a, y = b;
  while (!y.is_zero()) {
    FieldPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FieldPoly lcm(const FieldPoly& a, const FieldPoly& b) {
  if (a.is_zero() || b.is_zero()) return FieldPoly(a.field());
  return (exact_div(a, gcd(a, b)) * b).monic();
}

ExtendedGcd xgcd(const FieldPoly& a, const FieldPoly& b) {
  const PrimeField& F = a.field();
  FieldPoly r0 = a, r1 = b;
  FieldPoly s0 = FieldPoly::constant(F, 1), s1(F);
  FieldPoly t0(F), t1 = FieldPoly::constant(F, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FieldPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    FieldPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Word inv = F.inv(r0.leading());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

FieldPoly derivative(const FieldPoly& f) {
  const PrimeField& F = f.field();
  if (f.degree() < 1) return FieldPoly(F);
  std::vector<Word> c(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) c[i - 1] = F.mul(f.coeffs()[i], F.from_uint(i));
  return FieldPoly(F, std::move(c));
}

FieldPoly pow(const FieldPoly& f, unsigned e) {
  FieldPoly r = FieldPoly::constant(f.field(), 1), b = f;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

FieldPoly powmod(const FieldPoly& base, const mpz_class& e, const FieldPoly& m) {
  FieldPoly r = FieldPoly::constant(base.field(), 1) % m;
  FieldPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % m;
  }
  return r;
}

unsigned multiplicity_in(const FieldPoly& g, const FieldPoly& f) {
  if (g.degree() < 1) throw Error("multiplicity_in: constant factor");
  if (f.is_zero()) throw Error("multiplicity_in: zero polynomial");
  unsigned k = 0;
  FieldPoly cur = f;
  for (;;) {
    auto [q, r] = divrem(cur, g);
    if (!r.is_zero()) return k;
    ++k;
    cur = std::move(q);
  }
}

std::vector<FactorPower> squarefree_decomposition(const FieldPoly& f) {
  if (f.is_zero()) throw Error("squarefree decomposition of zero");
  if (static_cast<std::uint64_t>(f.degree()) >= f.field().modulus()) {
    throw Error("squarefree decomposition requires p > deg(f)");
  }
  std::vector<FactorPower> out;
  if (f.degree() < 1) return out;
  FieldPoly fm = f.monic();
  FieldPoly df = derivative(fm);
  FieldPoly a = gcd(fm, df);
  FieldPoly b = exact_div(fm, a);
  FieldPoly c = exact_div(df, a);
  FieldPoly d = c - derivative(b);
  for (unsigned i = 1; b.degree() > 0; ++i) {
    FieldPoly ai = gcd(b, d);
    if (ai.degree() > 0) out.push_back({ai, i});
    b = exact_div(b, ai);
    c = exact_div(d, ai);
    d = c - derivative(b);
  }
  return out;
}

FieldPoly squarefree_part(const FieldPoly& f) {
  FieldPoly r = FieldPoly::constant(f.field(), 1);
  for (const auto& fp : squarefree_decomposition(f)) r = r * fp.factor;
  return r;
}

FieldPoly Factorization::expand(const PrimeField& f) const {
  FieldPoly r = FieldPoly::constant(f, unit);
  for (const auto& fp : factors) r = r * pow(fp.factor, fp.multiplicity);
  return r;
}

bool canonical_less(const FieldPoly& a, const FieldPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const PrimeField& F = a.field();
  for (int i = a.degree(); i-- > 0;) {
    const Word x = a.coeff(static_cast<std::size_t>(i)), y = b.coeff(static_cast<std::size_t>(i));
    if (x == y) continue;
    const auto kx = canon_key_abs(F, x), ky = canon_key_abs(F, y);
    if (kx != ky) return kx < ky;
    return F.symmetric(x) > F.symmetric(y);
  }
  return false;
}

Factorization factor(const FieldPoly& f, Rng& rng) {
  if (f.is_zero()) throw Error("factor: zero polynomial");
  const PrimeField& F = f.field();
  Factorization out;
  out.unit = f.leading();
  const mpz_class p(static_cast<unsigned long>(F.modulus()));
  for (const auto& [sqf, mult] : squarefree_decomposition(f)) {
    FieldPoly g = sqf;
    FieldPoly h = FieldPoly::x(F) % g;
    const FieldPoly x = FieldPoly::x(F);
    unsigned d = 0;
    while (g.degree() >= 2 * static_cast<int>(d + 1)) {
      ++d;
      h = powmod(h, p, g);
      FieldPoly u = gcd(g, h - x);
      if (u.degree() > 0) {
        std::vector<FieldPoly> parts;
        equal_degree_split(u, d, rng, parts);
        for (auto& part : parts) out.factors.push_back({part, mult});
        g = exact_div(g, u);
        h = h % g;
      }
    }
    if (g.degree() > 0) out.factors.push_back({g, mult});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorPower& a, const FactorPower& b) { return canonical_less(a.factor, b.factor); });
  return out;
}

bool is_irreducible(const FieldPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const FieldPoly m = f.monic();
  const unsigned n = static_cast<unsigned>(m.degree());
  const FieldPoly x = FieldPoly::x(m.field());
  if (!(frobenius_power(m, n) == x % m)) return false;
  for (auto r : prime_factors(n)) {
    FieldPoly h = frobenius_power(m, n / static_cast<unsigned>(r));
    if (gcd(m, h - x).degree() != 0) return false;
  }
  return true;
}

GcdFreeBasis gcd_free_basis(const std::vector<FieldPoly>& polys, const FieldPoly& target) {
  std::vector<FieldPoly> basis;
  for (const auto& p : polys) {
    if (p.is_zero()) throw Error("gcd_free_basis: zero input");
    if (p.degree() > 0) basis.push_back(p.monic());
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        FieldPoly g = gcd(basis[i], basis[j]);
        if (g.degree() < 1) continue;
        FieldPoly a = exact_div(basis[i], g), b = exact_div(basis[j], g);
        std::vector<FieldPoly> next;
        for (std::size_t k = 0; k < basis.size(); ++k) {
          if (k != i && k != j) next.push_back(basis[k]);
        }
        for (auto* q : {&a, &b, &g}) {
          if (q->degree() > 0) next.push_back(std::move(*q));
        }
        basis = std::move(next);
        changed = true;
      }
    }
  }
  std::sort(basis.begin(), basis.end(), canonical_less);

  GcdFreeBasis out;
  const FieldPoly t = target.monic();
  FieldPoly rebuilt = FieldPoly::constant(target.field(), 1);
  for (auto& b : basis) {
    const unsigned mu = t.is_zero() ? 0 : multiplicity_in(b, t);
    rebuilt = rebuilt * pow(b, mu);
    out.elements.push_back(std::move(b));
    out.exponents.push_back(mu);
  }
  if (!(rebuilt == t)) throw BadPrime("gcd-free basis does not express the target polynomial");
  return out;
}

}  // namespace bbc
