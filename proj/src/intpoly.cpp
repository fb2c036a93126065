#include "bbc/intpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace bbc {

namespace {

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const mpz_class& m) { return (a * b).mod(m); }

// Division by a monic divisor modulo m; inputs with coefficients in [0, m).
std::pair<IntPoly, IntPoly> divrem_monic_mod(const IntPoly& f, const IntPoly& g, const mpz_class& m) {
  if (!g.is_monic()) throw Error("divrem_monic_mod: divisor not monic");
  if (f.degree() < g.degree()) return {IntPoly(), f.mod(m)};
  std::vector<mpz_class> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  std::vector<mpz_class> q(r.size() - dg);
  for (std::size_t i = r.size(); i-- > dg;) {
    mpz_class coef = mod_nonneg(r[i], m);
    q[i - dg] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] -= coef * gc[j];
  }
  r.resize(dg);
  return {IntPoly(std::move(q)).mod(m), IntPoly(std::move(r)).mod(m)};
}

struct LiftState {
  IntPoly g, h, s, t;
};

// One Hensel step from modulus m to m2 (m2 | m^2). All inputs in [0, m).
void hensel_step(const IntPoly& f, LiftState& st, const mpz_class& m2) {
  const IntPoly e = (f - st.g * st.h).mod(m2);
  auto [q, r] = divrem_monic_mod(mul_mod(st.s, e, m2), st.h, m2);
  IntPoly g_new = (st.g + st.t * e + q * st.g).mod(m2);
  IntPoly h_new = (st.h + r).mod(m2);
  const IntPoly b = (st.s * g_new + st.t * h_new - IntPoly::constant(1)).mod(m2);
  auto [c, d] = divrem_monic_mod(mul_mod(st.s, b, m2), h_new, m2);
  IntPoly s_new = (st.s - d).mod(m2);
  IntPoly t_new = (st.t - st.t * b - c * g_new).mod(m2);
  st = {std::move(g_new), std::move(h_new), std::move(s_new), std::move(t_new)};
}

FieldPoly product(const std::vector<FieldPoly>& v, std::size_t lo, std::size_t hi) {
  FieldPoly r = FieldPoly::constant(v.front().field(), 1);
  for (std::size_t i = lo; i < hi; ++i) r = r * v[i];
  return r;
}

void lift_tree(const IntPoly& f, const std::vector<FieldPoly>& basis, std::size_t lo, std::size_t hi,
               const mpz_class& target, std::vector<IntPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = f;
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const PrimeField& F = basis.front().field();
  const FieldPoly g0 = product(basis, lo, mid), h0 = product(basis, mid, hi);
  const ExtendedGcd eg = xgcd(g0, h0);
  if (!eg.g.is_one()) throw Error("hensel lifting: basis elements are not coprime mod p");
  const mpz_class p(static_cast<unsigned long>(F.modulus()));
  LiftState st{IntPoly::lift(g0).mod(p), IntPoly::lift(h0).mod(p), IntPoly::lift(eg.s).mod(p),
               IntPoly::lift(eg.t).mod(p)};
  mpz_class m = p;
  while (m < target) {
    mpz_class m2 = m * m;
    if (m2 > target) m2 = target;
    hensel_step(f, st, m2);
    m = m2;
  }
  lift_tree(st.g, basis, lo, mid, target, out);
  lift_tree(st.h, basis, mid, hi, target, out);
}

std::string render(const std::vector<mpz_class>& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (first) {
      os << c[i];
    } else {
      os << (c[i] < 0 ? " - " : " + ") << abs(c[i]);
    }
    if (i == 1) os << "*X";
    if (i >= 2) os << "*X^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::from_ints(const std::vector<long>& coeffs) {
  std::vector<mpz_class> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly({c}); }
IntPoly IntPoly::x() { return IntPoly({mpz_class(0), mpz_class(1)}); }

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPoly::operator()(const mpz_class& x) const {
  mpz_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

IntPoly IntPoly::scaled(const mpz_class& s) const {
  IntPoly r = *this;
  for (auto& x : r.c_) x *= s;
  r.normalize();
  return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

FieldPoly IntPoly::reduce(const PrimeField& f) const {
  const mpz_class p(static_cast<unsigned long>(f.modulus()));
  std::vector<Word> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(mod_nonneg(x, p).get_ui());
  return FieldPoly(f, std::move(c));
}

IntPoly IntPoly::lift(const FieldPoly& f) {
  std::vector<mpz_class> c;
  c.reserve(f.coeffs().size());
  for (Word w : f.coeffs()) c.emplace_back(static_cast<long>(f.field().symmetric(w)));
  return IntPoly(std::move(c));
}

IntPoly IntPoly::symmetric_mod(const mpz_class& m) const {
  const mpz_class half = m / 2;
  std::vector<mpz_class> c;
  c.reserve(c_.size());
  for (const auto& x : c_) {
    mpz_class r = mod_nonneg(x, m);
    if (r > half) r -= m;
    c.push_back(std::move(r));
  }
  return IntPoly(std::move(c));
}

IntPoly IntPoly::mod(const mpz_class& m) const {
  std::vector<mpz_class> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(mod_nonneg(x, m));
  return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const { return render(c_); }

IntPoly pow(const IntPoly& f, unsigned e) {
  IntPoly r = IntPoly::constant(1), b = f;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

IntPoly derivative(const IntPoly& f) {
  if (f.degree() < 1) return IntPoly();
  std::vector<mpz_class> c(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) c[i - 1] = f.coeffs()[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(c));
}

mpz_class content(const IntPoly& f) {
  mpz_class g = 0;
  for (const auto& x : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  mpz_class c = content(f);
  if (f.leading() < 0) c = -c;
  std::vector<mpz_class> out;
  out.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    out.push_back(std::move(q));
  }
  return IntPoly(std::move(out));
}

std::pair<IntPoly, IntPoly> divrem(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (abs(g.leading()) != 1) throw Error("integer divrem requires a unit leading coefficient");
  if (f.degree() < g.degree()) return {IntPoly(), f};
  std::vector<mpz_class> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  const bool neg = g.leading() < 0;
  std::vector<mpz_class> q(r.size() - dg);
  for (std::size_t i = r.size(); i-- > dg;) {
    mpz_class coef = neg ? mpz_class(-r[i]) : r[i];
    q[i - dg] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) mpz_submul(r[i - dg + j].get_mpz_t(), coef.get_mpz_t(), gc[j].get_mpz_t());
  }
  r.resize(dg);
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly exact_div(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (f.is_zero()) return f;
  if (f.degree() < g.degree()) throw Error("exact_div: divisor does not divide dividend");
  std::vector<mpz_class> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  std::vector<mpz_class> q(r.size() - dg);
  for (std::size_t i = r.size(); i-- > dg;) {
    if (!mpz_divisible_p(r[i].get_mpz_t(), gc.back().get_mpz_t())) {
      throw Error("exact_div: divisor does not divide dividend");
    }
    mpz_class coef;
    mpz_divexact(coef.get_mpz_t(), r[i].get_mpz_t(), gc.back().get_mpz_t());
    q[i - dg] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) mpz_submul(r[i - dg + j].get_mpz_t(), coef.get_mpz_t(), gc[j].get_mpz_t());
  }
  for (std::size_t i = 0; i < dg; ++i) {
    if (r[i] != 0) throw Error("exact_div: divisor does not divide dividend");
  }
  return IntPoly(std::move(q));
}

bool divides(const IntPoly& g, const IntPoly& f) {
  try {
    exact_div(f, g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  IntPoly x = primitive_part(a), y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    // pseudo-remainder of x by y
    std::vector<mpz_class> r = x.coeffs();
    const auto& yc = y.coeffs();
    const std::size_t dy = yc.size() - 1;
    const mpz_class& lc = yc.back();
    for (std::size_t i = r.size(); i-- > dy;) {
      const mpz_class top = r[i];
      for (auto& c : r) c *= lc;
      for (std::size_t j = 0; j <= dy; ++j) mpz_submul(r[i - dy + j].get_mpz_t(), top.get_mpz_t(), yc[j].get_mpz_t());
    }
    r.resize(dy);
    IntPoly rem = primitive_part(IntPoly(std::move(r)));
    x = std::move(y);
    y = std::move(rem);
  }
  return primitive_part(x);
}

IntPoly squarefree_part(const IntPoly& f) {
  if (f.is_zero()) throw Error("squarefree part of zero");
  if (f.degree() < 1) return IntPoly::constant(1);
  const IntPoly pf = primitive_part(f);
  const IntPoly g = gcd(pf, derivative(pf));
  return primitive_part(exact_div(pf, g));
}

unsigned lift_exponent(std::uint64_t p, const mpz_class& bound) {
  const mpz_class target = 2 * bound;
  mpz_class pk = static_cast<unsigned long>(p);
  unsigned k = 1;
  while (pk <= target) {
    pk *= static_cast<unsigned long>(p);
    ++k;
  }
  return k;
}

std::vector<IntPoly> hensel_lift_basis(const IntPoly& s, const std::vector<FieldPoly>& basis,
                                       const mpz_class& bound) {
  if (basis.empty()) throw Error("hensel lifting: empty basis");
  if (!s.is_monic()) throw Error("hensel lifting: S must be monic");
  const PrimeField& F = basis.front().field();
  FieldPoly prod = FieldPoly::constant(F, 1);
  for (const auto& b : basis) {
    if (!b.is_monic()) throw Error("hensel lifting: basis elements must be monic");
    prod = prod * b;
  }
  if (!(prod == s.reduce(F))) throw Error("hensel lifting: basis does not multiply to S mod p");
  const unsigned k = lift_exponent(F.modulus(), bound);
  mpz_class target;
  mpz_ui_pow_ui(target.get_mpz_t(), static_cast<unsigned long>(F.modulus()), k);
  std::vector<IntPoly> out(basis.size());
  lift_tree(s.mod(target), basis, 0, basis.size(), target, out);
  for (auto& g : out) g = g.symmetric_mod(target);
  return out;
}

void CrtAccumulator::add(const FieldPoly& residue) {
  const mpz_class p(static_cast<unsigned long>(residue.field().modulus()));
  if (modulus_ == 0) {
    modulus_ = p;
    degree_ = residue.degree();
    residues_.clear();
    for (Word w : residue.coeffs()) residues_.emplace_back(static_cast<unsigned long>(w));
    return;
  }
  if (residue.degree() != degree_) {
    throw BadPrime("CRT degree mismatch: residue mod " + p.get_str() + " has degree " +
                   std::to_string(residue.degree()) + ", expected " + std::to_string(degree_));
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), mpz_class(modulus_ % p).get_mpz_t(), p.get_mpz_t());
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    const mpz_class r2 = static_cast<unsigned long>(residue.coeff(i));
    mpz_class t = mod_nonneg((r2 - residues_[i]) * inv, p);
    residues_[i] += modulus_ * t;
  }
  modulus_ *= p;
}

IntPoly CrtAccumulator::value() const { return IntPoly(residues_).symmetric_mod(modulus_); }

IntPoly crt_combine(const std::vector<FieldPoly>& residues) {
  if (residues.empty()) throw Error("crt_combine: no residues");
  std::map<int, std::size_t> counts;
  for (const auto& r : residues) {
    if (!r.is_monic()) throw Error("crt_combine: residues must be monic");
    ++counts[r.degree()];
  }
  if (counts.size() > 1) {
    int majority = counts.begin()->first;
    for (auto [deg, cnt] : counts) {
      if (cnt > counts[majority] || (cnt == counts[majority] && deg > majority)) majority = deg;
    }
    std::string bad;
    for (const auto& r : residues) {
      if (r.degree() != majority) bad += (bad.empty() ? "" : ", ") + std::to_string(r.field().modulus());
    }
    throw BadPrime("crt_combine: degree mismatch; minority-degree moduli: " + bad);
  }
  CrtAccumulator acc;
  for (const auto& r : residues) acc.add(r);
  return acc.value();
}

}  // namespace bbc
