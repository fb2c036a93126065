#include "bbc/integer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace bbc {

IntegerMatrix::IntegerMatrix(std::size_t n, std::vector<IntTriple> entries) : n_(n), norm_(0) {
  std::erase_if(entries, [](const IntTriple& t) { return t.value == 0; });
  std::sort(entries.begin(), entries.end(), [](const IntTriple& a, const IntTriple& b) {
    return std::pair(a.row, a.col) < std::pair(b.row, b.col);
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& t = entries[i];
    if (t.row >= n || t.col >= n)
      throw InputError("entry (" + std::to_string(t.row + 1) + ", " + std::to_string(t.col + 1) + ") out of range");
    if (i > 0 && entries[i - 1].row == t.row && entries[i - 1].col == t.col)
      throw InputError("duplicate entry (" + std::to_string(t.row + 1) + ", " + std::to_string(t.col + 1) + ")");
    mpz_class a = abs(t.value);
    if (a > norm_) norm_ = a;
  }
  entries_ = std::move(entries);
}

mpz_class IntegerMatrix::trace() const {
  mpz_class t = 0;
  for (const auto& e : entries_)
    if (e.row == e.col) t += e.value;
  return t;
}

std::shared_ptr<const SparseMatrix> IntegerMatrix::reduce(const PrimeField& f) const {
  std::vector<Triple> t;
  t.reserve(entries_.size());
  const mpz_class p = static_cast<unsigned long>(f.modulus());
  for (const auto& e : entries_) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), e.value.get_mpz_t(), p.get_mpz_t());
    t.push_back({e.row, e.col, static_cast<Word>(r.get_ui())});
  }
  return std::make_shared<SparseMatrix>(f, n_, std::move(t));
}

unsigned minpoly_coeff_bound(std::size_t n, const mpz_class& norm) {
  const double nn = static_cast<double>(n);
  const double ln = norm > 0 ? std::log2(norm.get_d()) : 0.0;
  const double bits = (nn / 2.0) * (std::log2(nn) + 2.0 * ln + 0.212);
  return static_cast<unsigned>(std::ceil(bits - 1e-9));
}

mpz_class charpoly_coeff_bound(std::size_t n, const mpz_class& norm) {
  // Evaluate (1 + sqrt(n a^2))^n in binary floating point with ample guard bits.
  const double est_bits = static_cast<double>(n) * std::log2(1.0 + std::sqrt(static_cast<double>(n)) *
                                                                        std::max(1.0, norm.get_d()));
  const auto prec = static_cast<mp_bitcnt_t>(est_bits + 128);
  mpf_class x(0, prec), r(1, prec);
  mpz_class na2 = norm * norm * static_cast<unsigned long>(n);
  x = na2;
  x = sqrt(x);
  x += 1;
  mpf_pow_ui(r.get_mpf_t(), x.get_mpf_t(), static_cast<unsigned long>(n));
  mpf_class c(0, prec);
  mpf_ceil(c.get_mpf_t(), r.get_mpf_t());
  return mpz_class(c);
}

LiftPlan make_lift_plan(std::uint64_t p, const mpz_class& bound) { return {p, lift_exponent(p, bound), bound}; }

namespace {

void note(ExplainLog* log, const std::string& kind, nlohmann::json fields = nlohmann::json::object()) {
  if (log) log->event(kind, std::move(fields));
}

std::uint64_t fresh_prime(Rng& rng, const IntegerOptions& opt, std::vector<std::uint64_t>& used) {
  for (;;) {
    const std::uint64_t p = random_prime(rng, opt.prime_lo, opt.prime_hi);
    if (std::find(used.begin(), used.end(), p) == used.end()) {
      used.push_back(p);
      return p;
    }
  }
}

}  // namespace

IntPoly integer_minpoly(const IntegerMatrix& a, Rng& rng, const IntegerOptions& opt, ExplainLog* log) {
  const std::size_t n = a.dimension();
  if (n == 0) return IntPoly::constant(1);
  const auto wopt = opt.field.wiedemann();
  const unsigned bound_bits = minpoly_coeff_bound(n, std::max(a.norm(), mpz_class(1)));
  std::vector<std::uint64_t> used;
  CrtAccumulator acc;
  IntPoly last;
  unsigned stable = 0, discarded = 0;
  const std::size_t max_primes = bound_bits / 29 + 24;
  for (std::size_t round = 0; round < max_primes; ++round) {
    const std::uint64_t p = fresh_prime(rng, opt, used);
    const PrimeField f(p);
    const FieldPoly m = wiedemann_minpoly(*a.reduce(f), rng, wopt);
    // The minimal polynomial mod p divides the reduction of the integer one,
    // so a larger degree marks every earlier prime as unlucky.
    if (!acc.empty() && m.degree() < acc.degree()) {
      ++discarded;
      note(log, "minpoly_prime", {{"p", p}, {"degree", m.degree()}, {"status", "discarded"}});
      continue;
    }
    if (!acc.empty() && m.degree() > acc.degree()) {
      note(log, "minpoly_prime", {{"p", p}, {"degree", m.degree()}, {"status", "restart"}});
      acc = CrtAccumulator();
      stable = 0;
    }
    acc.add(m);
    IntPoly v = acc.value();
    stable = (v == last) ? stable + 1 : 0;
    last = std::move(v);
    const bool bound_reached = mpz_sizeinbase(acc.modulus().get_mpz_t(), 2) > bound_bits + 1;
    if (stable < opt.stabilization_primes && !bound_reached) continue;
    // One independent verification prime.
    const std::uint64_t pv = fresh_prime(rng, opt, used);
    const PrimeField fv(pv);
    const FieldPoly mv = wiedemann_minpoly(*a.reduce(fv), rng, wopt);
    const bool agree = mv == last.reduce(fv);
    note(log, "minpoly_crt", {{"primes", round + 1},
                              {"degree", last.degree()},
                              {"modulus_bits", mpz_sizeinbase(acc.modulus().get_mpz_t(), 2)},
                              {"verified", agree},
                              {"discarded", discarded}});
    if (agree) return last;
    if (mv.degree() >= acc.degree()) {
      if (mv.degree() > acc.degree()) acc = CrtAccumulator();
      acc.add(mv);
      last = acc.value();
    }
    stable = 0;
  }
  throw NotCertified("integer minimal polynomial did not stabilize");
}

IntPoly lift_charpoly(const IntegerMatrix& a, const IntPoly& minpoly, std::uint64_t p, const FieldPoly& cp) {
  const std::size_t n = a.dimension();
  const PrimeField f(p);
  if (!minpoly.is_monic()) throw Error("integer minimal polynomial must be monic");
  if (cp.degree() != static_cast<int>(n) || !cp.is_monic()) throw BadPrime("charpoly mod p has wrong degree");
  const IntPoly s = squarefree_part(minpoly);
  const FieldPoly s_bar = s.reduce(f);
  const FieldPoly m_bar = minpoly.reduce(f);
  if (s_bar.degree() != s.degree() || m_bar.degree() != minpoly.degree())
    throw BadPrime("reduction mod p drops degree");
  if (!gcd(s_bar, derivative(s_bar)).is_one()) throw BadPrime("squarefree part not squarefree mod p");
  const GcdFreeBasis basis = gcd_free_basis({s_bar, m_bar, cp}, cp);
  FieldPoly prod = FieldPoly::constant(f, 1);
  for (const auto& g : basis.elements) prod = prod * g;
  if (!(prod == s_bar)) throw BadPrime("gcd-free basis does not factor the squarefree part");
  const mpz_class bound = charpoly_coeff_bound(n, std::max(a.norm(), mpz_class(1)));
  const LiftPlan plan = make_lift_plan(p, bound);
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), plan.k);
  const std::vector<IntPoly> lifted = hensel_lift_basis(s, basis.elements, bound);
  IntPoly result = IntPoly::constant(1);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    for (unsigned e = 0; e < basis.exponents[i]; ++e) result = (result * lifted[i]).symmetric_mod(pk);
  }
  if (result.degree() != static_cast<int>(n) || !result.is_monic()) throw BadPrime("lifted product has wrong degree");
  return result;
}

IntPoly integer_charpoly(const IntegerMatrix& a, Rng& rng, const IntegerOptions& opt, ExplainLog* log) {
  const std::size_t n = a.dimension();
  if (n == 0) return IntPoly::constant(1);
  const IntPoly minz = integer_minpoly(a, rng, opt, log);
  const mpz_class tr = a.trace();
  auto check = [&](const IntPoly& c) {
    return c.degree() == static_cast<int>(n) && c.is_monic() && c.coeff(n - 1) == -tr && divides(minz, c);
  };
  if (minz.degree() == static_cast<int>(n)) {
    if (!check(minz)) throw NotCertified("integer minimal polynomial fails the trace identity");
    return minz;
  }
  std::vector<std::uint64_t> used;
  std::vector<std::string> diagnostics;
  const auto wopt = opt.field.wiedemann();
  const bool needs_ic = opt.field.method == Method::Index || opt.field.method == Method::Hybrid;
  for (unsigned bad = 0; bad < opt.max_bad_primes;) {
    const std::uint64_t p = fresh_prime(rng, opt, used);
    if (needs_ic && !index_calculus_prime(p, n)) continue;
    const PrimeField f(p);
    const auto ap = a.reduce(f);
    try {
      const FieldPoly mp = wiedemann_minpoly(*ap, rng, wopt);
      if (!(mp == minz.reduce(f))) throw BadPrime("minpoly mod p differs from the reduced integer minpoly");
      const CharpolyResult r = blackbox_charpoly_field(ap, opt.field, rng, log, &mp);
      IntPoly c = lift_charpoly(a, minz, p, r.charpoly);
      if (!check(c)) throw BadPrime("lifted charpoly fails degree, trace or divisibility checks");
      note(log, "integer_charpoly", {{"p", p}, {"method", method_name(r.method)}, {"bad_primes", bad}});
      return c;
    } catch (const BadPrime& e) {
      ++bad;
      diagnostics.push_back(std::to_string(p) + ": " + e.what());
      note(log, "bad_prime", {{"p", p}, {"what", e.what()}});
    }
  }
  std::string msg = "integer charpoly: " + std::to_string(opt.max_bad_primes) + " bad primes";
  for (const auto& d : diagnostics) msg += "; " + d;
  throw BadPrime(msg);
}

}  // namespace bbc
