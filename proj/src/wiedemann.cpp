#include "bbc/wiedemann.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

namespace bbc {

namespace {

Vector random_vector(const PrimeField& f, std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

Word dot(const PrimeField& f, const Vector& a, const Vector& b) {
  Word acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.mul_add(a[i], b[i], acc);
  return acc;
}

double log2_modulus(const PrimeField& f) { return std::log2(static_cast<double>(f.modulus())); }

unsigned certify_count(const PrimeField& f, const WiedemannOptions& opt) {
  if (opt.certify_vectors) return opt.certify_vectors;
  return std::max(1u, static_cast<unsigned>(std::ceil(30.0 / log2_modulus(f))));
}

// Success probability per preconditioned attempt is roughly 1 - n/p; repeat
// until the residual failure chance is below 2^-30.
unsigned repetitions_for(const PrimeField& f, std::size_t n, unsigned requested, unsigned base) {
  if (requested) return requested;
  const double p = static_cast<double>(f.modulus());
  const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  if (p > 2.0 * nn * nn) return base;
  const double fail = std::min(0.9, 2.0 * nn / p);
  const unsigned reps = static_cast<unsigned>(std::ceil(-30.0 / std::log2(fail)));
  return std::clamp(reps, base, 40u);
}

FieldPoly sequence_minpoly(const BlackBox& a, Rng& rng, const WiedemannOptions& opt) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dimension();
  Vector u = random_vector(f, n, rng);
  Vector v = random_vector(f, n, rng);
  Vector next(n);
  BerlekampMassey bm(f);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    bm.push(dot(f, u, v));
    if (opt.early_termination && bm.stable_terms() >= 2 * bm.complexity() + 10) break;
    if (i + 1 < 2 * n) {
      a.apply(v, next);
      std::swap(v, next);
    }
  }
  return bm.minpoly();
}

}  // namespace

BerlekampMassey::BerlekampMassey(const PrimeField& f) : field_(f), c_{1}, b_{1} {}

void BerlekampMassey::push(Word s) {
  seq_.push_back(s % field_.modulus());
  const std::size_t n = seq_.size() - 1;
  Word d = seq_[n];
  for (std::size_t i = 1; i <= length_ && i < c_.size(); ++i) d = field_.mul_add(c_[i], seq_[n - i], d);
  if (d == 0) {
    ++shift_;
    return;
  }
  const Word coef = field_.div(d, last_disc_);
  std::vector<Word> t = c_;
  if (c_.size() < b_.size() + shift_) c_.resize(b_.size() + shift_, 0);
  for (std::size_t i = 0; i < b_.size(); ++i) c_[i + shift_] = field_.sub(c_[i + shift_], field_.mul(coef, b_[i]));
  if (2 * length_ <= n) {
    length_ = n + 1 - length_;
    b_ = std::move(t);
    last_disc_ = d;
    shift_ = 1;
    last_change_ = n;
  } else {
    ++shift_;
  }
}

FieldPoly BerlekampMassey::minpoly() const {
  std::vector<Word> rev(length_ + 1, 0);
  for (std::size_t i = 0; i <= length_; ++i) rev[length_ - i] = i < c_.size() ? c_[i] : 0;
  return FieldPoly(field_, std::move(rev));
}

FieldPoly berlekamp_massey(const PrimeField& f, std::span<const Word> seq) {
  BerlekampMassey bm(f);
  for (Word s : seq) bm.push(s);
  return bm.minpoly();
}

bool annihilates(const BlackBox& a, const FieldPoly& p, std::span<const Word> v) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dimension();
  const auto& c = p.coeffs();
  if (c.empty()) return true;
  Vector acc(n), tmp(n);
  for (std::size_t j = 0; j < n; ++j) acc[j] = f.mul(c.back(), v[j]);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    a.apply(acc, tmp);
    for (std::size_t j = 0; j < n; ++j) acc[j] = f.mul_add(c[i], v[j], tmp[j]);
  }
  return std::all_of(acc.begin(), acc.end(), [](Word x) { return x == 0; });
}

FieldPoly wiedemann_minpoly(const BlackBox& a, Rng& rng, const WiedemannOptions& opt) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dimension();
  FieldPoly result = FieldPoly::constant(f, 1);
  if (n == 0) return result;
  const unsigned checks = certify_count(f, opt);
  unsigned pending = std::max(1u, opt.confidence_rounds);
  unsigned extra = 0;
  for (;;) {
    for (unsigned r = 0; r < pending && result.degree() < static_cast<int>(n); ++r) {
      result = lcm(result, sequence_minpoly(a, rng, opt));
    }
    // A degree-n divisor of the minimal polynomial is the minimal polynomial.
    if (result.degree() == static_cast<int>(n) || !opt.certify) return result;
    bool ok = true;
    for (unsigned c = 0; c < checks && ok; ++c) ok = annihilates(a, result, random_vector(f, n, rng));
    if (ok) return result;
    if (++extra > opt.max_extra_rounds) throw NotCertified("minpoly not certified");
    pending = 1;
  }
}

std::size_t rank_blackbox(const BlackBox& a, Rng& rng, const WiedemannOptions& opt) {
  const std::size_t n = a.dimension();
  if (n == 0) return 0;
  const PrimeField& f = a.field();
  // Non-owning handle: the preconditioned product only lives inside this call.
  BlackBoxPtr base(std::shared_ptr<const BlackBox>(), &a);
  const unsigned reps = repetitions_for(f, n, opt.rank_repetitions, 2);
  WiedemannOptions inner = opt;
  inner.certify = false;
  std::size_t best = 0;
  for (unsigned r = 0; r < reps; ++r) {
    auto d1 = DiagonalOperator::random_nonsingular(f, n, rng);
    auto d2 = DiagonalOperator::random_nonsingular(f, n, rng);
    ProductOperator pre({d1, std::make_shared<TransposeOperator>(base), d2, base, d1});
    const FieldPoly m = wiedemann_minpoly(pre, rng, inner);
    std::size_t est = static_cast<std::size_t>(m.degree());
    if (m.coeff(0) == 0) --est;
    best = std::max(best, est);
    if (best == n) break;
  }
  return best;
}

Word det_blackbox(const BlackBox& a, Rng& rng, const WiedemannOptions& opt) {
  const std::size_t n = a.dimension();
  const PrimeField& f = a.field();
  if (n == 0) return 1;
  BlackBoxPtr base(std::shared_ptr<const BlackBox>(), &a);
  const unsigned retries = repetitions_for(f, n, opt.det_retries, 4);
  WiedemannOptions inner = opt;
  inner.certify = false;
  for (unsigned r = 0; r < retries; ++r) {
    auto d = DiagonalOperator::random_nonsingular(f, n, rng);
    ProductOperator pre({d, base});
    const FieldPoly m = wiedemann_minpoly(pre, rng, inner);
    // Every factor found divides the true minimal polynomial, so X | m proves singularity.
    if (m.coeff(0) == 0) return 0;
    if (m.degree() == static_cast<int>(n)) {
      Word det_pre = m.coeff(0);
      if (n % 2 == 1) det_pre = f.neg(det_pre);
      return f.div(det_pre, d->determinant());
    }
  }
  throw NotCertified("det not certified");
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Word trace(const BlackBox& a) {
  if (auto t = a.diagonal_trace()) return *t;
  return trace_generic(a);
}

Word trace_generic(const BlackBox& a) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dimension();
  Vector e(n, 0), out(n);
  Word t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = 1;
    a.apply(e, out);
    t = f.add(t, out[i]);
    e[i] = 0;
  }
  return t;
}

}  // namespace bbc
