#include "bbc/ff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bbc {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is exact for n < 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 2; r * r <= n; r += (r == 2 ? 1 : 2)) {
    if (n % r == 0) {
      out.push_back(r);
      while (n % r == 0) n /= r;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

std::uint64_t random_prime(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) throw InputError("random_prime: empty range");
  std::uniform_int_distribution<std::uint64_t> dist(lo, hi - 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::uint64_t c = dist(rng);
    if (is_prime(c)) return c;
  }
  std::uint64_t c = next_prime(lo);
  if (c >= hi) throw InputError("random_prime: no prime in range");
  return c;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p > kMaxModulus || !is_prime(p)) {
    throw InputError("field modulus must be an odd prime <= 2^31, got " + std::to_string(p));
  }
}

Word PrimeField::inv(Word a) const {
  if (a % p_ == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p_) + ")");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a % p_);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<Word>(t);
}

Word PrimeField::pow(Word a, std::uint64_t e) const {
  Word r = 1;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Word PrimeField::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += static_cast<std::int64_t>(p_);
  return static_cast<Word>(m);
}

Word PrimeField::random(Rng& rng) const {
  return std::uniform_int_distribution<Word>(0, p_ - 1)(rng);
}

Word PrimeField::random_nonzero(Rng& rng) const {
  return std::uniform_int_distribution<Word>(1, p_ - 1)(rng);
}

PrimeFieldElem PrimeFieldElem::operator+(const PrimeFieldElem& o) const {
  check(o);
  return {field_, field_.add(value_, o.value_)};
}
PrimeFieldElem PrimeFieldElem::operator-(const PrimeFieldElem& o) const {
  check(o);
  return {field_, field_.sub(value_, o.value_)};
}
PrimeFieldElem PrimeFieldElem::operator*(const PrimeFieldElem& o) const {
  check(o);
  return {field_, field_.mul(value_, o.value_)};
}
PrimeFieldElem PrimeFieldElem::operator/(const PrimeFieldElem& o) const {
  check(o);
  return {field_, field_.div(value_, o.value_)};
}
PrimeFieldElem PrimeFieldElem::inv() const { return {field_, field_.inv(value_)}; }

bool is_generator(const PrimeField& f, Word a) {
  a %= f.modulus();
  if (a == 0) return false;
  const std::uint64_t order = f.modulus() - 1;
  for (std::uint64_t r : prime_factors(order)) {
    if (f.pow(a, order / r) == 1) return false;
  }
  return true;
}

Word find_generator(const PrimeField& f) {
  for (Word g = 2; g < f.modulus(); ++g) {
    if (is_generator(f, g)) return g;
  }
  // q = 3: 2 is found above; unreachable for odd primes.
  throw Error("no generator found");
}

DlogContext::DlogContext(const PrimeField& f) : DlogContext(f, find_generator(f)) {}

DlogContext::DlogContext(const PrimeField& f, Word generator) : field_(f), g_(generator) {
  if (!is_generator(f, g_)) throw InputError("dlog context: element is not a generator");
  build();
}

void DlogContext::build() {
  const std::uint64_t q = field_.modulus();
  if (q < kTableLimit) {
    table_.assign(q, 0);
    Word x = 1;
    for (std::uint64_t e = 0; e + 1 < q; ++e) {
      table_[x] = static_cast<std::uint32_t>(e);
      x = field_.mul(x, g_);
    }
    return;
  }
  giant_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(q - 1))));
  baby_.reserve(giant_ * 2);
  Word x = 1;
  for (std::uint64_t j = 0; j < giant_; ++j) {
    baby_.emplace(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(j));
    x = field_.mul(x, g_);
  }
  giant_factor_ = field_.inv(x);
}

std::uint64_t DlogContext::log(Word a) const {
  a %= field_.modulus();
  if (a == 0) throw DivisionByZero("log of zero");
  if (!table_.empty()) return table_[a];
  Word y = a;
  for (std::uint64_t i = 0; i <= giant_; ++i) {
    auto it = baby_.find(static_cast<std::uint32_t>(y));
    if (it != baby_.end()) return (i * giant_ + it->second) % (field_.modulus() - 1);
    y = field_.mul(y, giant_factor_);
  }
  throw Error("dlog: element not in the cyclic group (unreachable for a generator)");
}

IndexCalculusField find_index_calculus_field(std::uint64_t n) {
  for (std::uint64_t p = next_prime(n + 1); p < kMaxModulus; p = next_prime(p + 1)) {
    for (std::uint64_t lambda = 1;; ++lambda) {
      const std::uint64_t q = 1 + lambda * p;
      if (q > kMaxModulus) break;
      if (q > 2 * n && q >= 3 && is_prime(q)) return {q, p};
    }
  }
  throw Error("no index-calculus field below 2^31 for n = " + std::to_string(n));
}

IndexCalculusField find_index_calculus_field(std::uint64_t n, Rng& rng) {
  const std::uint64_t lo = std::max<std::uint64_t>(n + 1, std::uint64_t{1} << 20);
  const std::uint64_t hi = 2 * lo;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::uint64_t p = random_prime(rng, lo, hi);
    const std::uint64_t max_lambda = (kMaxModulus - 1) / p;
    if (max_lambda < 2) break;
    std::uniform_int_distribution<std::uint64_t> pick(1, max_lambda / 2);
    for (int tries = 0; tries < 256; ++tries) {
      const std::uint64_t lambda = 2 * pick(rng);
      const std::uint64_t q = 1 + lambda * p;
      if (q <= kMaxModulus && q > 2 * n && is_prime(q)) return {q, p};
    }
  }
  return find_index_calculus_field(n);
}

std::optional<std::uint64_t> index_calculus_prime(std::uint64_t q, std::uint64_t n) {
  auto factors = prime_factors(q - 1);
  if (factors.empty() || factors.back() <= n) return std::nullopt;
  return factors.back();
}

}  // namespace bbc
