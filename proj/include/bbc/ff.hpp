#pragma once

// Prime-field arithmetic, primality, generators and discrete logarithms.

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bbc/error.hpp"

namespace bbc {

/// Raw residue in [0, p). Vectors and polynomials store these; the field is
/// carried by the container.
using Word = std::uint64_t;

/// Randomness source threaded explicitly through every randomized routine.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// Uniformly drawn prime in [lo, hi). Throws InputError if the range has none.
std::uint64_t random_prime(Rng& rng, std::uint64_t lo, std::uint64_t hi);

class PrimeField {
 public:
  /// Throws InputError unless p is an odd prime not exceeding 2^31.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Word add(Word a, Word b) const {
    Word s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Word sub(Word a, Word b) const { return a >= b ? a - b : a + p_ - b; }
  Word neg(Word a) const { return a == 0 ? 0 : p_ - a; }
  Word mul(Word a, Word b) const { return (a * b) % p_; }
  /// a*b + c
  Word mul_add(Word a, Word b, Word c) const { return (a * b + c) % p_; }
  Word inv(Word a) const;
  Word div(Word a, Word b) const { return mul(a, inv(b)); }
  Word pow(Word a, std::uint64_t e) const;

  Word from_int(std::int64_t v) const;
  Word from_uint(std::uint64_t v) const { return v % p_; }
  /// Representative in (-p/2, p/2].
  std::int64_t symmetric(Word a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_)
                      : static_cast<std::int64_t>(a);
  }

  Word random(Rng& rng) const;
  Word random_nonzero(Rng& rng) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Field element carrying its field; mixing fields throws FieldMismatch.
class PrimeFieldElem {
 public:
  PrimeFieldElem(const PrimeField& f, Word v) : field_(f), value_(v % f.modulus()) {}
  static PrimeFieldElem from_int(const PrimeField& f, std::int64_t v) {
    return {f, f.from_int(v)};
  }

  Word value() const { return value_; }
  const PrimeField& field() const { return field_; }

  PrimeFieldElem operator+(const PrimeFieldElem& o) const;
  PrimeFieldElem operator-(const PrimeFieldElem& o) const;
  PrimeFieldElem operator*(const PrimeFieldElem& o) const;
  PrimeFieldElem operator/(const PrimeFieldElem& o) const;
  PrimeFieldElem operator-() const { return {field_, field_.neg(value_)}; }
  PrimeFieldElem inv() const;
  PrimeFieldElem pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

  friend bool operator==(const PrimeFieldElem& a, const PrimeFieldElem& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  void check(const PrimeFieldElem& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch();
  }

  PrimeField field_;
  Word value_;
};

/// Multiplicative order of a is q-1. Checks a^((q-1)/r) != 1 for each prime r | q-1.
bool is_generator(const PrimeField& f, Word a);

/// Smallest generator of GF(q)^*.
Word find_generator(const PrimeField& f);

/// Discrete logarithms to a fixed generator. Full table below 2^20 elements,
/// baby-step/giant-step above.
class DlogContext {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

  explicit DlogContext(const PrimeField& f);
  DlogContext(const PrimeField& f, Word generator);

  const PrimeField& field() const { return field_; }
  Word generator() const { return g_; }
  bool tabulated() const { return !table_.empty(); }

  /// Exponent in [0, q-2] with g^result = a. Throws DivisionByZero on a = 0.
  std::uint64_t log(Word a) const;

 private:
  void build();

  PrimeField field_;
  Word g_;
  std::vector<std::uint32_t> table_;
  // baby steps g^j -> j for j < giant_
  std::unordered_map<std::uint32_t, std::uint32_t> baby_;
  std::uint64_t giant_ = 0;
  Word giant_factor_ = 0;  // g^(-giant_)
};

/// Field GF(q) suited to the index-calculus method: q = 1 + lambda*p with
/// p > n prime and q > 2n prime.
struct IndexCalculusField {
  std::uint64_t q;
  std::uint64_t p;
};

/// Smallest such pair: least prime p > n, then least lambda.
IndexCalculusField find_index_calculus_field(std::uint64_t n);

/// Randomized variant: p drawn from a window above max(n, 2^20), q below 2^31.
IndexCalculusField find_index_calculus_field(std::uint64_t n, Rng& rng);

/// Largest prime divisor of q-1 exceeding n, if any.
std::optional<std::uint64_t> index_calculus_prime(std::uint64_t q, std::uint64_t n);

}  // namespace bbc
