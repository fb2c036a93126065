#pragma once

// Characteristic polynomial over Z: CRT minimal polynomial and gcd-free-basis
// Hensel lifting of a modular characteristic polynomial.

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "bbc/adaptive.hpp"
#include "bbc/intpoly.hpp"

namespace bbc {

struct IntTriple {
  std::size_t row;
  std::size_t col;
  mpz_class value;
};

/// Square sparse matrix with arbitrary-precision integer entries.
class IntegerMatrix {
 public:
  /// Zero entries are dropped; duplicates or out-of-range positions throw InputError.
  IntegerMatrix(std::size_t n, std::vector<IntTriple> entries);

  std::size_t dimension() const { return n_; }
  /// Row-major sorted, nonzero entries.
  const std::vector<IntTriple>& entries() const { return entries_; }
  /// max |a_ij| (0 for the zero matrix).
  const mpz_class& norm() const { return norm_; }
  mpz_class trace() const;
  std::shared_ptr<const SparseMatrix> reduce(const PrimeField& f) const;

 private:
  std::size_t n_;
  std::vector<IntTriple> entries_;
  mpz_class norm_;
};

/// ceil((n/2)(log2 n + 2 log2 |A| + 0.212)) bits.
unsigned minpoly_coeff_bound(std::size_t n, const mpz_class& norm);

/// ceil((1 + sqrt(n) |A|)^n), a bound on the charpoly coefficients.
mpz_class charpoly_coeff_bound(std::size_t n, const mpz_class& norm);

struct LiftPlan {
  std::uint64_t p;
  unsigned k;
  mpz_class bound;
};
LiftPlan make_lift_plan(std::uint64_t p, const mpz_class& bound);

struct IntegerOptions {
  AdaptiveConfig field;                  // per-prime field pipeline
  unsigned stabilization_primes = 2;     // unchanged reconstructions before verifying
  unsigned max_bad_primes = 3;
  std::uint64_t prime_lo = std::uint64_t{1} << 30;
  std::uint64_t prime_hi = std::uint64_t{1} << 31;
};

/// Minimal polynomial over Z by CRT over random primes with early termination
/// (stabilization plus one verification prime).
IntPoly integer_minpoly(const IntegerMatrix& a, Rng& rng, const IntegerOptions& opt = {},
                        ExplainLog* log = nullptr);

/// Lift a modular characteristic polynomial through the gcd-free basis of
/// (S mod p, minpoly mod p, charpoly mod p), S the squarefree part of the
/// integer minimal polynomial. Throws BadPrime when p is unlucky.
IntPoly lift_charpoly(const IntegerMatrix& a, const IntPoly& minpoly, std::uint64_t p,
                      const FieldPoly& charpoly_mod_p);

/// Characteristic polynomial over Z.
IntPoly integer_charpoly(const IntegerMatrix& a, Rng& rng, const IntegerOptions& opt = {},
                         ExplainLog* log = nullptr);

}  // namespace bbc
