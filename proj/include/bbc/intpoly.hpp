#pragma once

// Polynomials over Z with GMP coefficients, multifactor Hensel lifting and
// Chinese remaindering.

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bbc/poly.hpp"

namespace bbc {

class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  static IntPoly from_ints(const std::vector<long>& coeffs);
  static IntPoly constant(const mpz_class& c);
  static IntPoly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const mpz_class& leading() const { return c_.back(); }
  mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  const std::vector<mpz_class>& coeffs() const { return c_; }

  mpz_class operator()(const mpz_class& x) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly operator-() const;
  IntPoly scaled(const mpz_class& s) const;

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// Coefficients reduced into GF(p).
  FieldPoly reduce(const PrimeField& f) const;
  /// Symmetric-range lift of a field polynomial.
  static IntPoly lift(const FieldPoly& f);

  /// Coefficients reduced into the symmetric range of m.
  IntPoly symmetric_mod(const mpz_class& m) const;
  /// Coefficients reduced into [0, m).
  IntPoly mod(const mpz_class& m) const;

  /// Canonical text form `c0 + c1*X + ... + cd*X^d`.
  std::string to_string() const;

 private:
  void normalize();
  std::vector<mpz_class> c_;
};

IntPoly pow(const IntPoly& f, unsigned e);
IntPoly derivative(const IntPoly& f);
mpz_class content(const IntPoly& f);
/// f / content(f) with positive leading coefficient.
IntPoly primitive_part(const IntPoly& f);

/// Division by a polynomial with unit leading coefficient (+1 or -1).
std::pair<IntPoly, IntPoly> divrem(const IntPoly& f, const IntPoly& g);
/// Exact quotient over Z; throws Error if g does not divide f.
IntPoly exact_div(const IntPoly& f, const IntPoly& g);
bool divides(const IntPoly& g, const IntPoly& f);

/// Primitive gcd with positive leading coefficient (primitive PRS).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Product of the distinct irreducible factors of a monic f, as f/gcd(f, f').
IntPoly squarefree_part(const IntPoly& f);

/// Lift monic pairwise-coprime factors of S mod p to factors of S mod p^k,
/// k minimal with p^k > 2*bound. Quadratic lifting on a balanced factor tree.
/// Output coefficients are in the symmetric range of p^k, same order as input.
std::vector<IntPoly> hensel_lift_basis(const IntPoly& s, const std::vector<FieldPoly>& basis,
                                       const mpz_class& bound);

/// Smallest k with p^k > 2*bound.
unsigned lift_exponent(std::uint64_t p, const mpz_class& bound);

/// Coefficientwise CRT into the symmetric range of the product of the moduli.
/// Residues must share a degree; otherwise throws BadPrime naming the
/// minority-degree moduli.
IntPoly crt_combine(const std::vector<FieldPoly>& residues);

/// Incremental CRT accumulator over distinct primes.
class CrtAccumulator {
 public:
  /// Add a residue; throws BadPrime on degree mismatch with earlier residues.
  void add(const FieldPoly& residue);
  bool empty() const { return modulus_ == 0; }
  const mpz_class& modulus() const { return modulus_; }
  /// Current symmetric-range reconstruction.
  IntPoly value() const;
  int degree() const { return degree_; }

 private:
  mpz_class modulus_ = 0;
  std::vector<mpz_class> residues_;  // in [0, modulus_)
  int degree_ = -1;
};

}  // namespace bbc
