#pragma once

// Dense univariate polynomials over GF(p): arithmetic, squarefree
// decomposition, Cantor-Zassenhaus factorization and gcd-free bases.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bbc/ff.hpp"

namespace bbc {

/// Coefficients constant-term first, no trailing zeros. The zero polynomial
/// has no coefficients and degree -1.
class FieldPoly {
 public:
  explicit FieldPoly(const PrimeField& f) : field_(f) {}
  FieldPoly(const PrimeField& f, std::vector<Word> coeffs);
  /// Coefficients given as signed integers, reduced into the field.
  static FieldPoly from_ints(const PrimeField& f, const std::vector<std::int64_t>& coeffs);
  static FieldPoly constant(const PrimeField& f, Word c);
  static FieldPoly x(const PrimeField& f);
  /// X - a
  static FieldPoly linear(const PrimeField& f, Word a);

  const PrimeField& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Word leading() const { return c_.empty() ? 0 : c_.back(); }
  Word coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Word>& coeffs() const { return c_; }

  /// Horner evaluation, deg(f) multiply-adds.
  Word operator()(Word x) const;

  FieldPoly& operator+=(const FieldPoly& o);
  FieldPoly& operator-=(const FieldPoly& o);
  FieldPoly operator-() const;
  FieldPoly scaled(Word s) const;
  FieldPoly monic() const;
  /// Multiply by X^k.
  FieldPoly shifted(std::size_t k) const;

  friend FieldPoly operator+(FieldPoly a, const FieldPoly& b) { return a += b; }
  friend FieldPoly operator-(FieldPoly a, const FieldPoly& b) { return a -= b; }
  friend FieldPoly operator*(const FieldPoly& a, const FieldPoly& b);
  friend bool operator==(const FieldPoly& a, const FieldPoly& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

  /// Canonical text form `c0 + c1*X + ... + cd*X^d`, symmetric-range coefficients.
  std::string to_string() const;

 private:
  void normalize();

  PrimeField field_;
  std::vector<Word> c_;
};

/// Multiplication switches from schoolbook to Karatsuba at this operand size.
void set_karatsuba_threshold(std::size_t t);
std::size_t karatsuba_threshold();

/// Quotient and remainder, deg(rem) < deg(divisor). Throws DivisionByZero.
std::pair<FieldPoly, FieldPoly> divrem(const FieldPoly& f, const FieldPoly& g);
FieldPoly operator%(const FieldPoly& f, const FieldPoly& g);
/// Exact quotient; throws Error if g does not divide f.
FieldPoly exact_div(const FieldPoly& f, const FieldPoly& g);
bool divides(const FieldPoly& g, const FieldPoly& f);

/// Monic gcd (zero only when both inputs are zero).
FieldPoly gcd(const FieldPoly& a, const FieldPoly& b);
FieldPoly lcm(const FieldPoly& a, const FieldPoly& b);

struct ExtendedGcd {
  FieldPoly g, s, t;  // s*a + t*b = g, g monic
};
ExtendedGcd xgcd(const FieldPoly& a, const FieldPoly& b);

FieldPoly derivative(const FieldPoly& f);
FieldPoly pow(const FieldPoly& f, unsigned e);
/// base^e mod m.
FieldPoly powmod(const FieldPoly& base, const mpz_class& e, const FieldPoly& m);

/// Largest k with g^k | f (g non-constant, f nonzero).
unsigned multiplicity_in(const FieldPoly& g, const FieldPoly& f);

struct FactorPower {
  FieldPoly factor;
  unsigned multiplicity;
};

/// Yun decomposition f = lc * prod g_i^i with g_i squarefree and coprime.
/// Requires p > deg(f).
std::vector<FactorPower> squarefree_decomposition(const FieldPoly& f);

/// Monic product of the distinct irreducible factors. Requires p > deg(f).
FieldPoly squarefree_part(const FieldPoly& f);

struct Factorization {
  Word unit = 1;
  std::vector<FactorPower> factors;  // monic irreducible, pairwise distinct

  FieldPoly expand(const PrimeField& f) const;
};

/// Canonical ordering: degree, then coefficients from X^{d-1} down compared
/// by (|c|, sign) in the symmetric range.
bool canonical_less(const FieldPoly& a, const FieldPoly& b);

/// Complete factorization into monic irreducibles (squarefree split,
/// distinct-degree split, Cantor-Zassenhaus equal-degree split). Factors are
/// returned in canonical order.
Factorization factor(const FieldPoly& f, Rng& rng);

/// Rabin-style irreducibility test, independent of factor().
bool is_irreducible(const FieldPoly& f);

/// Pairwise coprime monic polynomials and the exponents expressing a target.
struct GcdFreeBasis {
  std::vector<FieldPoly> elements;
  std::vector<unsigned> exponents;
};

/// Coprime refinement of `polys`, with exponents such that
/// prod elements^exponents == target. Throws BadPrime if the target is not
/// expressible over the basis.
GcdFreeBasis gcd_free_basis(const std::vector<FieldPoly>& polys, const FieldPoly& target);

}  // namespace bbc
