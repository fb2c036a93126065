#pragma once

// Dense reference algorithms for cross-checking the black-box pipeline.

#include <vector>

#include "bbc/blackbox.hpp"
#include "bbc/integer.hpp"
#include "bbc/intpoly.hpp"
#include "bbc/poly.hpp"

namespace bbc {

/// Row-major n x n matrix over GF(p).
class DenseMatrix {
 public:
  DenseMatrix(const PrimeField& f, std::size_t n) : field_(f), n_(n), a_(n * n, 0) {}
  static DenseMatrix from_blackbox(const BlackBox& a);
  static DenseMatrix from_sparse(const SparseMatrix& a);

  const PrimeField& field() const { return field_; }
  std::size_t dimension() const { return n_; }
  Word& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  Word operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  Vector apply(const Vector& v) const;

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<Word> a_;
};

/// Hessenberg reduction followed by the Hessenberg charpoly recurrence.
FieldPoly dense_charpoly(const DenseMatrix& a);
std::size_t dense_rank(const DenseMatrix& a);
Word dense_det(const DenseMatrix& a);
/// lcm over unit vectors of the Krylov minimal polynomials.
FieldPoly dense_minpoly(const DenseMatrix& a);
/// Non-unit invariant factors f_1, f_2, ... (f_{j+1} | f_j) from the Smith form of XI - A.
std::vector<FieldPoly> dense_invariant_factors(const DenseMatrix& a);
/// CRT of modular dense charpolys up to twice the charpoly coefficient bound.
IntPoly dense_integer_charpoly(const IntegerMatrix& a);

}  // namespace bbc
