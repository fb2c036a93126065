#include <doctest.h>

#include "bbc/oracle.hpp"
#include "support.hpp"

using namespace bbc;
using bbc::testing::poly;

namespace {
// Charpoly via det(lambda I - A) at n+1 points and Lagrange interpolation.
FieldPoly interpolated_charpoly(const DenseMatrix& a) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dimension();
  FieldPoly result(f);
  for (std::size_t i = 0; i <= n; ++i) {
    DenseMatrix s = a;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) s(r, c) = f.sub(r == c ? i : 0, a(r, c));
    FieldPoly basis = FieldPoly::constant(f, 1);
    Word denom = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      basis = basis * FieldPoly::linear(f, j);
      denom = f.mul(denom, f.sub(i, j));
    }
    result += basis.scaled(f.div(dense_det(s), denom));
  }
  return result;
}
}  // namespace

TEST_CASE("dense charpoly agrees with interpolated determinants") {
  Rng rng(1);
  const PrimeField f(10007);
  for (int t = 0; t < 10; ++t) {
    const auto a = DenseMatrix::from_sparse(random_sparse(f, 3 + rng() % 15, 2, rng));
    CHECK(dense_charpoly(a) == interpolated_charpoly(a));
  }
}

TEST_CASE("dense oracle examples") {
  const PrimeField f(7);
  const auto d = DenseMatrix::from_sparse(SparseMatrix::diagonal(f, {1, 1, 2}));
  CHECK(dense_charpoly(d) == poly(f, {-2, 5, -4, 1}));
  CHECK(dense_minpoly(d) == poly(f, {2, -3, 1}));
  CHECK(dense_rank(d) == 3);
  CHECK(dense_det(d) == 2);
  const auto inv = dense_invariant_factors(d);
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == poly(f, {2, -3, 1}));
  CHECK(inv[1] == poly(f, {-1, 1}));
}

TEST_CASE("invariant factors multiply to the charpoly and form a divisibility chain") {
  Rng rng(2);
  const PrimeField f(101);
  const auto x1 = poly(f, {-1, 1}), q = poly(f, {1, 0, 1});
  const auto b = block_diagonal({build_block_jordan(x1, 2), build_block_jordan(x1, 1), build_companion(q),
                                 build_block_jordan(q, 2)});
  const auto a = DenseMatrix::from_blackbox(*bbc::testing::conjugated(b, rng));
  const auto inv = dense_invariant_factors(a);
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == pow(x1, 2) * pow(q, 2));
  CHECK(inv[1] == x1 * q);
  CHECK(inv[0] == dense_minpoly(a));
  CHECK(inv[0] * inv[1] == dense_charpoly(a));
}

TEST_CASE("dense integer charpoly") {
  const auto d = bbc::testing::integer_diag({1, 1, 2});
  CHECK(dense_integer_charpoly(d) == IntPoly::from_ints({-2, 5, -4, 1}));
  const auto big = bbc::testing::integer_diag({1000000007, -999999937, 3});
  const IntPoly expect =
      IntPoly::from_ints({-1000000007, 1}) * IntPoly::from_ints({999999937, 1}) * IntPoly::from_ints({-3, 1});
  CHECK(dense_integer_charpoly(big) == expect);
}
