#include <doctest.h>

#include "bbc/oracle.hpp"
#include "bbc/wiedemann.hpp"
#include "support.hpp"

using namespace bbc;
using bbc::testing::poly;

namespace {
BlackBoxPtr share(SparseMatrix m) { return std::make_shared<SparseMatrix>(std::move(m)); }
}  // namespace

TEST_CASE("Berlekamp-Massey on known recurrences") {
  const PrimeField f(101);
  // Fibonacci: s_{k+2} = s_{k+1} + s_k -> X^2 - X - 1
  std::vector<Word> fib = {0, 1};
  for (int i = 0; i < 10; ++i) fib.push_back(f.add(fib[fib.size() - 1], fib[fib.size() - 2]));
  CHECK(berlekamp_massey(f, fib) == poly(f, {-1, -1, 1}));
  std::vector<Word> geo = {1};
  for (int i = 0; i < 8; ++i) geo.push_back(f.mul(geo.back(), 5));
  CHECK(berlekamp_massey(f, geo) == poly(f, {-5, 1}));
  CHECK(berlekamp_massey(f, std::vector<Word>(6, 0)).is_one());
  BerlekampMassey bm(f);
  for (Word s : fib) bm.push(s);
  CHECK(bm.complexity() == 2);
  CHECK(bm.terms() == fib.size());
}

TEST_CASE("minimal polynomial examples") {
  Rng rng(1);
  const PrimeField f(101);
  CHECK(wiedemann_minpoly(build_companion(poly(f, {1, 2, 3, 1})), rng) == poly(f, {1, 2, 3, 1}));
  CHECK(wiedemann_minpoly(SparseMatrix::diagonal(f, {1, 1, 2}), rng) == poly(f, {2, -3, 1}));
  CHECK(wiedemann_minpoly(build_block_jordan(poly(f, {-1, 1}), 3), rng) == pow(poly(f, {-1, 1}), 3));
  CHECK(wiedemann_minpoly(SparseMatrix(f, 4, {}), rng) == poly(f, {0, 1}));
}

TEST_CASE("minimal polynomial matches the dense oracle") {
  Rng rng(2);
  for (std::uint64_t p : {3ULL, 101ULL, 65537ULL}) {
    const PrimeField f(p);
    for (int t = 0; t < 15; ++t) {
      const auto a = random_sparse(f, 10 + rng() % 30, 1 + rng() % 3, rng);
      CHECK(wiedemann_minpoly(a, rng) == dense_minpoly(DenseMatrix::from_sparse(a)));
    }
    // derogatory: repeated blocks
    const auto j = build_block_jordan(poly(f, {1, 0, 1}), 2);
    const auto b = block_diagonal({j, j, build_companion(poly(f, {1, 0, 1}))});
    const auto c = bbc::testing::conjugated(b, rng);
    CHECK(wiedemann_minpoly(*c, rng) == pow(poly(f, {1, 0, 1}), 2));
  }
}

TEST_CASE("rank examples") {
  Rng rng(3);
  const PrimeField f(101);
  for (unsigned e = 1; e <= 6; ++e) CHECK(rank_blackbox(build_block_jordan(poly(f, {0, 1}), e), rng) == e - 1);
  CHECK(rank_blackbox(SparseMatrix(f, 5, {}), rng) == 0);
  CHECK(rank_blackbox(SparseMatrix::identity(f, 5), rng) == 5);
}

TEST_CASE("rank matches the dense oracle") {
  Rng rng(4);
  for (std::uint64_t p : {101ULL, 10007ULL, 65537ULL}) {
    const PrimeField f(p);
    const std::size_t span = p == 101 ? 5 : 30;  // keeps p > 2n^2
    for (int t = 0; t < 12; ++t) {
      const auto a = random_sparse(f, 3 + rng() % span, 1 + rng() % 2, rng);
      CHECK(rank_blackbox(a, rng) == dense_rank(DenseMatrix::from_sparse(a)));
    }
  }
}

TEST_CASE("rank of a product of thin random factors") {
  Rng rng(41);
  const PrimeField f(10007);
  std::vector<Triple> lt, rt;
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 17; ++j) {
      lt.push_back({i, j, f.random(rng)});
      rt.push_back({j, i, f.random(rng)});
    }
  // 30 x 17 times 17 x 30, padded to square factors
  const auto l = std::make_shared<SparseMatrix>(f, 30, lt);
  const auto r = std::make_shared<SparseMatrix>(f, 30, rt);
  const ProductOperator a({l, r});
  CHECK(rank_blackbox(a, rng) == 17);
  CHECK(dense_rank(DenseMatrix::from_blackbox(a)) == 17);
}

TEST_CASE("determinant examples") {
  Rng rng(5);
  const PrimeField f7(7);
  const auto d = share(SparseMatrix::diagonal(f7, {1, 2}));
  CHECK(det_blackbox(ShiftedOperator(d, 3), rng) == 2);
  CHECK(det_blackbox(SparseMatrix(f7, 3, {}), rng) == 0);
  const PrimeField f(10007);
  for (int t = 0; t < 15; ++t) {
    const auto a = random_sparse(f, 5 + rng() % 25, 1 + rng() % 3, rng);
    CHECK(det_blackbox(a, rng) == dense_det(DenseMatrix::from_sparse(a)));
  }
}

TEST_CASE("trace fast path and generic path agree") {
  const PrimeField f(5);
  // companion blocks of degree 5 and 2, diagonal sum 6 + 2
  const auto a = block_diagonal({build_companion(poly(f, {-2, 9, -16, 14, -6, 1})),
                                 build_companion(poly(f, {1, -2, 1}))});
  CHECK(a.dimension() == 7);
  CHECK(trace(a) == 8 % 5);
  CHECK(trace_generic(a) == 8 % 5);
  Rng rng(6);
  const PrimeField g(65537);
  const auto b = share(random_sparse(g, 40, 3, rng));
  CHECK(trace(*b) == trace_generic(*b));
  const auto c = bbc::testing::conjugated(random_sparse(g, 20, 3, rng), rng);
  CHECK_FALSE(c->diagonal_trace().has_value());
  CHECK(trace(*c) == trace_generic(*c));
}

TEST_CASE("parallel_for rethrows the first failure by index") {
  std::vector<int> hit(20, 0);
  parallel_for(20, 4, [&](std::size_t i) { hit[i] = 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 20);
  try {
    parallel_for(10, 3, [](std::size_t i) {
      if (i == 7) throw std::runtime_error("seven");
      if (i == 4) throw std::runtime_error("four");
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "four");
  }
}
