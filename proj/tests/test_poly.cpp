#include <doctest.h>

#include "bbc/poly.hpp"
#include "support.hpp"

using namespace bbc;
using bbc::testing::poly;

TEST_CASE("polynomial arithmetic examples") {
  const PrimeField f5(5), f7(7), f11(11);
  CHECK(gcd(poly(f5, {-1, 0, 1}), poly(f5, {-1, 1})) == poly(f5, {-1, 1}));
  CHECK(poly(f7, {1, 0, 1}) % poly(f7, {-2, 1}) == FieldPoly::constant(f7, 5));
  CHECK(poly(f11, {2, -3, 1})(4) == 6);
  CHECK(poly(f11, {7, 3, 1})(0) == 7);
  CHECK(FieldPoly(f7).degree() == -1);
  CHECK_THROWS_AS(divrem(poly(f7, {1, 1}), FieldPoly(f7)), DivisionByZero);
}

TEST_CASE("canonical text form") {
  const PrimeField f(11);
  CHECK(poly(f, {2, -3, 1}).to_string() == "2 - 3*X + 1*X^2");
  CHECK(FieldPoly(f).to_string() == "0");
  CHECK(poly(f, {0, 1}).to_string() == "1*X");
}

TEST_CASE("karatsuba agrees with schoolbook") {
  const PrimeField f(10007);
  Rng rng(3);
  const auto saved = karatsuba_threshold();
  for (int t = 0; t < 20; ++t) {
    auto a = bbc::testing::random_monic(f, 50 + rng() % 150, rng);
    auto b = bbc::testing::random_monic(f, 50 + rng() % 150, rng);
    set_karatsuba_threshold(1u << 30);
    const auto slow = a * b;
    set_karatsuba_threshold(8);
    CHECK(a * b == slow);
  }
  set_karatsuba_threshold(saved);
}

TEST_CASE("division identity and extended gcd") {
  const PrimeField f(101);
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    auto a = bbc::testing::random_monic(f, rng() % 20, rng);
    auto b = bbc::testing::random_monic(f, 1 + rng() % 10, rng);
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    auto e = xgcd(a, b);
    CHECK(e.s * a + e.t * b == e.g);
    CHECK(e.g == gcd(a, b));
    CHECK(divides(e.g, a));
  }
}

TEST_CASE("squarefree part examples") {
  const PrimeField f7(7);
  CHECK(squarefree_part(pow(poly(f7, {-1, 1}), 2)) == poly(f7, {-1, 1}));
  const auto g = poly(f7, {1, 1, 1});
  CHECK(squarefree_part(g) == g);
  const auto sq = squarefree_decomposition(pow(poly(f7, {-1, 1}), 3) * poly(f7, {-2, 1}));
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].factor == poly(f7, {-2, 1}));
  CHECK(sq[0].multiplicity == 1);
  CHECK(sq[1].factor == poly(f7, {-1, 1}));
  CHECK(sq[1].multiplicity == 3);
}

TEST_CASE("factorization examples") {
  Rng rng(1);
  const PrimeField f5(5), f7(7);
  auto fx = factor(poly(f7, {-1, 0, 1}), rng);
  REQUIRE(fx.factors.size() == 2);
  CHECK(fx.factors[0].factor * fx.factors[1].factor == poly(f7, {-1, 0, 1}));
  CHECK(canonical_less(fx.factors[0].factor, fx.factors[1].factor));
  auto g = factor(poly(f5, {1, 0, 1}), rng);
  REQUIRE(g.factors.size() == 2);
  CHECK(g.expand(f5) == poly(f5, {1, 0, 1}));
  CHECK(g.factors[0].factor.degree() == 1);
  CHECK(g.factors[0].factor(2) * g.factors[1].factor(2) == 0);
  CHECK(g.factors[0].factor(3) * g.factors[1].factor(3) == 0);
  auto h = factor(poly(f5, {-1, -2, 1}), rng);
  REQUIRE(h.factors.size() == 1);
  CHECK(h.factors[0].multiplicity == 1);
  CHECK(is_irreducible(poly(f5, {-1, -2, 1})));
}

TEST_CASE("factorization reconstructs random products") {
  Rng rng(11);
  for (std::uint64_t p : {101ULL, 10007ULL, 65537ULL}) {
    const PrimeField f(p);
    for (int t = 0; t < 25; ++t) {
      FieldPoly prod = FieldPoly::constant(f, 1);
      const int parts = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < parts; ++i)
        prod = prod * pow(bbc::testing::random_irreducible(f, 1 + rng() % 4, rng), 1 + rng() % 3);
      auto fx = factor(prod, rng);
      CHECK(fx.expand(f) == prod);
      for (std::size_t i = 0; i < fx.factors.size(); ++i) {
        CHECK(is_irreducible(fx.factors[i].factor));
        CHECK(fx.factors[i].factor.is_monic());
        if (i) CHECK(canonical_less(fx.factors[i - 1].factor, fx.factors[i].factor));
      }
    }
  }
}

TEST_CASE("irreducibility test counts irreducibles") {
  // number of monic irreducible quadratics over GF(p) is (p^2 - p) / 2
  const PrimeField f(7);
  int count = 0;
  for (Word a = 0; a < 7; ++a)
    for (Word b = 0; b < 7; ++b)
      if (is_irreducible(FieldPoly(f, {b, a, 1}))) ++count;
  CHECK(count == 21);
}

TEST_CASE("gcd-free basis examples") {
  const PrimeField f(101);
  const auto x1 = poly(f, {-1, 1}), x2 = poly(f, {-2, 1});
  auto b = gcd_free_basis({x1 * x2, pow(x1, 2) * x2, pow(x1, 3) * pow(x2, 2)}, pow(x1, 3) * pow(x2, 2));
  REQUIRE(b.elements.size() == 2);
  CHECK(b.elements[0] == x1);
  CHECK(b.elements[1] == x2);
  CHECK(b.exponents == std::vector<unsigned>{3, 2});
  const auto q = poly(f, {1, 0, 1});
  auto single = gcd_free_basis({q}, q);
  CHECK(single.elements == std::vector<FieldPoly>{q});
  CHECK(single.exponents == std::vector<unsigned>{1});
  auto cop = gcd_free_basis({x1, q}, x1 * q);
  CHECK(cop.elements.size() == 2);
  CHECK(cop.exponents == std::vector<unsigned>{1, 1});
  CHECK_THROWS_AS(gcd_free_basis({x1}, x2), BadPrime);
}

TEST_CASE("gcd-free basis elements are pairwise coprime") {
  const PrimeField f(10007);
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    std::vector<FieldPoly> irr;
    for (int i = 0; i < 4; ++i) irr.push_back(bbc::testing::random_irreducible(f, 1 + rng() % 3, rng));
    std::vector<FieldPoly> inputs;
    FieldPoly target = FieldPoly::constant(f, 1);
    for (int k = 0; k < 3; ++k) {
      FieldPoly g = FieldPoly::constant(f, 1);
      for (auto& p : irr)
        if (rng() % 2) g = g * pow(p, 1 + rng() % 2);
      inputs.push_back(g);
      target = target * g;
    }
    auto b = gcd_free_basis(inputs, target);
    FieldPoly prod = FieldPoly::constant(f, 1);
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      prod = prod * pow(b.elements[i], b.exponents[i]);
      for (std::size_t j = 0; j < i; ++j) CHECK(gcd(b.elements[i], b.elements[j]).is_one());
    }
    CHECK(prod == target);
  }
}

TEST_CASE("powmod agrees with repeated multiplication") {
  const PrimeField f(101);
  const auto m = poly(f, {3, 1, 0, 1});
  const auto x = FieldPoly::x(f);
  FieldPoly slow = FieldPoly::constant(f, 1);
  for (int i = 0; i < 37; ++i) slow = (slow * x) % m;
  CHECK(powmod(x, mpz_class(37), m) == slow);
}
