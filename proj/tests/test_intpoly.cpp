#include <doctest.h>

#include "bbc/intpoly.hpp"

using namespace bbc;

namespace {
IntPoly ip(std::vector<long> c) { return IntPoly::from_ints(c); }
}  // namespace

TEST_CASE("integer polynomial examples") {
  CHECK(ip({-1, 1}) * ip({1, 1}) == ip({-1, 0, 1}));
  const IntPoly f = ip({-2, 1}) * pow(ip({-1, 1}), 4);
  CHECK(f(2) == 0);
  CHECK(squarefree_part(f) == ip({2, -3, 1}));
  CHECK(gcd(ip({-1, 0, 1}), ip({-1, 1})) == ip({-1, 1}));
  CHECK(content(ip({4, 6, 8})) == 2);
  CHECK(primitive_part(ip({-4, -6, -8})) == ip({2, 3, 4}));
  CHECK(divides(ip({-1, 1}), ip({-1, 0, 1})));
  CHECK_FALSE(divides(ip({-2, 1}), ip({-1, 0, 1})));
  CHECK(ip({2, -3, 1}).to_string() == "2 - 3*X + 1*X^2");
}

TEST_CASE("CRT examples") {
  const PrimeField f5(5), f7(7);
  CHECK(crt_combine({FieldPoly::from_ints(f5, {1, 1}), FieldPoly::from_ints(f7, {1, 1})}) == ip({1, 1}));
  // x = 4 mod 5, x = 5 mod 7 -> 19, symmetric in (-35/2, 35/2] -> -16
  CHECK(crt_combine({FieldPoly::from_ints(f5, {4, 1}), FieldPoly::from_ints(f7, {5, 1})}) == ip({-16, 1}));
  CHECK(crt_combine({FieldPoly::from_ints(f7, {6, 1})}) == ip({-1, 1}));
  CHECK_THROWS_AS(
      crt_combine({FieldPoly::from_ints(f5, {1, 1}), FieldPoly::from_ints(f7, {1, 0, 1}),
                   FieldPoly::from_ints(PrimeField(11), {1, 0, 1})}),
      BadPrime);
}

TEST_CASE("CRT recovers integer coefficients") {
  const IntPoly target({mpz_class("123456789012345678901234567890"), mpz_class(-17), mpz_class(1)});
  CrtAccumulator acc;
  std::uint64_t p = 1u << 30;
  while (acc.empty() || acc.modulus() < mpz_class("1000000000000000000000000000000000")) {
    p = next_prime(p + 1);
    acc.add(target.reduce(PrimeField(p)));
  }
  CHECK(acc.value() == target);
}

TEST_CASE("Hensel lifting examples") {
  const PrimeField f5(5), f7(7);
  auto l = hensel_lift_basis(ip({-1, 0, 1}), {FieldPoly::from_ints(f5, {-1, 1}), FieldPoly::from_ints(f5, {1, 1})},
                             mpz_class(10));
  REQUIRE(l.size() == 2);
  CHECK(l[0] == ip({-1, 1}));
  CHECK(l[1] == ip({1, 1}));

  // X^2 - 10X + 1 is irreducible mod 7 (discriminant 96 = 5 mod 7, a non-residue)
  const IntPoly s = ip({1, -10, 1});
  CHECK(is_irreducible(s.reduce(f7)));
  // mod 5 it splits as (X - 2)(X - 3)
  const FieldPoly sb = s.reduce(f5);
  std::vector<FieldPoly> roots;
  for (Word r = 0; r < 5; ++r)
    if (sb(r) == 0) roots.push_back(FieldPoly::linear(f5, r));
  REQUIRE(roots.size() == 2);
  const mpz_class bound(1000000);
  auto lifted = hensel_lift_basis(s, roots, bound);
  const unsigned k = lift_exponent(5, bound);
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), 5, k);
  CHECK(pk > 2 * bound);
  CHECK((lifted[0] * lifted[1]).symmetric_mod(pk) == s);
  CHECK(lifted[0].reduce(f5) == roots[0]);

  const IntPoly irr = ip({1, 0, 1});  // irreducible mod 7
  auto same = hensel_lift_basis(irr, {irr.reduce(f7)}, mpz_class(100));
  CHECK(same[0] == irr);
}

TEST_CASE("Hensel lifting of a four-factor product") {
  const IntPoly s = ip({-3, 1}) * ip({5, 1}) * ip({7, 0, 1}) * ip({-11, 1});
  const PrimeField f(13);
  std::vector<FieldPoly> basis = {ip({-3, 1}).reduce(f), ip({5, 1}).reduce(f), ip({7, 0, 1}).reduce(f),
                                  ip({-11, 1}).reduce(f)};
  auto lifted = hensel_lift_basis(s, basis, mpz_class(100000));
  CHECK(lifted[0] == ip({-3, 1}));
  CHECK(lifted[1] == ip({5, 1}));
  CHECK(lifted[2] == ip({7, 0, 1}));
  CHECK(lifted[3] == ip({-11, 1}));
}
