#include <doctest.h>

#include "bbc/ff.hpp"

using namespace bbc;

TEST_CASE("field arithmetic examples") {
  const PrimeField f7(7), f11(11);
  CHECK(f7.mul(3, 5) == 1);
  CHECK(f7.inv(3) == 5);
  CHECK(f11.pow(2, 10) == 1);
  CHECK(f7.neg(0) == 0);
  CHECK(f7.from_int(-1) == 6);
  CHECK(f7.symmetric(6) == -1);
  CHECK(f7.symmetric(3) == 3);
  CHECK_THROWS_AS(f7.inv(0), DivisionByZero);
}

TEST_CASE("field elements check their field") {
  const PrimeField f7(7), f11(11);
  PrimeFieldElem a(f7, 3), b(f7, 5), c(f11, 5);
  CHECK((a * b).value() == 1);
  CHECK((a / b * b) == a);
  CHECK_THROWS_AS(a + c, FieldMismatch);
  CHECK_THROWS_AS(a / PrimeFieldElem(f7, 0), DivisionByZero);
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(PrimeField(9), InputError);
  CHECK_THROWS_AS(PrimeField(2), InputError);
  CHECK_THROWS_AS(PrimeField((std::uint64_t{1} << 31) + 11), InputError);
  CHECK_NOTHROW(PrimeField(2147483647));
}

TEST_CASE("primality against trial division") {
  auto slow = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == slow(n));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(next_prime(14) == 17);
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("generators") {
  CHECK(is_generator(PrimeField(7), 3));
  CHECK(is_generator(PrimeField(11), 2));
  CHECK(find_generator(PrimeField(3)) == 2);
  CHECK_FALSE(is_generator(PrimeField(7), 2));  // order 3
  for (std::uint64_t q : {5ULL, 13ULL, 101ULL, 10007ULL, 65537ULL}) {
    const PrimeField f(q);
    const Word g = find_generator(f);
    // order exactly q-1: no smaller power returns to 1
    Word x = 1;
    std::uint64_t order = 0;
    do {
      x = f.mul(x, g);
      ++order;
    } while (x != 1);
    CHECK(order == q - 1);
  }
}

TEST_CASE("discrete logarithm examples") {
  const PrimeField f(11);
  DlogContext ctx(f, 2);
  CHECK(ctx.log(4) == 2);
  CHECK(ctx.log(7) == 7);
  CHECK(ctx.log(2) == 1);
  CHECK(ctx.log(1) == 0);
  CHECK_THROWS_AS(ctx.log(0), DivisionByZero);
}

TEST_CASE("discrete logarithm is exact on every element") {
  for (std::uint64_t q : {3ULL, 101ULL, 10007ULL, 65537ULL}) {
    const PrimeField f(q);
    DlogContext ctx(f);
    CHECK(ctx.tabulated());
    for (Word a = 1; a < q; ++a) REQUIRE(f.pow(ctx.generator(), ctx.log(a)) == a);
  }
}

TEST_CASE("baby-step giant-step above the table limit") {
  const PrimeField f(2147483647);
  DlogContext ctx(f);
  CHECK_FALSE(ctx.tabulated());
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Word a = f.random_nonzero(rng);
    const auto e = ctx.log(a);
    CHECK(e <= f.modulus() - 2);
    CHECK(f.pow(ctx.generator(), e) == a);
  }
  CHECK(ctx.log(ctx.generator()) == 1);
}

TEST_CASE("index-calculus fields") {
  const auto small = find_index_calculus_field(3);
  CHECK(small.q == 11);
  CHECK(small.p == 5);
  Rng rng(1);
  std::uniform_int_distribution<std::uint64_t> dist(2, 100000);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = dist(rng);
    const auto fld = find_index_calculus_field(n);
    REQUIRE(is_prime(fld.q));
    REQUIRE(is_prime(fld.p));
    REQUIRE(fld.p > n);
    REQUIRE(fld.q > 2 * n);
    REQUIRE((fld.q - 1) % fld.p == 0);
  }
  for (int i = 0; i < 20; ++i) {
    const auto fld = find_index_calculus_field(500, rng);
    CHECK(is_prime(fld.q));
    CHECK(fld.p > 500);
    CHECK((fld.q - 1) % fld.p == 0);
    CHECK(fld.q <= kMaxModulus);
  }
  CHECK(index_calculus_prime(10007, 60) == 5003);
  CHECK_FALSE(index_calculus_prime(101, 10).has_value());
  CHECK_FALSE(index_calculus_prime(65537, 10).has_value());
}
