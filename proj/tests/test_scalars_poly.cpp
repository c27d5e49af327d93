#include <random>

#include "doctest.h"
#include "sylvan/poly.hpp"
#include "sylvan/scalars.hpp"

using namespace sylvan;

TEST_CASE("parse_rational canonicalizes and rejects junk") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(to_string(parse_rational(" -6/8 ")) == "-3/4");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZero);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("ratio is canonical") {
  CHECK(to_string(ratio(2, 4)) == "1/2");
  CHECK(to_string(ratio(-3, -9)) == "1/3");
  CHECK_THROWS_AS(ratio(1, 0), DivisionByZero);
}

TEST_CASE("modular arithmetic") {
  const std::uint64_t p = 1000000007;
  CHECK(modp::mul(modp::inv(12345, p), 12345, p) == 1);
  CHECK(modp::pow(3, p - 1, p) == 1);
  CHECK(modp::reduce(Rational(1, 2), 7) == 4);
  CHECK_THROWS_AS(modp::reduce(Rational(1, 7), 7), DivisionByZero);
  CHECK(modp::is_prime(2));
  CHECK(modp::is_prime(4611686018427387847ULL));
  CHECK_FALSE(modp::is_prime(1));
  CHECK_FALSE(modp::is_prime(561));  // Carmichael
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5; ++i) {
    auto q = modp::random_prime(40, rng);
    CHECK(modp::is_prime(q));
    CHECK((q >> 39) == 1);
  }
}

TEST_CASE("PrimeField rejects composite moduli") {
  CHECK_THROWS_AS(PrimeField(9), InvalidInput);
  PrimeField f(7);
  CHECK(f.mul(f.inv(3), 3) == 1);
  CHECK(f.parse("-1") == 6);
  CHECK_THROWS_AS(f.inv(0), DivisionByZero);
}

TEST_CASE("polynomial parsing and arithmetic") {
  auto a = parse_poly("1 - z");
  auto b = parse_poly("1 + z");
  CHECK((a * b) == parse_poly("1 - z^2"));
  CHECK(parse_poly("2 - z - z^-1").min_exponents() == Exponents{-1});
  CHECK(parse_poly("z1^-2*z2^3").variables() == std::vector<std::string>{"z1", "z2"});
  CHECK(parse_poly("1/2*x + y").coefficient({1, 0}) == Rational(1, 2));
  CHECK((parse_poly("x") - parse_poly("x")).is_zero());
  CHECK(parse_poly("(t - 1)^3") == parse_poly("t^3 - 3*t^2 + 3*t - 1"));
  CHECK(parse_poly("t/t^2") == parse_poly("t^-1"));
  CHECK_THROWS_AS(parse_poly("1/(1 + t)"), ParseError);
  CHECK_THROWS_AS(parse_poly("1 +"), ParseError);
  CHECK_THROWS_AS(parse_poly("3 $ 4"), ParseError);
}

TEST_CASE("polynomial evaluation agrees over Q and GF(p)") {
  auto p = parse_poly("3*x^2*y - x*y^-1 + 5");
  std::vector<Rational> pt{2, 3};
  Rational v = p.eval(pt);
  CHECK(v == 3 * 4 * 3 - Rational(2, 3) + 5);
  const std::uint64_t q = 101;
  CHECK(p.eval_mod({2, 3}, q) == modp::reduce(v, q));
}

TEST_CASE("univariate division and gcd") {
  auto [quo, rem] = poly_divmod(parse_poly("t^3 - 1"), parse_poly("t - 1"));
  CHECK(quo == parse_poly("t^2 + t + 1"));
  CHECK(rem.is_zero());
  auto g = poly_gcd(parse_poly("t^2 - 1"), parse_poly("t^2 + 2*t + 1"));
  CHECK(g == parse_poly("t + 1"));
}

TEST_CASE("rational functions reduce") {
  RatFunc f(parse_poly("t^2 - 1"), parse_poly("t - 1"));
  CHECK(f == RatFunc(parse_poly("t + 1")));
  CHECK(f.is_polynomial());
  RatFunc g = RatFunc(parse_poly("1")) / RatFunc(parse_poly("t"));
  CHECK(g * RatFunc(parse_poly("t")) == RatFunc(parse_poly("1")));
  CHECK_THROWS_AS(RatFunc(parse_poly("1")) / RatFunc(), DivisionByZero);
}

TEST_CASE("polynomial ring laws on random samples") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  auto sample = [&] {
    MultiPoly p({"x", "y"});
    for (int k = 0; k < 3; ++k) p.add_term({e(rng), e(rng)}, Rational(c(rng)));
    return p;
  };
  for (int t = 0; t < 50; ++t) {
    auto a = sample(), b = sample(), d = sample();
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
  }
}
