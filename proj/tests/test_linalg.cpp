#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sylvan/linalg.hpp"

using namespace sylvan;

namespace {

Matrix<Rational> random_rational(std::mt19937_64& rng, std::size_t n, std::size_t m, int zero_bias) {
  std::uniform_int_distribution<int> v(-3, 3), z(0, 9), den(1, 3);
  Matrix<Rational> a(n, m, Rational(0));
  for (auto& x : a.data())
    if (z(rng) >= zero_bias) {
      x = Rational(v(rng), den(rng));
      x.canonicalize();
    }
  return a;
}

// Rank-deficient by construction: product of an n x r and an r x m factor.
Matrix<Rational> low_rank(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t r) {
  return oracle::mul(random_rational(rng, n, r, 0), random_rational(rng, r, m, 0));
}

}  // namespace

TEST_CASE("rank kernels agree with the minors oracle") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 150; ++t) {
    auto a = random_rational(rng, dim(rng), dim(rng), t % 9);
    const auto expected = oracle::rank_by_minors(a);
    CHECK(rank_rational(a) == expected);
    CHECK(reference::rank_bareiss(a) == expected);
  }
}

TEST_CASE("rank kernels agree on larger rank-deficient matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = 1 + t % 6;
    auto a = low_rank(rng, 14, 11, r);
    const auto expected = oracle::rank_full_pivot(a);
    CHECK(expected <= r);
    CHECK(rank_rational(a) == expected);
    CHECK(reference::rank_bareiss(a) == expected);
  }
}

TEST_CASE("banded matrices") {
  // 1 - z on [0, N): bidiagonal, full row rank
  for (std::size_t n : {1u, 5u, 40u, 200u}) {
    Matrix<Rational> b(n, n + 1, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
      b(k, k) = 1;
      b(k, k + 1) = -1;
    }
    CHECK(rank_rational(b) == n);
    CHECK(rank_rational(transpose(b)) == n);
  }
}

TEST_CASE("rank over GF(p) agrees with the reference and with reduction") {
  std::mt19937_64 rng(3);
  const std::uint64_t p = 1000003;
  for (int t = 0; t < 60; ++t) {
    auto a = random_rational(rng, 1 + t % 7, 1 + (t * 3) % 8, t % 7);
    Matrix<std::uint64_t> am(a.rows(), a.cols(), 0);
    for (std::size_t i = 0; i < a.data().size(); ++i) am.data()[i] = modp::reduce(a.data()[i], p);
    const auto r = rank_mod_p(am, p);
    CHECK(r == reference::rank_mod_p(am, p));
    CHECK(r <= oracle::rank_full_pivot(a));
  }
  // characteristic matters: [[1,1],[1,-1]] has rank 1 mod 2
  Matrix<std::uint64_t> h(2, 2, std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(rank_mod_p(h, 2) == 1);
}

TEST_CASE("rank_gauss over a generic field context") {
  PrimeField f(7);
  Matrix<std::uint64_t> a(3, 3, std::vector<std::uint64_t>{1, 2, 3, 2, 4, 6, 0, 1, 5});
  CHECK(rank_gauss(f, a) == 2);
  CHECK(rank_field(f, a) == 2);
}

TEST_CASE("empty shapes have rank 0") {
  CHECK(rank_rational(Matrix<Rational>(0, 4, Rational(0))) == 0);
  CHECK(rank_rational(Matrix<Rational>(3, 0, Rational(0))) == 0);
  CHECK(reference::rank_bareiss(Matrix<Rational>(0, 0, Rational(0))) == 0);
}

TEST_CASE("rank_float counts singular values above tolerance") {
  Matrix<std::complex<double>> a(2, 2, std::complex<double>(1.0, 0.0));
  CHECK(rank_float(a) == 1);
  a(1, 1) = {2.0, 0.0};
  CHECK(rank_float(a) == 2);
  CHECK(rank_float(Matrix<std::complex<double>>(3, 3, std::complex<double>(0.0, 0.0))) == 0);
}

TEST_CASE("generic_rank matches the symbolic minors oracle") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 3, m = 1 + (t / 3) % 3;
    Matrix<MultiPoly> a(n, m, MultiPoly({"z"}));
    for (auto& e : a.data()) e = oracle::random_laurent(rng, 0, 3, 2);
    // force a dependency now and then
    if (t % 4 == 0 && n >= 2)
      for (std::size_t j = 0; j < m; ++j) a(n - 1, j) = a(0, j) * parse_poly("z - 2");
    Matrix<RatFunc> f = a.map([](const MultiPoly& p) { return RatFunc(p); });
    GenericRankOptions opts;
    opts.seed = static_cast<std::uint64_t>(t);
    auto res = generic_rank(f, opts);
    CHECK(res.rank == oracle::generic_rank_by_minors(a));
    CHECK(res.failure_bound < 1e-6);
  }
}

TEST_CASE("generic_rank examples") {
  auto one = [](const char* s) { return Matrix<RatFunc>(1, 1, RatFunc(parse_poly(s))); };
  CHECK(generic_rank(one("2*z - z^2 - 1")).rank == 1);
  CHECK(generic_rank(Matrix<RatFunc>(1, 1, RatFunc())).rank == 0);
  auto e = RatFunc(parse_poly("1 - z"));
  CHECK(generic_rank(Matrix<RatFunc>(2, 2, e)).rank == 1);
  Matrix<RatFunc> two(2, 2, RatFunc());
  two(0, 0) = RatFunc(parse_poly("x"));
  two(0, 1) = RatFunc(parse_poly("y"));
  two(1, 0) = RatFunc(parse_poly("x^2"));
  two(1, 1) = RatFunc(parse_poly("x*y"));
  CHECK(generic_rank(two).rank == 1);
  two(1, 1) = RatFunc(parse_poly("x*y + 1"));
  CHECK(generic_rank(two).rank == 2);
}
