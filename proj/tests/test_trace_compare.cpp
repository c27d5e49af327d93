#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sylvan/samplers.hpp"
#include "sylvan/trace_compare.hpp"

using namespace sylvan;

namespace {

using CP = CrossedProduct<RationalField>;

Matrix<CP::Elem> one_by_one(const CP& s, const char* text) { return Matrix<CP::Elem>(1, 1, s.parse(text)); }

std::vector<std::vector<Rational>> klein_cocycle() {
  std::vector<std::vector<Rational>> u(4, std::vector<Rational>(4, Rational(1)));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if ((x >> 1) & (y & 1)) u[x][y] = -1;
  return u;
}

}  // namespace

TEST_CASE("finite trace ranks") {
  RationalField q;
  auto rk = field_rank(q);
  CP z2(q, Group::cyclic(2)), z3(q, Group::cyclic(3));
  CHECK(trace_rank_finite(z2, one_by_one(z2, "1 + s"), rk) == Rational(1, 2));
  CHECK(trace_rank_finite(z2, one_by_one(z2, "1"), rk) == 1);
  CHECK(trace_rank_finite(z3, one_by_one(z3, "1 + s + s^2"), rk) == Rational(1, 3));
  CHECK(trace_rank_finite(z3, one_by_one(z3, "1 - s"), rk) == Rational(2, 3));
  auto m = left_regular_matrix(z2, one_by_one(z2, "1 + s"));
  for (const auto& x : m.data()) CHECK(x == 1);
}

TEST_CASE("left-regular matrices match the table oracle") {
  RationalField q;
  std::mt19937_64 rng(19);
  std::vector<std::pair<Group, std::vector<std::vector<Rational>>>> cases{
      {Group::cyclic(4), {}}, {Group::symmetric3(), {}}, {Group::abelian_product({2, 2}), klein_cocycle()}};
  for (const auto& [g, u] : cases) {
    CP s(q, g, {}, u);
    auto sample = element_sampler(s);
    for (int t = 0; t < 10; ++t) {
      Matrix<CP::Elem> a(2, 2, s.zero());
      for (auto& e : a.data()) e = sample(rng);
      CHECK(mat_equal(q, left_regular_matrix(s, a), oracle::left_regular(g, u, a)));
      // the regular representation is multiplicative
      Matrix<CP::Elem> b(2, 1, s.zero());
      for (auto& e : b.data()) e = sample(rng);
      CHECK(mat_equal(q, left_regular_matrix(s, mat_mul(s, a, b)),
                      oracle::mul(left_regular_matrix(s, a), left_regular_matrix(s, b))));
    }
  }
}

TEST_CASE("trace rank is invariant under the adjoint") {
  RationalField q;
  auto rk = field_rank(q);
  std::mt19937_64 rng(20);
  for (const auto& s : {CP(q, Group::cyclic(3)), CP(q, Group::symmetric3()),
                        CP(q, Group::abelian_product({2, 2}), {}, klein_cocycle())}) {
    auto sample = element_sampler(s);
    for (int t = 0; t < 15; ++t) {
      Matrix<CP::Elem> a(2, 3, s.zero());
      for (auto& e : a.data()) e = sample(rng);
      CHECK(trace_rank_finite(s, a, rk) == trace_rank_finite(s, adjoint(s, a), rk));
    }
  }
}

TEST_CASE("trace ranks over Z") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  CHECK(trace_rank_Z(qz, one_by_one(qz, "2 - z - z^-1")).value == 1);
  CHECK(trace_rank_Z(qz, Matrix<CP::Elem>(1, 1, qz.zero())).value == 0);
  CHECK(trace_rank_Z(qz, Matrix<CP::Elem>(2, 2, qz.parse("1 - z"))).value == 1);
  auto f = laurent_to_ratfunc(qz, Matrix<CP::Elem>(1, 2, qz.parse("z^-2 + z")));
  CHECK(f(0, 0).numerator() == parse_poly("1 + z^3"));
  CP q2(q, Group::free_abelian(2));
  CHECK(trace_rank_Z(q2, one_by_one(q2, "z1 - z2")).value == 1);
}

TEST_CASE("trace rank requires an untwisted action") {
  ProductRing<> qq(2);
  RationalField q;
  Matrix<Rational> swap(2, 2, std::vector<Rational>{0, 1, 1, 0});
  CrossedProduct<ProductRing<>> sw(qq, Group::cyclic(2), {identity(q, 2), swap});
  CHECK_THROWS_AS(trace_rank(sw, product_ring_rank(qq, {Rational(1, 2), Rational(1, 2)})), InvalidInput);
}

TEST_CASE("trace_compare verdicts") {
  RationalField q;
  auto rk = field_rank(q);
  CP z2(q, Group::cyclic(2));
  auto r = trace_compare(z2, one_by_one(z2, "1 + s"), "group:full", rk);
  CHECK(r.trace_rank == Rational(1, 2));
  CHECK(r.equal());
  CP qz(q, Group::free_abelian(1));
  auto z = trace_compare(qz, one_by_one(qz, "1 - z"), "box:2^k,k=2..6", rk);
  CHECK(z.trace_rank == 1);
  CHECK(z.equal());
  for (const auto& d : z.deviations) CHECK(d.passed);
  auto one = trace_compare(qz, one_by_one(qz, "1"), "box:4,8,16", rk);
  CHECK(one.equal());
  LimitOptions strict;
  strict.allow_affine = false;
  Matrix<CP::Elem> col(2, 1, qz.zero());
  col(0, 0) = qz.parse("1 - z");
  col(1, 0) = qz.parse("1 + z");
  auto ns = trace_compare(qz, col, "box:4,8,16", rk, strict);
  CHECK(ns.verdict == "not stabilized");
  auto j = to_json(z);
  CHECK(j["verdict"] == "equal");
  CHECK(j.contains("window_report"));
}

TEST_CASE("trace rank is a Sylvester rank function") {
  RationalField q;
  for (const auto& s : {CP(q, Group::cyclic(2)), CP(q, Group::symmetric3())}) {
    auto rep = check_axioms(s, trace_rank(s, field_rank(q)), element_sampler(s), 20, 3, 3);
    CHECK(rep.passed());
  }
}
