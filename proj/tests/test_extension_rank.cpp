#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sylvan/extension_rank.hpp"
#include "sylvan/samplers.hpp"

using namespace sylvan;

namespace {

using CP = CrossedProduct<RationalField>;
using QT = TensorExt<RationalField>;

template <class S>
Matrix<typename S::Elem> one_by_one(const S& s, const char* text) {
  return Matrix<typename S::Elem>(1, 1, s.parse(text));
}

Matrix<CP::Elem> random_laurent_matrix(const CP& s, std::mt19937_64& rng, std::size_t n, std::size_t m) {
  Matrix<CP::Elem> a(n, m, s.zero());
  for (auto& e : a.data()) {
    auto p = oracle::random_laurent(rng, -2, 2, 3);
    for (const auto& [ex, c] : p.terms()) e = s.add(e, s.monomial({ex[0]}, c));
  }
  return a;
}

// B for an arbitrary spanning list of W, built directly from products.
Rational rank_with_generators(const QT& s, const Matrix<QT::Elem>& a, const std::vector<QT::Elem>& gens) {
  std::map<Index, std::size_t> col;
  std::vector<std::vector<QT::Elem>> rows;
  for (const auto& g : gens) {
    std::vector<QT::Elem> r;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        r.push_back(s.mul(g, a(i, j)));
        for (const auto& [idx, c] : r.back()) col.emplace(idx, 0);
      }
    rows.push_back(std::move(r));
  }
  std::size_t k = 0;
  for (auto& [idx, pos] : col) pos = k++;
  const std::size_t n = a.rows(), m = a.cols();
  Matrix<Rational> b(gens.size() * n, col.size() * m, Rational(0));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (const auto& [idx, c] : rows[g][i * m + j]) b(g * n + i, col[idx] * m + j) = c;
  return static_cast<long>(oracle::rank_full_pivot(b));
}

}  // namespace

TEST_CASE("compress: bidiagonal 1 - z on five monomials") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  auto res = compress(qz, one_by_one(qz, "1 - z"), box_window(0, 5, 1), field_rank(q));
  REQUIRE(res.B.rows() == 5);
  REQUIRE(res.B.cols() == 6);
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t c = 0; c < 6; ++c) {
      Rational expect = c == k ? Rational(1) : c == k + 1 ? Rational(-1) : Rational(0);
      CHECK(res.B(k, c) == expect);
    }
  CHECK(res.enlarged == box_window(0, 6, 1));
  CHECK(res.rank_value == 5);
  CHECK(res.normalized == 1);
}

TEST_CASE("compress: identity and zero") {
  RationalField q;
  CP qz2(q, Group::free_abelian(2));
  auto w = box_window(-1, 3, 2);
  auto id = compress(qz2, identity(qz2, 3), w, field_rank(q));
  CHECK(id.rank_value == 3 * 16);
  CHECK(id.normalized == 3);
  auto one = compress(qz2, one_by_one(qz2, "1"), w, field_rank(q));
  CHECK(one.rank_value == static_cast<long>(w.dim()));
  CHECK(one.normalized == 1);
  auto zero = compress(qz2, zeros(qz2, 2, 3), w, field_rank(q));
  CHECK(zero.rank_value == 0);
  CHECK_THROWS_AS(compress(qz2, one_by_one(qz2, "1"), box_window(0, 0, 2), field_rank(q)), InvalidInput);
}

TEST_CASE("compress: row and column order") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  Matrix<CP::Elem> a(2, 1, qz.zero());
  a(0, 0) = qz.parse("1");
  a(1, 0) = qz.parse("2*z");
  auto res = compress(qz, a, box_window(0, 2, 1), field_rank(q));
  // rows (k, i): (0,0) = 1, (0,1) = 2z, (1,0) = z, (1,1) = 2z^2; columns z^0, z^1, z^2
  CHECK(res.B(0, 0) == 1);
  CHECK(res.B(1, 1) == 2);
  CHECK(res.B(2, 1) == 1);
  CHECK(res.B(3, 2) == 2);
}

TEST_CASE("compress: finite group regular block") {
  RationalField q;
  CP z2(q, Group::cyclic(2));
  auto res = compress(z2, one_by_one(z2, "1 + s"), full_group_window(2), field_rank(q));
  CHECK(res.B(0, 0) == 1);
  CHECK(res.B(0, 1) == 1);
  CHECK(res.B(1, 0) == 1);
  CHECK(res.B(1, 1) == 1);
  CHECK(res.rank_value == 1);
  CHECK(res.normalized == Rational(1, 2));
}

TEST_CASE("compress agrees with the Toeplitz-section oracle") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    auto a = random_laurent_matrix(qz, rng, 1 + t % 2, 1 + (t / 2) % 2);
    const int lo = -3 + t % 4, hi = lo + 2 + t % 7;
    auto res = compress(qz, a, box_window(lo, hi, 1), field_rank(q));
    auto b = oracle::toeplitz_section(a, lo, hi);
    CHECK(res.rank_value == static_cast<long>(oracle::rank_full_pivot(b)));
  }
}

TEST_CASE("compress is independent of the spanning set of W") {
  RationalField q;
  QT qt(q, {"t"});
  std::mt19937_64 rng(5);
  auto sample = element_sampler(qt);
  for (int t = 0; t < 20; ++t) {
    Matrix<QT::Elem> a(2, 2, qt.zero());
    for (auto& e : a.data()) e = sample(rng);
    // W = span{1 + t, t^2 - t, 3 t^3}, written two ways
    std::vector<QT::Elem> gens{qt.parse("1 + t"), qt.parse("t^2 - t"), qt.parse("3*t^3")};
    std::vector<SparseVec> vecs;
    for (const auto& g : gens) {
      SparseVec v;
      for (const auto& [idx, c] : g) v[idx] = c;
      vecs.push_back(v);
    }
    auto w = Window::subspace(vecs);
    std::vector<QT::Elem> mixed{qt.add(gens[0], gens[1]), qt.sub(gens[1], gens[2]),
                                 qt.add(gens[2], qt.add(gens[0], gens[0]))};
    auto res = compress(qt, a, w, field_rank(q));
    CHECK(res.rank_value == rank_with_generators(qt, a, mixed));
    CHECK(res.rank_value == rank_with_generators(qt, a, gens));
  }
}

TEST_CASE("window rank properties") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  auto rk = field_rank(q);
  auto a = one_by_one(qz, "1 - z");
  auto b = one_by_one(qz, "1 + z^2");
  auto c = one_by_one(qz, "z^-1");
  auto r = window_rank_properties(qz, a, b, c, box_window(0, 8, 1), box_window(-2, 10, 1), rk);
  CHECK(r.passed());
  auto r2 = compress(qz, a, box_window(0, 4, 1), rk).rank_value;
  auto r3 = compress(qz, a, box_window(0, 8, 1), rk).rank_value;
  CHECK(r2 == 4);
  CHECK(r3 == 8);
  auto z = zeros(qz, 1, 1);
  CHECK(window_rank_properties(qz, z, z, z, box_window(0, 2, 1), box_window(0, 3, 1), rk).passed());
  CHECK_THROWS_AS(window_rank_properties(qz, a, b, c, box_window(0, 8, 1), box_window(0, 4, 1), rk), InvalidInput);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 15; ++t) {
    auto x = random_laurent_matrix(qz, rng, 2, 2), y = random_laurent_matrix(qz, rng, 1, 2),
         u = random_laurent_matrix(qz, rng, 2, 2);
    CHECK(window_rank_properties(qz, x, y, u, box_window(0, 5, 1), box_window(-3, 9, 1), rk).passed());
  }
}

TEST_CASE("limit_rank examples") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  auto rk = field_rank(q);
  auto sched = parse_schedule("box:4,8,16,32", index_shape(qz));
  auto rep = limit_rank(qz, one_by_one(qz, "1 - z"), sched, rk);
  for (const auto& s : rep.samples) CHECK(s.normalized == 1);
  CHECK(rep.stabilized);
  CHECK(*rep.stabilized_value == 1);
  CHECK(rep.rule == "constant");

  auto zero = limit_rank(qz, zeros(qz, 1, 1), sched, rk);
  CHECK(*zero.stabilized_value == 0);

  CP z2(q, Group::cyclic(2));
  auto fin = limit_rank(z2, one_by_one(z2, "1 + s"), parse_schedule("group:full", index_shape(z2)), rk);
  CHECK(fin.stabilized);
  CHECK(*fin.stabilized_value == Rational(1, 2));
  CHECK(fin.rule == "invariant");
}

TEST_CASE("limit_rank: affine tails and exhaustion") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  auto rk = field_rank(q);
  Matrix<CP::Elem> col(2, 1, qz.zero());
  col(0, 0) = qz.parse("1 - z");
  col(1, 0) = qz.parse("1 + z");
  auto sched = parse_schedule("box:2^k,k=2..6", index_shape(qz));
  auto rep = limit_rank(qz, col, sched, rk);
  // rank_value = N + 1: normalized (N+1)/N, affine with slope 1
  CHECK(rep.samples.back().rank_value == 65);
  CHECK(rep.rule == "affine");
  CHECK(*rep.stabilized_value == 1);
  CHECK(*rep.intercept == 1);

  LimitOptions strict;
  strict.allow_affine = false;
  auto no = limit_rank(qz, col, sched, rk, strict);
  CHECK_FALSE(no.stabilized);
  CHECK_FALSE(no.stabilized_value.has_value());
  CHECK_FALSE(no.note.empty());
  CHECK_THROWS_AS(as_rank_function(qz, sched, rk, strict)(col), NotStabilized);

  LimitOptions loose = strict;
  loose.tol = Rational(1, 8);
  CHECK(limit_rank(qz, col, sched, rk, loose).stabilized);

  LimitOptions bad;
  bad.kappa = 1;
  CHECK_THROWS_AS(limit_rank(qz, col, sched, rk, bad), InvalidInput);
}

TEST_CASE("running infimum is non-increasing and bounds the limit") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  auto rk = field_rank(q);
  std::mt19937_64 rng(3);
  auto sched = parse_schedule("box:2^k,k=2..6", index_shape(qz));
  for (int t = 0; t < 10; ++t) {
    auto a = random_laurent_matrix(qz, rng, 2, 2);
    auto rep = limit_rank(qz, a, sched, rk);
    for (std::size_t i = 1; i < rep.samples.size(); ++i)
      CHECK(rep.samples[i].running_inf <= rep.samples[i - 1].running_inf);
    CHECK(rep.running_inf == rep.samples.back().running_inf);
    if (rep.stabilized) {
      CHECK(*rep.stabilized_value <= rep.running_inf);
      if (rep.rule == "constant") CHECK(*rep.stabilized_value == rep.running_inf);
    }
  }
}

TEST_CASE("as_rank_function extends the base rank") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  auto sched = parse_schedule("box:4,8,16", index_shape(qz));
  auto rk = as_rank_function(qz, sched, field_rank(q));
  CHECK(rk(one_by_one(qz, "1")) == 1);
  std::mt19937_64 rng(12);
  auto sample = element_sampler(q);
  for (int t = 0; t < 15; ++t) {
    Matrix<Rational> a(2, 3, Rational(0));
    for (auto& x : a.data()) x = sample(rng);
    auto lifted = a.map([&](const Rational& x) { return qz.from_rational(x); });
    CHECK(rk(lifted) == static_cast<long>(oracle::rank_by_minors(a)));
  }
}

TEST_CASE("finitely presented module dimensions") {
  RationalField q;
  CP qz(q, Group::free_abelian(1));
  auto sched = parse_schedule("box:4,8,16", index_shape(qz));
  auto rk = field_rank(q);
  CHECK(fp_module_dim(qz, one_by_one(qz, "1 - z"), sched, rk) == 0);
  CHECK(fp_module_dim(qz, zeros(qz, 1, 1), sched, rk) == 1);
  CHECK(fp_module_dim(qz, one_by_one(qz, "2"), sched, rk) == 0);
}

TEST_CASE("per-window affinity in the base rank") {
  ProductRing<> qq(2);
  CrossedProduct<ProductRing<>> s(qq, Group::free_abelian(1));
  std::mt19937_64 rng(31);
  auto sample = element_sampler(s);
  auto r1 = product_ring_rank(qq, {Rational(1), Rational(0)});
  auto r2 = product_ring_rank(qq, {Rational(0), Rational(1)});
  for (int t = 0; t < 10; ++t) {
    Matrix<CrossedProduct<ProductRing<>>::Elem> a(2, 2, s.zero());
    for (auto& e : a.data()) e = sample(rng);
    if (a.data()[0].empty()) a.data()[0] = s.one();
    for (const Rational& lambda : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}) {
      auto mix = product_ring_rank(qq, {lambda, 1 - lambda});
      auto w = box_window(-1, 4, 1);
      auto v = compress(s, a, w, mix).rank_value;
      CHECK(v == lambda * compress(s, a, w, r1).rank_value + (1 - lambda) * compress(s, a, w, r2).rank_value);
    }
  }
}

TEST_CASE("sigma-invariance and separated additivity with the swap action") {
  ProductRing<> qq(2);
  Matrix<Rational> swap(2, 2, std::vector<Rational>{0, 1, 1, 0});
  CrossedProduct<ProductRing<>> s(qq, Group::free_abelian(1), {swap});
  auto rk = product_ring_rank(qq, {Rational(1, 2), Rational(1, 2)});
  std::mt19937_64 rng(8);
  auto sample = element_sampler(s);
  for (int t = 0; t < 10; ++t) {
    Matrix<CrossedProduct<ProductRing<>>::Elem> a(2, 2, s.zero());
    for (auto& e : a.data()) e = sample(rng);
    auto w = box_window(0, 4, 1);
    auto base = compress(s, a, w, rk).rank_value;
    for (int c : {1, 3, -5}) CHECK(compress(s, a, translate(w, {c}), rk).rank_value == base);
    // support in [-1, 1]: [0,4) and [10,14) stay separated after multiplying by it
    auto far = box_window(10, 14, 1);
    auto both = window_sum(w, far);
    CHECK(compress(s, a, both, rk).rank_value == base + compress(s, a, far, rk).rank_value);
  }
}
