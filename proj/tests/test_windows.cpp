#include <random>

#include "doctest.h"
#include "sylvan/extension_rank.hpp"
#include "sylvan/windows.hpp"

using namespace sylvan;

namespace {

// Lattice product in Z^d: a single term with unit coefficient.
std::vector<std::pair<Index, Rational>> lattice_product(const Index& a, const Index& b) {
  Index c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return {{c, Rational(1)}};
}

Window random_monomial(std::mt19937_64& rng, int span, int count) {
  std::uniform_int_distribution<int> e(0, span - 1);
  std::set<Index> out;
  for (int k = 0; k < count; ++k) out.insert({e(rng), e(rng)});
  return Window::monomial(out);
}

Window random_subspace(std::mt19937_64& rng, int span, int count) {
  std::uniform_int_distribution<int> e(0, span - 1), c(-2, 2);
  std::vector<SparseVec> gens;
  for (int k = 0; k < count; ++k) {
    SparseVec v;
    for (int t = 0; t < 3; ++t) {
      Rational x = c(rng);
      if (sgn(x) != 0) v[{0, e(rng)}] = x;
    }
    gens.push_back(v);
  }
  return Window::subspace(gens);
}

}  // namespace

TEST_CASE("standard windows") {
  CHECK(box_window(0, 4, 2).dim() == 16);
  CHECK(box_window(-2, 3, 1).dim() == 5);
  CHECK(box_window(3, 3, 1).empty());
  CHECK(degree_window(0, 4, 2, 1).dim() == 8);
  CHECK(degree_window(0, 3, 1, 2).dim() == 9);
  CHECK(degree_window(0, 1, 3, 0).dim() == 3);
  CHECK(full_group_window(6).dim() == 6);
  CHECK(translate(box_window(0, 2, 1), {5}) == box_window(5, 7, 1));
}

TEST_CASE("subspace windows are canonical") {
  SparseVec a{{{0, 0}, Rational(1)}, {{0, 1}, Rational(1)}};
  SparseVec b{{{0, 0}, Rational(1)}, {{0, 1}, Rational(-1)}};
  SparseVec c{{{0, 0}, Rational(2)}};
  auto w = Window::subspace({a, b});
  CHECK(w.dim() == 2);
  CHECK(w == Window::subspace({c, b}));
  CHECK(w == degree_window(0, 2, 1, 1).as_subspace());
  CHECK(w.contains(SparseVec{{{0, 1}, Rational(7)}}));
  CHECK_FALSE(w.contains(SparseVec{{{0, 2}, Rational(1)}}));
  CHECK(Window::subspace({a, a, SparseVec{}}).dim() == 1);
}

TEST_CASE("modular law dim(V+W) + dim(V cap W) = dim V + dim W") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 40; ++t) {
    auto v = random_monomial(rng, 6, 8), w = random_monomial(rng, 6, 8);
    CHECK(window_sum(v, w).dim() + window_intersect(v, w).dim() == v.dim() + w.dim());
    auto x = random_subspace(rng, 6, 4), y = random_subspace(rng, 6, 4);
    CHECK(window_sum(x, y).dim() + window_intersect(x, y).dim() == x.dim() + y.dim());
    CHECK(window_sum(x, y).contains(x));
    CHECK(x.contains(window_intersect(x, y)));
  }
}

TEST_CASE("codimension of an intersection is subadditive") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto w = random_subspace(rng, 5, 5);
    std::vector<Window> parts;
    Window meet = w;
    std::size_t total = 0;
    for (int j = 0; j < 3; ++j) {
      auto wj = window_intersect(w, random_subspace(rng, 5, 4));
      parts.push_back(wj);
      meet = window_intersect(meet, wj);
      total += w.dim() - wj.dim();
    }
    CHECK(w.dim() - meet.dim() <= total);
  }
}

TEST_CASE("invariance defect of boxes") {
  auto support = box_window(0, 2, 1);  // {1, z}
  CHECK(invariance_defect(box_window(0, 8, 1), support, lattice_product) == Rational(1, 8));
  CHECK(invariance_defect(box_window(0, 4, 2), box_window(0, 2, 2), lattice_product) == Rational(9, 16));
  // W V for monomial windows stays monomial
  auto wv = window_product(box_window(0, 3, 1), support, lattice_product);
  CHECK(wv.is_monomial());
  CHECK(wv == box_window(0, 4, 1));
}

TEST_CASE("schedules") {
  IndexShape z{IndexShape::Kind::Lattice, 1, 0, 1};
  auto s = parse_schedule("box:2^k,k=2..5", z);
  CHECK(s.sizes == std::vector<int>{4, 8, 16, 32});
  CHECK(s.windows.back().dim() == 32);
  CHECK(parse_schedule("box:4,8,16", z).windows.size() == 3);
  CHECK(parse_schedule("box:-8..8", z).windows[0] == box_window(-8, 8, 1));
  IndexShape z2{IndexShape::Kind::Lattice, 2, 0, 1};
  CHECK(parse_schedule("box:0..16^2", z2).windows[0].dim() == 256);
  CHECK_THROWS_AS(parse_schedule("box:0..16^3", z2), InvalidInput);
  IndexShape t{IndexShape::Kind::Tensor, 1, 0, 2};
  CHECK(parse_schedule("degrees:32", t).windows[0].dim() == 64);
  IndexShape g{IndexShape::Kind::FiniteGroup, 0, 6, 1};
  CHECK(parse_schedule("group:full", g).windows[0].dim() == 6);
  CHECK_THROWS_AS(parse_schedule("group:full", z), InvalidInput);
  CHECK_THROWS_AS(parse_schedule("box:8,4", z), InvalidInput);
  CHECK_THROWS_AS(parse_schedule("spiral:4", z), ParseError);
  CHECK_THROWS_AS(parse_schedule("box", z), ParseError);
  CHECK_THROWS_AS(parse_schedule("degrees:4", z), InvalidInput);
}

TEST_CASE("box quasitilings") {
  auto q = ow_quasitile_boxes(1, 4, 40, Rational(1, 10));
  CHECK(q.centers[0].size() == 10);
  CHECK(q.coverage == 1);
  CHECK(check_quasitiling(q, box_window(0, 40, 1)).passed());
  CHECK_THROWS_AS(ow_quasitile_boxes(1, 4, 10, Rational(1, 10)), TilingTooCoarse);
  auto q2 = ow_quasitile_boxes(2, 4, 12, Rational(1, 10));
  auto r2 = check_quasitiling(q2, box_window(0, 12, 2));
  CHECK(r2.passed());
  CHECK(r2.direct_sum_dim == 144);
  // coarse but within tolerance: 2 of 10 cells uncovered is fine with eps = 1/4
  auto q3 = ow_quasitile_boxes(1, 4, 10, Rational(1, 4));
  CHECK(check_quasitiling(q3, box_window(0, 10, 1)).passed());
}

TEST_CASE("degree quasitilings") {
  auto q = kt_quasitile(2, 6);
  CHECK(q.centers[0] == std::vector<Index>{{0, 0}, {0, 2}, {0, 4}});
  auto r = check_quasitiling(q, degree_window(0, 6, 1, 1));
  CHECK(r.passed());
  CHECK(r.direct_sum_dim == 6);
  CHECK(kt_quasitile(5, 5).centers[0].size() == 1);
  CHECK(kt_quasitile(1, 4).centers[0].size() == 4);
  CHECK_THROWS_AS(kt_quasitile(4, 6), InvalidInput);
}

TEST_CASE("quasitiling failures are reported") {
  auto q = ow_quasitile_boxes(1, 4, 12, Rational(1, 10));
  q.centers[0][1] = {2};  // overlaps the tile at 0
  auto r = check_quasitiling(q, box_window(0, 12, 1));
  CHECK_FALSE(r.independence.passed);
  CHECK(r.independence.witness.size() == 2);
  CHECK_FALSE(r.passed());

  auto far = ow_quasitile_boxes(1, 4, 12, Rational(1, 10));
  far.centers[0][2] = {20};  // leaves the target
  CHECK_FALSE(check_quasitiling(far, box_window(0, 12, 1)).coverage.passed);

  auto small = kt_quasitile(2, 6);
  small.subwindows[0][0] = degree_window(0, 1, 1, 1);  // half of the tile
  CHECK_FALSE(check_quasitiling(small, degree_window(0, 6, 1, 1)).subwindow_size.passed);
}

TEST_CASE("passed quasitilings are direct sums") {
  for (int d : {1, 2})
    for (int N : {12, 16, 40}) {
      auto q = ow_quasitile_boxes(d, 4, N, Rational(1, 10));
      auto r = check_quasitiling(q, box_window(0, N, d));
      REQUIRE(r.passed());
      std::size_t expected = 0;
      for (std::size_t j = 0; j < q.tiles.size(); ++j)
        for (const auto& sub : q.subwindows[j]) expected += sub.dim();
      CHECK(r.direct_sum_dim == expected);
    }
}
