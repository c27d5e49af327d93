#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "sylvan/linalg.hpp"
#include "sylvan/matrix.hpp"
#include "sylvan/rings.hpp"

namespace sylvan {

/// A normalized rank on rectangular matrices over the ring R.
template <RingContext R>
struct RankFunction {
  using Elem = typename R::Elem;

  std::string name;
  std::string ring;  // descriptor of R
  std::function<Rational(const Matrix<Elem>&)> evaluate;

  Rational operator()(const Matrix<Elem>& a) const {
    if (a.rows() == 0 || a.cols() == 0) return Rational(0);
    return evaluate(a);
  }
};

template <FieldContext F>
RankFunction<F> field_rank(const F& field) {
  return {"field_rank", field.descriptor(),
          [field](const MatrixOver<F>& a) { return Rational(static_cast<long>(rank_field(field, a))); }};
}

template <FieldContext F>
RankFunction<MatrixRing<F>> matrix_ring_rank(const MatrixRing<F>& ring) {
  return {"matrix_ring_rank", ring.descriptor(), [ring](const Matrix<typename MatrixRing<F>::Elem>& a) {
            auto r = rank_field(ring.field(), ring.flatten(a));
            return ratio(static_cast<long>(r), static_cast<long>(ring.block()));
          }};
}

// Weighted sum of the component ranks; weights in [0,1] summing to 1.
template <FieldContext F>
RankFunction<ProductRing<F>> product_ring_rank(const ProductRing<F>& ring, std::vector<Rational> weights) {
  if (weights.size() != ring.factors()) throw InvalidInput("one weight per factor is required");
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0 || w > 1) throw InvalidInput("weights must lie in [0, 1]");
    total += w;
  }
  if (total != 1) throw InvalidInput("weights must sum to 1");
  std::string name = "product_ring_rank(";
  for (std::size_t i = 0; i < weights.size(); ++i) name += (i ? "," : "") + to_string(weights[i]);
  return {name + ")", ring.descriptor(), [ring, weights](const Matrix<typename ProductRing<F>::Elem>& a) {
            Rational v = 0;
            for (std::size_t i = 0; i < weights.size(); ++i) {
              if (sgn(weights[i]) == 0) continue;
              v += weights[i] * static_cast<long>(rank_field(ring.field(), ring.component(a, i)));
            }
            return v;
          }};
}

// Rank over a finite extension E of Q computed on the regular-representation
// blow-up: rank_Q(B) / [E:Q]. Equals the rank over E.
RankFunction<FiniteExtField> extension_field_rank(const FiniteExtField& field);

template <RingContext R>
struct WeightedRank {
  Rational weight;
  RankFunction<R> rank;
};

template <RingContext R>
RankFunction<R> convex_combine(std::vector<WeightedRank<R>> parts) {
  if (parts.empty()) throw InvalidInput("convex combination needs at least one component");
  Rational total = 0;
  for (const auto& p : parts) {
    if (p.weight < 0 || p.weight > 1) throw InvalidInput("weights must lie in [0, 1]");
    if (p.rank.ring != parts.front().rank.ring) throw InvalidInput("components are defined on different rings");
    total += p.weight;
  }
  if (total != 1) throw InvalidInput("weights must sum to 1");
  std::string name;
  for (const auto& p : parts) name += (name.empty() ? "" : " + ") + to_string(p.weight) + "*" + p.rank.name;
  std::string ring = parts.front().rank.ring;
  return {name, ring, [parts = std::move(parts)](const Matrix<typename R::Elem>& a) {
            Rational v = 0;
            for (const auto& p : parts)
              if (sgn(p.weight) != 0) v += p.weight * p.rank(a);
            return v;
          }};
}

// ---------------------------------------------------------------------------
// Axiom harness

struct AxiomFailure {
  std::vector<std::string> inputs;  // formatted matrices
  std::string expected_relation;
  std::string got;
};

struct AxiomResult {
  std::string axiom;
  int trials = 0;
  std::vector<AxiomFailure> failures;
};

struct AxiomReport {
  std::string rank_name;
  std::string ring;
  std::uint64_t seed = 0;
  std::vector<AxiomResult> results;

  bool passed() const {
    for (const auto& r : results)
      if (!r.failures.empty()) return false;
    return true;
  }
  std::size_t failure_count() const {
    std::size_t n = 0;
    for (const auto& r : results) n += r.failures.size();
    return n;
  }
};

nlohmann::json to_json(const AxiomReport& report);

template <RingContext R>
using ElementSampler = std::function<typename R::Elem(std::mt19937_64&)>;

// Draws from {0, 1, -1, 2, -2, 1/2} with zero weighted up so that rank
// deficiency is common.
Rational sample_pool_rational(std::mt19937_64& rng);

template <RingContext R>
ElementSampler<R> pool_sampler(const R& ring) {
  return [ring](std::mt19937_64& rng) { return ring.from_rational(sample_pool_rational(rng)); };
}

template <RingContext R>
std::string format_matrix(const R& ring, const Matrix<typename R::Elem>& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < a.cols(); ++j) out += (j ? "," : "") + ring.format(a(i, j));
    out += "]";
  }
  return out + "]";
}

// Checks rk(0) = 0 and rk(1) = 1, rk(AB) <= min(rk A, rk B), block-diagonal
// additivity, block-upper-triangular superadditivity, rk(A+B) <= rk A + rk B
// and invariance under row/column permutations on random matrices with at
// most `max_size` rows and columns.
template <RingContext R>
AxiomReport check_axioms(const R& ring, const RankFunction<R>& rk, const ElementSampler<R>& sample, int trials,
                         std::uint64_t seed, std::size_t max_size = 6) {
  if (trials < 1) throw InvalidInput("trials must be >= 1");
  using M = Matrix<typename R::Elem>;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  auto random_matrix = [&](std::size_t n, std::size_t m) {
    M a(n, m, ring.zero());
    for (auto& x : a.data()) x = sample(rng);
    return a;
  };
  auto fmt = [&](const M& a) { return format_matrix(ring, a); };
  auto q = [](const Rational& v) { return to_string(v); };

  AxiomReport report{rk.name, ring.descriptor(), seed, {}};
  AxiomResult normal{"normalization: rk(0)=0, rk(1)=1", 0, {}};
  AxiomResult product{"product: rk(AB) <= min(rk(A), rk(B))", 0, {}};
  AxiomResult diag{"block diagonal: rk(diag(A,B)) = rk(A) + rk(B)", 0, {}};
  AxiomResult upper{"block upper triangular: rk([[A,C],[0,B]]) >= rk(A) + rk(B)", 0, {}};
  AxiomResult sum{"subadditivity: rk(A+B) <= rk(A) + rk(B)", 0, {}};
  AxiomResult perm{"permutation invariance: rk(PAQ) = rk(A)", 0, {}};

  for (int t = 0; t < trials; ++t) {
    {
      std::size_t n = size(rng), m = size(rng);
      M z(n, m, ring.zero());
      M one(1, 1, ring.one());
      Rational rz = rk(z), r1 = rk(one);
      ++normal.trials;
      if (rz != 0) normal.failures.push_back({{fmt(z)}, "rk(0) = 0", q(rz)});
      if (r1 != 1) normal.failures.push_back({{fmt(one)}, "rk(1) = 1", q(r1)});
    }
    std::size_t n = size(rng), k = size(rng), m = size(rng);
    M a = random_matrix(n, k), b = random_matrix(k, m);
    Rational ra = rk(a), rb = rk(b), rab = rk(mat_mul(ring, a, b));
    ++product.trials;
    if (rab > ra || rab > rb)
      product.failures.push_back({{fmt(a), fmt(b)}, "rk(AB) <= " + q(std::min(ra, rb)), q(rab)});

    M c = random_matrix(n, m);
    Rational rd = rk(block_diag(ring, a, b));
    ++diag.trials;
    if (rd != ra + rb) diag.failures.push_back({{fmt(a), fmt(b)}, "= " + q(ra + rb), q(rd)});
    Rational ru = rk(block_upper(ring, a, c, b));
    ++upper.trials;
    if (ru < ra + rb) upper.failures.push_back({{fmt(a), fmt(c), fmt(b)}, ">= " + q(ra + rb), q(ru)});

    M a2 = random_matrix(n, k);
    Rational ra2 = rk(a2), rs = rk(mat_add(ring, a, a2));
    ++sum.trials;
    if (rs > ra + ra2) sum.failures.push_back({{fmt(a), fmt(a2)}, "<= " + q(ra + ra2), q(rs)});

    std::vector<std::size_t> rp(n), cp(k);
    for (std::size_t i = 0; i < n; ++i) rp[i] = i;
    for (std::size_t i = 0; i < k; ++i) cp[i] = i;
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    Rational rperm = rk(permuted(a, rp, cp));
    ++perm.trials;
    if (rperm != ra) perm.failures.push_back({{fmt(a)}, "= " + q(ra), q(rperm)});
  }
  report.results = {normal, product, diag, upper, sum, perm};
  return report;
}

}  // namespace sylvan
