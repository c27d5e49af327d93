#pragma once

#include <random>

#include "sylvan/extensions.hpp"
#include "sylvan/rank_functions.hpp"

// Random elements biased towards zero and small values, so that random
// matrices are often rank deficient.

namespace sylvan {

inline ElementSampler<RationalField> element_sampler(const RationalField& r) { return pool_sampler(r); }

inline ElementSampler<PrimeField> element_sampler(const PrimeField& r) {
  return [p = r.modulus()](std::mt19937_64& rng) -> std::uint64_t {
    if (rng() % 2 == 0) return 0;
    return rng() % p;
  };
}

inline ElementSampler<MatrixRing<RationalField>> element_sampler(const MatrixRing<RationalField>& r) {
  return [r](std::mt19937_64& rng) {
    auto m = r.zero();
    for (auto& x : m.data()) x = sample_pool_rational(rng);
    return m;
  };
}

inline ElementSampler<ProductRing<RationalField>> element_sampler(const ProductRing<RationalField>& r) {
  return [r](std::mt19937_64& rng) {
    auto v = r.zero();
    for (auto& x : v) x = sample_pool_rational(rng);
    return v;
  };
}

inline ElementSampler<FiniteExtField> element_sampler(const FiniteExtField& r) {
  return [r](std::mt19937_64& rng) {
    auto v = r.zero();
    for (auto& x : v) x = rng() % 2 ? Rational(0) : sample_pool_rational(rng);
    return v;
  };
}

// Polynomials of degree <= max_degree in every variable, any field basis element.
template <RingContext R>
ElementSampler<TensorExt<R>> element_sampler(const TensorExt<R>& s, int max_degree = 2) {
  auto coeff = element_sampler(s.base());
  return [s, coeff, max_degree](std::mt19937_64& rng) {
    typename TensorExt<R>::Elem out;
    const int terms = static_cast<int>(rng() % 3);
    for (int k = 0; k < terms; ++k) {
      Index idx(1 + s.variables().size(), 0);
      idx[0] = static_cast<int>(rng() % s.field_degree());
      for (std::size_t v = 1; v < idx.size(); ++v) idx[v] = static_cast<int>(rng() % (max_degree + 1));
      out = s.add(out, s.monomial(idx, coeff(rng)));
    }
    return out;
  };
}

// Up to three terms on group elements; exponents in [-radius, radius] for Z^d.
template <FiniteDimAlgebra R>
ElementSampler<CrossedProduct<R>> element_sampler(const CrossedProduct<R>& s, int radius = 1) {
  auto coeff = element_sampler(s.base());
  return [s, coeff, radius](std::mt19937_64& rng) {
    typename CrossedProduct<R>::Elem out;
    const Group& g = s.group();
    const int terms = static_cast<int>(rng() % 4);
    for (int k = 0; k < terms; ++k) {
      Index idx;
      if (g.is_finite()) {
        idx = {static_cast<int>(rng() % static_cast<unsigned>(g.order()))};
      } else {
        idx.assign(static_cast<std::size_t>(g.rank()), 0);
        for (auto& e : idx) e = static_cast<int>(rng() % static_cast<unsigned>(2 * radius + 1)) - radius;
      }
      out = s.add(out, s.monomial(idx, coeff(rng)));
    }
    return out;
  };
}

}  // namespace sylvan
