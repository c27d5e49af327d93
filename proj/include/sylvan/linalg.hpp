#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sylvan/matrix.hpp"
#include "sylvan/poly.hpp"
#include "sylvan/scalars.hpp"

namespace sylvan {

// ---------------------------------------------------------------------------
// Exact rank kernels. The default entry points run the OpenMP row-update
// kernels; `reference::` holds the plain serial algorithms they are tested
// against.

// Fraction-free elimination on integer-scaled rows. Pivot: first nonzero
// entry of the column. Only rows with a nonzero in the pivot column are
// touched and each row tracks its nonzero span, so banded input stays cheap.
std::size_t rank_rational(const Matrix<Rational>& a);
std::size_t rank_mod_p(const Matrix<std::uint64_t>& a, std::uint64_t p);

namespace reference {
// Dense Bareiss elimination (serial).
std::size_t rank_bareiss(const Matrix<Rational>& a);
// Dense Gaussian elimination over GF(p) (serial).
std::size_t rank_mod_p(const Matrix<std::uint64_t>& a, std::uint64_t p);
}  // namespace reference

// Gaussian elimination over an arbitrary field context (serial).
template <FieldContext F>
std::size_t rank_gauss(const F& field, MatrixOver<F> a) {
  const std::size_t n = a.rows(), m = a.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && field.is_zero(a(piv, c))) ++piv;
    if (piv == n) continue;
    if (piv != rank)
      for (std::size_t j = c; j < m; ++j) std::swap(a(piv, j), a(rank, j));
    auto inv = field.inv(a(rank, c));
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (field.is_zero(a(i, c))) continue;
      auto factor = field.mul(a(i, c), inv);
      for (std::size_t j = c; j < m; ++j) {
        if (field.is_zero(a(rank, j))) continue;
        a(i, j) = field.sub(a(i, j), field.mul(factor, a(rank, j)));
      }
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_field(const RationalField&, const Matrix<Rational>& a) { return rank_rational(a); }
inline std::size_t rank_field(const PrimeField& f, const Matrix<std::uint64_t>& a) {
  return rank_mod_p(a, f.modulus());
}
template <FieldContext F>
std::size_t rank_field(const F& field, const MatrixOver<F>& a) {
  return rank_gauss(field, a);
}

// Number of singular values above rel_tol * sigma_max (0 for the zero matrix).
std::size_t rank_float(const Matrix<std::complex<double>>& a, double rel_tol = 1e-8);

struct GenericRankOptions {
  int trials = 5;
  unsigned prime_bits = 62;
  std::uint64_t seed = 0;
  int max_resamples = 32;
};

struct GenericRankResult {
  std::size_t rank = 0;
  // Schwartz-Zippel bound on the probability that every trial undershoots.
  double failure_bound = 0.0;
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> trial_ranks;
};

// Rank over the fraction field Q(z_1, ..., z_d) by evaluation at random
// points modulo random primes; the maximum over trials is reported.
GenericRankResult generic_rank(const Matrix<RatFunc>& a, const GenericRankOptions& options = {});

}  // namespace sylvan
