#include "sylvan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace sylvan {

namespace {

// Rows scaled by the lcm of their denominators; rank is unchanged.
std::vector<std::vector<BigInt>> integer_rows(const Matrix<Rational>& a) {
  std::vector<std::vector<BigInt>> rows(a.rows(), std::vector<BigInt>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      rows[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
    }
  }
  return rows;
}

struct Span {
  std::size_t lo = 0;  // first possibly nonzero column
  std::size_t hi = 0;  // one past the last nonzero column
};

}  // namespace

std::size_t rank_rational(const Matrix<Rational>& a) {
  const std::size_t n = a.rows(), m = a.cols();
  if (n == 0 || m == 0) return 0;
  auto rows = integer_rows(a);
  std::vector<Span> span(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = m, hi = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (sgn(rows[i][j]) != 0) {
        lo = std::min(lo, j);
        hi = j + 1;
      }
    }
    span[i] = {lo, hi};
  }

  std::size_t rank = 0;
  std::vector<std::size_t> targets;
  for (std::size_t c = 0; c < m && rank < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = rank; r < n; ++r) {
      if (span[r].lo <= c && c < span[r].hi && sgn(rows[r][c]) != 0) {
        piv = r;
        break;
      }
    }
    if (piv == n) continue;
    std::swap(rows[piv], rows[rank]);
    std::swap(span[piv], span[rank]);

    targets.clear();
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (span[i].lo <= c && c < span[i].hi && sgn(rows[i][c]) != 0) targets.push_back(i);
    }
    const auto& prow = rows[rank];
    const Span pspan = span[rank];

#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t t = 0; t < targets.size(); ++t) {
      auto& row = rows[targets[t]];
      Span& s = span[targets[t]];
      BigInt g, pf, rf, tmp;
      mpz_gcd(g.get_mpz_t(), prow[c].get_mpz_t(), row[c].get_mpz_t());
      mpz_divexact(pf.get_mpz_t(), prow[c].get_mpz_t(), g.get_mpz_t());
      mpz_divexact(rf.get_mpz_t(), row[c].get_mpz_t(), g.get_mpz_t());
      const std::size_t hi = std::max(s.hi, pspan.hi);
      BigInt content = 0;
      std::size_t lo = hi, last = c;
      for (std::size_t j = c + 1; j < hi; ++j) {
        // row[j] = pf*row[j] - rf*prow[j]
        if (sgn(row[j]) != 0) mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), pf.get_mpz_t());
        if (j < pspan.hi && sgn(prow[j]) != 0) mpz_submul(row[j].get_mpz_t(), rf.get_mpz_t(), prow[j].get_mpz_t());
        if (sgn(row[j]) != 0) {
          lo = std::min(lo, j);
          last = j;
          mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), row[j].get_mpz_t());
        }
      }
      row[c] = 0;
      if (lo == hi) {
        s = {m, 0};
        continue;
      }
      s = {lo, last + 1};
      if (content != 1) {
        for (std::size_t j = lo; j <= last; ++j) {
          if (sgn(row[j]) != 0) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), content.get_mpz_t());
        }
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p(const Matrix<std::uint64_t>& a, std::uint64_t p) {
  const std::size_t n = a.rows(), m = a.cols();
  if (n == 0 || m == 0) return 0;
  std::vector<std::vector<std::uint64_t>> rows(n);
  std::vector<Span> span(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].assign(a.row(i).begin(), a.row(i).end());
    std::size_t lo = m, hi = 0;
    for (std::size_t j = 0; j < m; ++j) {
      rows[i][j] %= p;
      if (rows[i][j] != 0) {
        lo = std::min(lo, j);
        hi = j + 1;
      }
    }
    span[i] = {lo, hi};
  }
  std::size_t rank = 0;
  std::vector<std::size_t> targets;
  for (std::size_t c = 0; c < m && rank < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = rank; r < n; ++r) {
      if (span[r].lo <= c && c < span[r].hi && rows[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv == n) continue;
    std::swap(rows[piv], rows[rank]);
    std::swap(span[piv], span[rank]);
    targets.clear();
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (span[i].lo <= c && c < span[i].hi && rows[i][c] != 0) targets.push_back(i);
    }
    const auto& prow = rows[rank];
    const Span pspan = span[rank];
    const std::uint64_t pinv = modp::inv(prow[c], p);

#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < targets.size(); ++t) {
      auto& row = rows[targets[t]];
      Span& s = span[targets[t]];
      const std::uint64_t factor = modp::mul(row[c], pinv, p);
      const std::size_t hi = std::max(s.hi, pspan.hi);
      std::size_t lo = hi, last = c;
      row[c] = 0;
      for (std::size_t j = c + 1; j < hi; ++j) {
        if (j < pspan.hi && prow[j] != 0) row[j] = modp::sub(row[j], modp::mul(factor, prow[j], p), p);
        if (row[j] != 0) {
          lo = std::min(lo, j);
          last = j;
        }
      }
      s = lo == hi ? Span{m, 0} : Span{lo, last + 1};
    }
    ++rank;
  }
  return rank;
}

namespace reference {

std::size_t rank_bareiss(const Matrix<Rational>& a) {
  const std::size_t n = a.rows(), m = a.cols();
  if (n == 0 || m == 0) return 0;
  auto M = integer_rows(a);
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && sgn(M[piv][c]) == 0) ++piv;
    if (piv == n) continue;
    std::swap(M[piv], M[r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < m; ++j) {
        M[i][j] = M[r][c] * M[i][j] - M[i][c] * M[r][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      M[i][c] = 0;
    }
    prev = M[r][c];
    ++r;
  }
  return r;
}

std::size_t rank_mod_p(const Matrix<std::uint64_t>& a, std::uint64_t p) {
  PrimeField field(p);
  return rank_gauss(field, a.map([p](std::uint64_t x) { return x % p; }));
}

}  // namespace reference

std::size_t rank_float(const Matrix<std::complex<double>>& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidInput("rel_tol must lie in (0, 1)");
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidInput("non-finite matrix entry");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) ++r;
  }
  return r;
}

GenericRankResult generic_rank(const Matrix<RatFunc>& a, const GenericRankOptions& options) {
  if (options.trials < 1) throw InvalidInput("generic_rank needs at least one trial");
  if (options.prime_bits < 30 || options.prime_bits > 62) throw InvalidInput("prime_bits must lie in [30, 62]");
  GenericRankResult result;
  if (a.rows() == 0 || a.cols() == 0) return result;

  std::vector<std::string> vars;
  for (const auto& e : a.data()) {
    auto v = e.variables();
    std::vector<std::string> merged;
    std::set_union(vars.begin(), vars.end(), v.begin(), v.end(), std::back_inserter(merged));
    vars = std::move(merged);
  }
  // lift every entry once so evaluation points line up
  Matrix<std::pair<MultiPoly, MultiPoly>> lifted = a.map([&](const RatFunc& f) {
    return std::make_pair(f.numerator().lifted(vars), f.denominator().lifted(vars));
  });

  // Degree bound for any minor after clearing row denominators and Laurent shifts.
  double degree_bound = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    long row_bound = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& [num, den] = lifted(i, j);
      if (num.is_zero()) continue;
      auto span_of = [](const MultiPoly& p) {
        auto lo = p.min_exponents(), hi = p.max_exponents();
        long s = 0;
        for (std::size_t k = 0; k < lo.size(); ++k) s += hi[k] - lo[k];
        return s;
      };
      row_bound = std::max(row_bound, span_of(num) + span_of(den)) + span_of(den);
    }
    degree_bound += static_cast<double>(row_bound);
  }

  std::mt19937_64 rng(options.seed);
  double bound = 1.0;
  for (int trial = 0; trial < options.trials; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt < options.max_resamples && !done; ++attempt) {
      std::uint64_t p = modp::random_prime(options.prime_bits, rng);
      std::uniform_int_distribution<std::uint64_t> coord(1, p - 1);
      std::vector<std::uint64_t> point(vars.size());
      for (auto& x : point) x = coord(rng);
      Matrix<std::uint64_t> values(a.rows(), a.cols(), 0);
      bool ok = true;
      try {
        for (std::size_t i = 0; i < a.rows() && ok; ++i) {
          for (std::size_t j = 0; j < a.cols(); ++j) {
            const auto& [num, den] = lifted(i, j);
            if (num.is_zero()) continue;
            std::uint64_t d = den.eval_mod(point, p);
            if (d == 0) {
              ok = false;
              break;
            }
            values(i, j) = modp::mul(num.eval_mod(point, p), modp::inv(d, p), p);
          }
        }
      } catch (const DivisionByZero&) {
        ok = false;  // p divides a coefficient denominator
      }
      if (!ok) continue;
      std::size_t r = rank_mod_p(values, p);
      result.primes.push_back(p);
      result.trial_ranks.push_back(r);
      result.rank = std::max(result.rank, r);
      bound *= std::min(1.0, degree_bound / static_cast<double>(p - 1));
      done = true;
    }
    if (!done) throw EvaluationFailure("every sampled evaluation point hit a vanishing denominator");
  }
  result.failure_bound = bound;
  return result;
}

}  // namespace sylvan
