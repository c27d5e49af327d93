#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sylvan/extension_rank.hpp"

// Trace ranks of twisted group algebras with an untwisted action on a
// commutative coefficient ring R:
//   finite G: the GNS space is R*G itself, so rk_tr(A) is the rank of the
//             left-regular representation of A divided by |G|;
//   G = Z^d:  rk_tr(A) is the rank of the symbol A(z) almost everywhere on the
//             torus, i.e. the rank of A over Q(z_1..z_d).

namespace sylvan {

template <FiniteDimAlgebra R>
void require_trace_setting(const CrossedProduct<R>& s) {
  if (!s.trivial_action()) throw InvalidInput("trace ranks are implemented for trivial actions only");
}

/// Matrix of y -> A y on (R*G)^m in the basis {g}: rows (i, g), columns
/// (j, t), entry sum over st = g of (A_ij)_s u(s, t).
template <FiniteDimAlgebra R>
Matrix<typename R::Elem> left_regular_matrix(const CrossedProduct<R>& s,
                                             const Matrix<typename CrossedProduct<R>::Elem>& a) {
  const Group& g = s.group();
  if (!g.is_finite()) throw InvalidInput("left-regular matrices need a finite group");
  require_trace_setting(s);
  const R& r = s.base();
  const std::size_t order = static_cast<std::size_t>(g.order());
  Matrix<typename R::Elem> out(a.rows() * order, a.cols() * order, r.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (const auto& [sg, f] : a(i, j))
        for (int t = 0; t < g.order(); ++t) {
          Index ti{t};
          auto st = static_cast<std::size_t>(g.mul(sg, ti)[0]);
          auto& e = out(i * order + st, j * order + static_cast<std::size_t>(t));
          e = r.add(e, r.mul(f, s.cocycle(sg, ti)));
        }
  return out;
}

template <FiniteDimAlgebra R>
Rational trace_rank_finite(const CrossedProduct<R>& s, const Matrix<typename CrossedProduct<R>::Elem>& a,
                           const RankFunction<R>& base_rank) {
  if (a.empty()) return 0;
  return base_rank(left_regular_matrix(s, a)) / static_cast<long>(s.group().order());
}

template <FiniteDimAlgebra R>
RankFunction<CrossedProduct<R>> trace_rank(const CrossedProduct<R>& s, const RankFunction<R>& base_rank) {
  if (!s.group().is_finite()) throw InvalidInput("trace_rank needs a finite group");
  require_trace_setting(s);
  return {"trace_rank[" + base_rank.name + "]", s.descriptor(),
          [s, base_rank](const Matrix<typename CrossedProduct<R>::Elem>& a) { return trace_rank_finite(s, a, base_rank); }};
}

// (A*)_ij = (A_ji)*.
template <FiniteDimAlgebra R>
Matrix<typename CrossedProduct<R>::Elem> adjoint(const CrossedProduct<R>& s,
                                                 const Matrix<typename CrossedProduct<R>::Elem>& a) {
  Matrix<typename CrossedProduct<R>::Elem> out(a.cols(), a.rows(), s.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = s.star(a(i, j));
  return out;
}

struct TraceRankZ {
  Rational value;
  GenericRankResult detail;
};

// Laurent entries as polynomials in z (or z1..zd), all shifted by one common
// monomial so that every exponent is >= 0; the rank over Q(z) is unchanged.
Matrix<RatFunc> laurent_to_ratfunc(const CrossedProduct<RationalField>& s,
                                   const Matrix<CrossedProduct<RationalField>::Elem>& a);

TraceRankZ trace_rank_Z(const CrossedProduct<RationalField>& s, const Matrix<CrossedProduct<RationalField>::Elem>& a,
                        const GenericRankOptions& options = {});

struct DeviationCheck {
  std::size_t dim_w = 0;
  Rational normalized;
  Rational deviation;  // |normalized - trace rank|
  Rational bound;      // n * invariance defect
  bool passed = true;
};

struct TraceCompareReport {
  std::string group;
  Rational trace_rank;
  nlohmann::json trace_detail;
  LimitReport window;
  std::vector<DeviationCheck> deviations;
  std::string verdict;  // "equal", "different", "not stabilized"
  bool equal() const { return verdict == "equal"; }
};

nlohmann::json to_json(const TraceCompareReport& r);

// Verdict and per-step deviations from the two computed sides.
void finish_trace_compare(TraceCompareReport& r, std::size_t rows);

/// Trace rank against the window limit. Finite groups: exact comparison with
/// the limit along `schedule` (typically group:full). Z^d: the generic-rank
/// value against the stabilized box limit, with per-step deviations.
template <FiniteDimAlgebra R>
TraceCompareReport trace_compare(const CrossedProduct<R>& s, const Matrix<typename CrossedProduct<R>::Elem>& a,
                                 const std::string& schedule, const RankFunction<R>& base_rank,
                                 const LimitOptions& options = {}, const GenericRankOptions& generic = {}) {
  require_trace_setting(s);
  TraceCompareReport out;
  out.group = s.group().descriptor();
  const WindowSchedule sched = parse_schedule(schedule, index_shape(s));
  std::exception_ptr failure;
#pragma omp parallel sections
  {
#pragma omp section
    {
      try {
        if (s.group().is_finite()) {
          out.trace_rank = trace_rank_finite(s, a, base_rank);
          out.trace_detail = {{"method", "left-regular representation"}, {"order", s.group().order()}};
        } else if constexpr (std::is_same_v<R, RationalField>) {
          auto z = trace_rank_Z(s, a, generic);
          out.trace_rank = z.value;
          out.trace_detail = {{"method", "generic rank over Q(z)"},
                              {"failure_bound", z.detail.failure_bound},
                              {"primes", z.detail.primes}};
        } else {
          throw InvalidInput("trace ranks over Z^d need rational coefficients");
        }
      } catch (...) {
#pragma omp critical(sylvan_trace_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp section
    {
      try {
        out.window = limit_rank(s, a, sched, base_rank, options);
      } catch (...) {
#pragma omp critical(sylvan_trace_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  finish_trace_compare(out, a.rows());
  return out;
}

}  // namespace sylvan
