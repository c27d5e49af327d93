#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"
#include "sylvan/extension_rank.hpp"

// Ranks over K(t) (x) R and E (x) R computed through finite quotients:
// companion representations of R[t]/R[t]f, evaluation at points of K,
// and the regular representation of a finite extension E of K = Q.

namespace sylvan {

/// Monic polynomial in one variable over Q, lowest degree first.
struct MonicPoly {
  std::vector<Rational> coeffs;
  std::size_t degree() const { return coeffs.size() - 1; }
};

// Throws InvalidInput unless f is univariate (or constant), monic and of degree >= 1.
MonicPoly monic_from(const MultiPoly& f);
MonicPoly monic_power(std::size_t d);  // t^d
// prod (t - x_i); throws InvalidInput on repeated roots.
MonicPoly monic_from_roots(const std::vector<Rational>& roots);
std::string to_string(const MonicPoly& f, const std::string& var = "t");

void require_distinct(const std::vector<Rational>& xs, const std::string& what);

template <RingContext R>
void require_univariate(const TensorExt<R>& s) {
  if (s.field_degree() != 1 || s.variables().size() != 1)
    throw InvalidInput("expected a polynomial ring R[t] in one variable, got " + s.descriptor());
}

// Coefficients of a in R[t] by degree.
template <RingContext R>
std::vector<typename R::Elem> poly_coeffs(const TensorExt<R>& s, const typename TensorExt<R>::Elem& a) {
  std::vector<typename R::Elem> out;
  for (const auto& [idx, c] : a) {
    std::size_t e = static_cast<std::size_t>(idx[1]);
    if (out.size() <= e) out.resize(e + 1, s.base().zero());
    out[e] = c;
  }
  return out;
}

// Largest t-degree among the entries (0 for the zero matrix).
template <RingContext R>
int max_degree(const Matrix<typename TensorExt<R>::Elem>& a) {
  int p = 0;
  for (const auto& e : a.data())
    for (const auto& [idx, c] : e) p = std::max(p, idx[1]);
  return p;
}

/// psi_{f,w}: R[t] -> M_d(R) for the basis w = (1, t, ..., t^{d-1}) of
/// R[t]/R[t]f. Row k of psi(a) holds the coordinates of t^k a mod f.
template <RingContext R>
class CompanionRep {
 public:
  using Coeff = typename R::Elem;
  using Poly = typename TensorExt<R>::Elem;

  CompanionRep(TensorExt<R> ring, MonicPoly f) : s_(std::move(ring)), f_(std::move(f)) {
    require_univariate(s_);
    if (f_.coeffs.size() < 2 || f_.coeffs.back() != 1) throw InvalidInput("f must be monic of degree >= 1");
  }

  std::size_t degree() const { return f_.degree(); }
  const MonicPoly& modulus() const { return f_; }
  const TensorExt<R>& ring() const { return s_; }

  // Synthetic division: coordinates of a mod f.
  std::vector<Coeff> reduce(std::vector<Coeff> c) const {
    const R& r = s_.base();
    const std::size_t d = degree();
    for (std::size_t e = c.size(); e-- > d;) {
      if (r.is_zero(c[e])) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(f_.coeffs[j]) != 0) c[e - d + j] = r.sub(c[e - d + j], r.mul(r.from_rational(f_.coeffs[j]), c[e]));
      c[e] = r.zero();
    }
    c.resize(d, r.zero());
    return c;
  }
  std::vector<Coeff> reduce(const Poly& a) const { return reduce(poly_coeffs(s_, a)); }

  Matrix<Coeff> psi(const Poly& a) const {
    const std::size_t d = degree();
    Matrix<Coeff> out(d, d, s_.base().zero());
    auto row = reduce(a);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t j = 0; j < d; ++j) out(k, j) = row[j];
      row.insert(row.begin(), s_.base().zero());  // times t
      row = reduce(std::move(row));
    }
    return out;
  }

  // Entrywise substitution: block (i, j) of the nd x md result is psi(A_ij).
  Matrix<Coeff> psi(const Matrix<Poly>& a) const { return blocks(a, [&](const Poly& x) { return psi(x); }); }

  /// psi_{f,v} for v_k = sum_j p(k, j) t^j: row k holds the v-coordinates of
  /// v_k a mod f, i.e. the w-coordinates times p^{-1}.
  Matrix<Coeff> psi_in_basis(const Poly& a, const Matrix<Rational>& p) const {
    const std::size_t d = degree();
    if (p.rows() != d || p.cols() != d) throw InvalidInput("basis change must be d x d");
    const R& r = s_.base();
    auto pinv = detail::mat_inverse_q(p);
    Matrix<Coeff> out(d, d, r.zero());
    for (std::size_t k = 0; k < d; ++k) {
      Poly vk;
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(p(k, j)) != 0) vk = s_.add(vk, s_.monomial({0, static_cast<int>(j)}, r.from_rational(p(k, j))));
      auto x = reduce(s_.mul(vk, a));
      for (std::size_t l = 0; l < d; ++l) {
        Coeff y = r.zero();
        for (std::size_t j = 0; j < d; ++j)
          if (sgn(pinv(j, l)) != 0 && !r.is_zero(x[j])) y = r.add(y, r.mul(r.from_rational(pinv(j, l)), x[j]));
        out(k, l) = y;
      }
    }
    return out;
  }
  Matrix<Coeff> psi_in_basis(const Matrix<Poly>& a, const Matrix<Rational>& p) const {
    return blocks(a, [&](const Poly& x) { return psi_in_basis(x, p); });
  }

 private:
  template <class Fn>
  Matrix<Coeff> blocks(const Matrix<Poly>& a, Fn&& each) const {
    const std::size_t d = degree();
    Matrix<Coeff> out(a.rows() * d, a.cols() * d, s_.base().zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (s_.is_zero(a(i, j))) continue;
        auto b = each(a(i, j));
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) out(i * d + k, j * d + l) = b(k, l);
      }
    return out;
  }

  TensorExt<R> s_;
  MonicPoly f_;
};

// rk_f(A) = rk(psi_f(A)) / deg f.
template <RingContext R>
Rational rk_f(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a, const MonicPoly& f,
              const RankFunction<R>& rk) {
  CompanionRep<R> rep(s, f);
  return rk(rep.psi(a)) / static_cast<long>(f.degree());
}

template <RingContext R>
RankFunction<TensorExt<R>> companion_rank(const TensorExt<R>& s, const MonicPoly& f, const RankFunction<R>& rk) {
  CompanionRep<R> rep(s, f);
  return {"rk_f[" + to_string(f, s.variables()[0]) + "; " + rk.name + "]", s.descriptor(),
          [rep, rk](const Matrix<typename TensorExt<R>::Elem>& a) -> Rational {
            return rk(rep.psi(a)) / static_cast<long>(rep.degree());
          }};
}

// pi_x: R[t] -> R, h(t) -> h(x).
template <RingContext R>
Matrix<typename R::Elem> evaluate_at(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a,
                                     const Rational& x) {
  const R& r = s.base();
  Matrix<typename R::Elem> out(a.rows(), a.cols(), r.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      typename R::Elem v = r.zero();
      for (const auto& [idx, c] : a(i, j)) {
        Rational xe = 1;
        for (int k = 0; k < idx[1]; ++k) xe *= x;
        v = r.add(v, r.mul(r.from_rational(xe), c));
      }
      out(i, j) = v;
    }
  return out;
}

// (1/d) sum_i rk(A(x_i)); equals rk_f for f = prod (t - x_i).
template <RingContext R>
Rational rk_f_by_roots(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a,
                       const std::vector<Rational>& roots, const RankFunction<R>& rk) {
  require_univariate(s);
  if (roots.empty()) throw InvalidInput("at least one root is required");
  require_distinct(roots, "roots");
  Rational total = 0;
  for (const auto& x : roots) total += rk(evaluate_at(s, a, x));
  return total / static_cast<long>(roots.size());
}

// ---------------------------------------------------------------------------
// Limits along monic families and evaluation points

enum class MonicFamily { Powers, RootProducts };  // t^d, or (t-1)(t-2)...(t-d)

MonicPoly monic_member(MonicFamily family, std::size_t d);
std::string to_string(MonicFamily family);

struct BoundCheck {
  std::size_t degree = 0;
  Rational rk_f;
  Rational window_value;  // normalized window rank at span{1, ..., t^{d-1}}
  Rational bound;         // 2pn/d
  bool applicable = false;  // d > p
  bool passed = true;
};

struct MonicLimitReport {
  std::string family;
  int p = 0;  // t-degree bound of A
  LimitReport limit;
  std::vector<BoundCheck> bound_checks;
  bool bounds_passed() const {
    for (const auto& b : bound_checks)
      if (!b.passed) return false;
    return true;
  }
};

nlohmann::json to_json(const MonicLimitReport& r);

/// rk_{f_i}(A) along deg f_i = degrees[i]. Samples carry rank_value =
/// rk(psi(A)) and dim_w = d_i; the invariance defect is p/d_i, the defect of
/// span{1, ..., t^{d_i-1}}. With check_bound, each step is compared with the
/// window value at that span.
template <RingContext R>
MonicLimitReport monic_sequence_limit(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a,
                                      const std::vector<int>& degrees, const RankFunction<R>& rk,
                                      MonicFamily family = MonicFamily::Powers, const LimitOptions& options = {},
                                      bool check_bound = true) {
  require_univariate(s);
  if (degrees.empty()) throw InvalidInput("empty degree list");
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (degrees[i] < 1 || (i && degrees[i] <= degrees[i - 1]))
      throw InvalidInput("degrees must be positive and strictly increasing");
  MonicLimitReport out;
  out.family = to_string(family);
  out.p = max_degree<R>(a);
  const long n = static_cast<long>(a.rows());
  std::vector<LimitSample> samples(degrees.size());
  std::vector<BoundCheck> checks(degrees.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    try {
      const auto d = static_cast<std::size_t>(degrees[i]);
      CompanionRep<R> rep(s, monic_member(family, d));
      LimitSample smp;
      smp.size = degrees[i];
      smp.dim_w = d;
      smp.rank_value = a.empty() ? Rational(0) : rk(rep.psi(a));
      smp.normalized = smp.rank_value / static_cast<long>(d);
      smp.invariance_defect = ratio(out.p, static_cast<long>(d));
      BoundCheck bc;
      bc.degree = d;
      bc.rk_f = smp.normalized;
      bc.bound = ratio(2 * out.p * n, static_cast<long>(d));
      if (check_bound && !a.empty()) {
        bc.window_value = compress(s, a, degree_window(0, degrees[i], 1, 1), rk).normalized;
        bc.applicable = degrees[i] > out.p;
        bc.passed = !bc.applicable || abs(bc.rk_f - bc.window_value) <= bc.bound;
      }
      samples[i] = std::move(smp);
      checks[i] = std::move(bc);
    } catch (...) {
#pragma omp critical(sylvan_monic_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  out.limit.schedule = out.family + ":" + [&] {
    std::string t;
    for (std::size_t i = 0; i < degrees.size(); ++i) t += (i ? "," : "") + std::to_string(degrees[i]);
    return t;
  }();
  out.limit.samples = std::move(samples);
  if (check_bound) out.bound_checks = std::move(checks);
  apply_stabilization(out.limit, options);
  return out;
}

struct EvalLimitReport {
  std::vector<Rational> points;
  LimitReport limit;
  // The coefficient field is finite, so the stream cannot be extended; the
  // observed ranks are reported but no limit is claimed.
  bool partial = false;
};

nlohmann::json to_json(const EvalLimitReport& r);

template <RingContext R>
constexpr bool has_finite_prime_field() {
  return std::is_same_v<R, PrimeField>;
}

// 1, 2, ..., count; for a finite prime field at most p distinct residues
// 0, 1, ..., p - 1.
template <RingContext R>
std::vector<Rational> default_points(const R& ring, std::size_t count) {
  std::size_t limit = count;
  if constexpr (has_finite_prime_field<R>()) limit = std::min<std::size_t>(count, ring.modulus());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < limit; ++i) out.emplace_back(static_cast<long>(has_finite_prime_field<R>() ? i : i + 1));
  return out;
}

/// rk(A(x_i)) along the points. Stabilization uses the constant rule only.
template <RingContext R>
EvalLimitReport eval_point_limit(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a,
                                 const std::vector<Rational>& points, const RankFunction<R>& rk,
                                 LimitOptions options = {}) {
  require_univariate(s);
  if (points.empty()) throw InvalidInput("empty point stream");
  require_distinct(points, "evaluation points");
  const R& r = s.base();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (r.equal(r.from_rational(points[i]), r.from_rational(points[j])))
        throw InvalidInput("evaluation points " + to_string(points[j]) + " and " + to_string(points[i]) +
                           " coincide in " + r.descriptor());
  EvalLimitReport out;
  out.points = points;
  std::vector<LimitSample> samples(points.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      LimitSample smp;
      smp.size = static_cast<int>(i + 1);
      smp.dim_w = 1;
      smp.rank_value = rk(evaluate_at(s, a, points[i]));
      smp.normalized = smp.rank_value;
      samples[i] = std::move(smp);
    } catch (...) {
#pragma omp critical(sylvan_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  out.limit.schedule = "points:" + std::to_string(points.size());
  out.limit.samples = std::move(samples);
  options.allow_affine = false;
  options.allow_invariant = false;
  apply_stabilization(out.limit, options);
  if constexpr (has_finite_prime_field<R>()) {
    out.partial = true;
    out.limit.stabilized = false;
    out.limit.stabilized_value.reset();
    out.limit.rule.clear();
    out.limit.note = "partial evidence: " + r.descriptor() + " is finite, so the point stream ends after " +
                     std::to_string(points.size()) + " points";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite extensions E of Q: E (x) R with no polynomial variables

template <RingContext R>
void require_field_only(const TensorExt<R>& s) {
  if (!s.variables().empty()) throw InvalidInput("expected E (x) R without polynomial variables");
}

/// Regular-representation blow-up: block (i, j) of the nd x md matrix has
/// row k = coordinates of b_k A_ij over R.
template <RingContext R>
Matrix<typename R::Elem> regular_blowup(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a) {
  const R& r = s.base();
  const auto& c = s.field().constants();
  const std::size_t d = s.field_degree();
  Matrix<typename R::Elem> out(a.rows() * d, a.cols() * d, r.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (const auto& [idx, coeff] : a(i, j)) {
        for (std::size_t v = 1; v < idx.size(); ++v)
          if (idx[v] != 0) throw InvalidInput("entry " + s.format(a(i, j)) + " lies outside E (x) R");
        const auto src = static_cast<std::size_t>(idx[0]);
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t m = 0; m < d; ++m) {
            const Rational& ckm = c[k][src][m];
            if (sgn(ckm) == 0) continue;
            auto& e = out(i * d + k, j * d + m);
            e = r.add(e, r.mul(r.from_rational(ckm), coeff));
          }
      }
  return out;
}

// rk(B) / [E:Q] for the blow-up B.
template <RingContext R>
Rational algebraic_ext_rank(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a,
                            const RankFunction<R>& rk) {
  require_field_only(s);
  return rk(regular_blowup(s, a)) / static_cast<long>(s.field_degree());
}

// Window value at W = E (x) R.
template <RingContext R>
Rational algebraic_window_rank(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a,
                               const RankFunction<R>& rk) {
  require_field_only(s);
  return compress(s, a, degree_window(0, 1, static_cast<int>(s.field_degree()), 0), rk).normalized;
}

/// Row i holds the coordinates in E1 of the image of the i-th basis element
/// of E0. Checked to be a unital ring homomorphism.
Matrix<Rational> validate_embedding(const FiniteExtField& e0, const FiniteExtField& e1, Matrix<Rational> rows);
// E0 -> E0 (x) E2, a -> a (x) 1.
Matrix<Rational> tensor_embedding(const FiniteExtField& e0, const FiniteExtField& e2);

template <RingContext R>
Matrix<typename TensorExt<R>::Elem> embed_matrix(const TensorExt<R>& s0, const TensorExt<R>& s1,
                                                 const Matrix<Rational>& embedding,
                                                 const Matrix<typename TensorExt<R>::Elem>& a) {
  if (s0.variables() != s1.variables()) throw InvalidInput("extensions differ in their polynomial variables");
  if (embedding.rows() != s0.field_degree() || embedding.cols() != s1.field_degree())
    throw InvalidInput("embedding has the wrong shape");
  const R& r = s0.base();
  return a.map([&](const typename TensorExt<R>::Elem& x) {
    typename TensorExt<R>::Elem y;
    for (const auto& [idx, c] : x)
      for (std::size_t k = 0; k < embedding.cols(); ++k) {
        const Rational& e = embedding(static_cast<std::size_t>(idx[0]), k);
        if (sgn(e) == 0) continue;
        Index target = idx;
        target[0] = static_cast<int>(k);
        y = s1.add(y, s1.monomial(target, r.mul(r.from_rational(e), c)));
      }
    return y;
  });
}

// ---------------------------------------------------------------------------
// Composition of extensions

struct CompositionReport {
  std::string tower;
  LimitReport one_step;
  LimitReport two_step;
  std::optional<Rational> one_step_value;
  std::optional<Rational> two_step_value;
  std::optional<bool> agree;  // set when both sides stabilize
  std::string error;          // failure of an inner limit, if any
};

nlohmann::json to_json(const CompositionReport& r);

void finish_composition(CompositionReport& r);

/// K = Q, E finite over Q, E' = E(t). One step: windows span{b_j t^k} of
/// E (x) Q[t] over Q with the field rank. Two steps: windows span{t^k} of
/// E[t] over E with the rank of E computed by its regular representation.
CompositionReport composition_check(const TensorExt<RationalField>& s,
                                    const Matrix<TensorExt<RationalField>::Elem>& a, const std::string& schedule,
                                    const LimitOptions& options = {});

// Entries of E (x) Q[t] rewritten as polynomials over E.
Matrix<TensorExt<FiniteExtField>::Elem> over_field_coefficients(const TensorExt<RationalField>& s,
                                                                const TensorExt<FiniteExtField>& target,
                                                                const Matrix<TensorExt<RationalField>::Elem>& a);

/// E = K(t), E' = K(t)(u). One step: windows in R[t, u] with rk. Two steps:
/// windows in u over R[t], whose rank is itself the window limit in t.
template <RingContext R>
CompositionReport nested_composition_check(const TensorExt<R>& s, const Matrix<typename TensorExt<R>::Elem>& a,
                                           const std::string& one_step_schedule, const std::string& inner_schedule,
                                           const std::string& outer_schedule, const RankFunction<R>& rk,
                                           const LimitOptions& options = {}) {
  if (s.field_degree() != 1 || s.variables().size() != 2)
    throw InvalidInput("nested composition needs R[t, u] with two variables");
  CompositionReport out;
  const auto& vars = s.variables();
  out.tower = s.base().descriptor() + " < " + s.base().descriptor() + "(" + vars[0] + ") < " + s.base().descriptor() +
              "(" + vars[0] + ")(" + vars[1] + ")";
  out.one_step = limit_rank(s, a, parse_schedule(one_step_schedule, index_shape(s)), rk, options);

  TensorExt<R> inner(s.base(), {vars[0]});
  TensorExt<TensorExt<R>> outer(inner, {vars[1]});
  Matrix<typename TensorExt<TensorExt<R>>::Elem> b(a.rows(), a.cols(), outer.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (const auto& [idx, c] : a(i, j)) {
        auto coeff = inner.monomial({0, idx[1]}, c);
        b(i, j) = outer.add(b(i, j), outer.monomial({0, idx[2]}, coeff));
      }
  auto inner_rank = as_rank_function(inner, parse_schedule(inner_schedule, index_shape(inner)), rk, options);
  try {
    out.two_step = limit_rank(outer, b, parse_schedule(outer_schedule, index_shape(outer)), inner_rank, options);
  } catch (const NotStabilized& e) {
    out.two_step.schedule = outer_schedule;
    out.error = std::string("inner limit: ") + e.what();
  }
  finish_composition(out);
  return out;
}

}  // namespace sylvan
