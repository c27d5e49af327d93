#pragma once

#include <exception>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "sylvan/extensions.hpp"
#include "sylvan/rank_functions.hpp"
#include "sylvan/windows.hpp"

namespace sylvan {

template <RingContext R>
struct CompressionResult {
  Matrix<typename R::Elem> B;  // l = n dim W rows, p = m dim W~ columns
  Window window;
  Window enlarged;             // W~: the monomial hull of W * entries(A)
  std::size_t dim_w = 0;
  Rational rank_value;         // rk(B)
  Rational normalized;         // rk(B) / dim W
};

struct LimitSample {
  int size = 0;                // schedule parameter N_i
  std::size_t dim_w = 0;
  Rational rank_value;
  Rational normalized;
  Rational running_inf;
  Rational invariance_defect;  // against the support window of A
};

struct LimitOptions {
  int kappa = 3;
  Rational tol = 0;
  // Accept an exactly affine tail rank_value = slope * dim W + intercept
  // (slope reported) when the normalized values are not yet constant.
  bool allow_affine = true;
  // Accept the last value outright when its window is invariant under the
  // support of A (the compression is then exact).
  bool allow_invariant = true;
};

struct LimitReport {
  std::string schedule;
  int kappa = 3;
  Rational tol = 0;
  std::vector<LimitSample> samples;
  Rational running_inf;
  bool stabilized = false;
  std::optional<Rational> stabilized_value;
  std::string rule;                   // "invariant", "constant", "affine" or empty
  std::optional<Rational> intercept;  // affine rule only
  std::string note;
};

class NotStabilized : public Error {
 public:
  explicit NotStabilized(LimitReport report)
      : Error("limit did not stabilize along schedule '" + report.schedule + "'"), report_(std::move(report)) {}
  const LimitReport& report() const { return report_; }

 private:
  LimitReport report_;
};

// Applies the stabilization rules to report.samples and fills in the verdict.
void apply_stabilization(LimitReport& report, const LimitOptions& options);

nlohmann::json to_json(const LimitReport& report);
// step,dimW,rank_value_num,rank_value_den,normalized_decimal,invariance_defect_decimal
std::string to_csv(const LimitReport& report);
std::string decimal(const Rational& q, int digits = 12);

template <FiniteDimAlgebra R>
IndexShape index_shape(const CrossedProduct<R>& s) {
  if (s.group().is_finite()) return {IndexShape::Kind::FiniteGroup, 0, s.group().order(), 1};
  return {IndexShape::Kind::Lattice, s.group().rank(), 0, 1};
}
template <RingContext R>
IndexShape index_shape(const TensorExt<R>& s) {
  return {IndexShape::Kind::Tensor, static_cast<int>(s.variables().size()), 0, static_cast<int>(s.field_degree())};
}

template <ExtensionContext S>
BasisProduct basis_product_of(const S& s) {
  return [&s](const Index& a, const Index& b) { return s.basis_product(a, b); };
}

// Monomial hull of the supports of all entries.
template <ExtensionContext S>
Window support_window(const Matrix<typename S::Elem>& a) {
  std::set<Index> out;
  for (const auto& e : a.data())
    for (const auto& [idx, c] : e) out.insert(idx);
  return Window::monomial(std::move(out));
}

/// Rows (k, i) hold the W~-coordinates over R of (w_k (x) delta_i) A;
/// columns (q, j). Row order: outer k, inner i; column order: outer q, inner j.
template <ExtensionContext S>
CompressionResult<typename S::Base> compress(const S& s, const Matrix<typename S::Elem>& a, const Window& w,
                                             const RankFunction<typename S::Base>& rk) {
  using R = typename S::Base;
  using Coeff = typename R::Elem;
  if (w.empty()) throw InvalidInput("compress needs a nonzero window");
  const R& ring = s.base();
  const std::size_t n = a.rows(), m = a.cols();
  const auto basis = w.basis();
  const std::size_t l = basis.size();

  // products[k][i * m + j] = w_k * A_ij
  std::vector<std::vector<typename S::Elem>> products(l, std::vector<typename S::Elem>(n * m));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < l; ++k) {
    try {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const auto& entry = a(i, j);
          if (s.is_zero(entry)) continue;
          typename S::Elem acc = s.zero();
          for (const auto& [idx, c] : basis[k]) {
            auto p = s.left_mul_basis(idx, entry);
            if (c != 1)
              for (auto& [pi, pc] : p) pc = ring.mul(ring.from_rational(c), pc);
            acc = basis[k].size() == 1 ? std::move(p) : s.add(acc, p);
          }
          products[k][i * m + j] = std::move(acc);
        }
    } catch (...) {
#pragma omp critical(sylvan_compress_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::set<Index> hull;
  for (const auto& row : products)
    for (const auto& p : row)
      for (const auto& [idx, c] : p) hull.insert(idx);
  std::map<Index, std::size_t> column;
  for (const auto& idx : hull) column.emplace(idx, column.size());

  CompressionResult<R> out;
  out.window = w;
  out.enlarged = Window::monomial(hull);
  out.dim_w = l;
  out.B = Matrix<Coeff>(l * n, hull.size() * m, ring.zero());
  for (std::size_t k = 0; k < l; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (const auto& [idx, c] : products[k][i * m + j]) {
          auto it = column.find(idx);
          if (it == column.end()) throw InternalError("product escaped the enlarged window");
          out.B(k * n + i, it->second * m + j) = c;
        }
  out.rank_value = rk(out.B);
  if (out.rank_value < 0 || out.rank_value > static_cast<long>(std::min(out.B.rows(), out.B.cols())))
    throw InternalError("rank value outside [0, min(l, p)]");
  out.normalized = out.rank_value / static_cast<long>(l);
  return out;
}

struct PropertyCheck {
  std::string property;
  bool passed = true;
  std::string detail;
};

struct WindowPropertyReport {
  std::vector<PropertyCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

nlohmann::json to_json(const WindowPropertyReport& r);

// Block-diagonal additivity and block-upper-triangular superadditivity at W,
// and rk_W(A) <= rk_V(A) <= rk_W(A) + n (dim V - dim W) for W <= V.
template <ExtensionContext S>
WindowPropertyReport window_rank_properties(const S& s, const Matrix<typename S::Elem>& a,
                                            const Matrix<typename S::Elem>& b, const Matrix<typename S::Elem>& c,
                                            const Window& w, const Window& v,
                                            const RankFunction<typename S::Base>& rk) {
  if (!v.contains(w)) throw InvalidInput("window_rank_properties needs W contained in V");
  WindowPropertyReport r;
  auto rw = [&](const Matrix<typename S::Elem>& x) { return x.empty() ? Rational(0) : compress(s, x, w, rk).rank_value; };
  Rational ra = rw(a), rb = rw(b);
  Rational rd = rw(block_diag(s, a, b));
  r.checks.push_back({"block diagonal additivity", rd == ra + rb,
                      to_string(rd) + " = " + to_string(ra) + " + " + to_string(rb)});
  Rational ru = rw(block_upper(s, a, c, b));
  r.checks.push_back({"block upper triangular superadditivity", ru >= ra + rb,
                      to_string(ru) + " >= " + to_string(ra + rb)});
  Rational rv = a.empty() ? Rational(0) : compress(s, a, v, rk).rank_value;
  Rational slack = static_cast<long>(a.rows() * (v.dim() - w.dim()));
  r.checks.push_back({"monotonicity", ra <= rv && rv <= ra + slack,
                      to_string(ra) + " <= " + to_string(rv) + " <= " + to_string(ra + slack)});
  return r;
}

/// Compresses A along the schedule (steps in parallel, merged in order) and
/// applies the stabilization rules. Never throws on non-stabilization.
template <ExtensionContext S>
LimitReport limit_rank(const S& s, const Matrix<typename S::Elem>& a, const WindowSchedule& schedule,
                       const RankFunction<typename S::Base>& rk, const LimitOptions& options = {}) {
  if (options.kappa < 2) throw InvalidInput("kappa must be >= 2");
  if (options.tol < 0) throw InvalidInput("tol must be >= 0");
  if (schedule.windows.empty()) throw InvalidInput("empty schedule");
  const Window support = support_window<S>(a);
  const auto product = basis_product_of(s);
  const std::size_t steps = schedule.windows.size();
  std::vector<LimitSample> samples(steps);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < steps; ++i) {
    try {
      const Window& w = schedule.windows[i];
      LimitSample smp;
      smp.size = i < schedule.sizes.size() ? schedule.sizes[i] : static_cast<int>(w.dim());
      smp.dim_w = w.dim();
      if (a.empty()) {
        smp.rank_value = 0;
      } else {
        auto res = compress(s, a, w, rk);
        smp.rank_value = res.rank_value;
      }
      smp.normalized = smp.rank_value / static_cast<long>(smp.dim_w);
      smp.invariance_defect = support.empty() ? Rational(0) : invariance_defect(w, support, product);
      samples[i] = std::move(smp);
    } catch (...) {
#pragma omp critical(sylvan_limit_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  LimitReport report;
  report.schedule = schedule.text;
  report.samples = std::move(samples);
  apply_stabilization(report, options);
  return report;
}

template <ExtensionContext S>
RankFunction<S> as_rank_function(const S& s, const WindowSchedule& schedule, const RankFunction<typename S::Base>& rk,
                                 const LimitOptions& options = {}) {
  return {"limit_rank[" + rk.name + "; " + schedule.text + "]", s.descriptor(),
          [s, schedule, rk, options](const Matrix<typename S::Elem>& a) {
            auto report = limit_rank(s, a, schedule, rk, options);
            if (!report.stabilized) throw NotStabilized(std::move(report));
            return *report.stabilized_value;
          }};
}

// dim of S^m / S^n A: m - rk_F(A).
template <ExtensionContext S>
Rational fp_module_dim(const S& s, const Matrix<typename S::Elem>& a, const WindowSchedule& schedule,
                       const RankFunction<typename S::Base>& rk, const LimitOptions& options = {}) {
  auto report = limit_rank(s, a, schedule, rk, options);
  if (!report.stabilized) throw NotStabilized(std::move(report));
  return Rational(static_cast<long>(a.cols())) - *report.stabilized_value;
}

}  // namespace sylvan
