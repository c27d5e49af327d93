#include "sylvan/field_ext.hpp"

#include <set>

namespace sylvan {

MonicPoly monic_from(const MultiPoly& f) {
  MultiPoly g = f.compacted();
  if (g.variables().size() > 1) throw InvalidInput("f must be a polynomial in one variable");
  if (g.is_zero()) throw InvalidInput("f must be nonzero");
  int deg = 0;
  for (const auto& [e, c] : g.terms()) {
    if (!e.empty() && e[0] < 0) throw InvalidInput("f must not have negative exponents");
    deg = std::max(deg, e.empty() ? 0 : e[0]);
  }
  if (deg < 1) throw InvalidInput("f must have degree >= 1");
  MonicPoly out{std::vector<Rational>(static_cast<std::size_t>(deg) + 1, Rational(0))};
  for (const auto& [e, c] : g.terms()) out.coeffs[e.empty() ? 0 : static_cast<std::size_t>(e[0])] = c;
  if (out.coeffs.back() != 1) throw InvalidInput("f must be monic, leading coefficient is " + to_string(out.coeffs.back()));
  return out;
}

MonicPoly monic_power(std::size_t d) {
  if (d < 1) throw InvalidInput("degree must be >= 1");
  MonicPoly out{std::vector<Rational>(d + 1, Rational(0))};
  out.coeffs[d] = 1;
  return out;
}

void require_distinct(const std::vector<Rational>& xs, const std::string& what) {
  std::set<Rational> seen;
  for (const auto& x : xs)
    if (!seen.insert(x).second) throw InvalidInput(what + " must be pairwise distinct; " + to_string(x) + " repeats");
}

MonicPoly monic_from_roots(const std::vector<Rational>& roots) {
  if (roots.empty()) throw InvalidInput("at least one root is required");
  require_distinct(roots, "roots");
  std::vector<Rational> c{Rational(1)};
  for (const auto& x : roots) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= x * c[i];
    }
    c = std::move(next);
  }
  return {c};
}

std::string to_string(const MonicPoly& f, const std::string& var) {
  std::string out;
  for (std::size_t e = f.coeffs.size(); e-- > 0;) {
    Rational c = f.coeffs[e];
    if (sgn(c) == 0) continue;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    std::string mono = e == 0 ? "" : (e == 1 ? var : var + "^" + std::to_string(e));
    std::string term = mono.empty() ? to_string(c) : (c == 1 ? mono : to_string(c) + "*" + mono);
    if (out.empty()) out = (negative ? "-" : "") + term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

MonicPoly monic_member(MonicFamily family, std::size_t d) {
  if (family == MonicFamily::Powers) return monic_power(d);
  std::vector<Rational> roots;
  for (std::size_t i = 1; i <= d; ++i) roots.emplace_back(static_cast<long>(i));
  return monic_from_roots(roots);
}

std::string to_string(MonicFamily family) { return family == MonicFamily::Powers ? "powers" : "root_products"; }

nlohmann::json to_json(const MonicLimitReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& b : r.bound_checks)
    checks.push_back({{"degree", b.degree},
                      {"rk_f", to_string(b.rk_f)},
                      {"window_value", to_string(b.window_value)},
                      {"bound", to_string(b.bound)},
                      {"applicable", b.applicable},
                      {"passed", b.passed}});
  return {{"family", r.family}, {"p", r.p}, {"limit", to_json(r.limit)}, {"bound_checks", checks},
          {"bounds_passed", r.bounds_passed()}};
}

nlohmann::json to_json(const EvalLimitReport& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& x : r.points) pts.push_back(to_string(x));
  return {{"points", pts}, {"partial", r.partial}, {"limit", to_json(r.limit)}};
}

Matrix<Rational> validate_embedding(const FiniteExtField& e0, const FiniteExtField& e1, Matrix<Rational> rows) {
  if (rows.rows() != e0.degree() || rows.cols() != e1.degree()) throw InvalidInput("embedding has the wrong shape");
  auto image = [&](const FiniteExtField::Elem& a) {
    auto out = e1.zero();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += a[i] * rows(i, k);
    return out;
  };
  if (!e1.equal(image(e0.one()), e1.one())) throw InvalidInput("embedding does not send 1 to 1");
  for (std::size_t i = 0; i < e0.degree(); ++i)
    for (std::size_t j = 0; j < e0.degree(); ++j) {
      auto lhs = image(e0.mul(e0.basis(i), e0.basis(j)));
      auto rhs = e1.mul(image(e0.basis(i)), image(e0.basis(j)));
      if (!e1.equal(lhs, rhs))
        throw InvalidInput("embedding is not multiplicative on " + e0.names()[i] + "*" + e0.names()[j]);
    }
  return rows;
}

Matrix<Rational> tensor_embedding(const FiniteExtField& e0, const FiniteExtField& e2) {
  const std::size_t d1 = e0.degree() * e2.degree();
  Matrix<Rational> rows(e0.degree(), d1, Rational(0));
  for (std::size_t i = 0; i < e0.degree(); ++i) {
    auto v = embed_left(e0, e2, e0.basis(i));
    for (std::size_t k = 0; k < d1; ++k) rows(i, k) = v[k];
  }
  return rows;
}

nlohmann::json to_json(const CompositionReport& r) {
  auto value = [](const std::optional<Rational>& v) { return v ? nlohmann::json(to_string(*v)) : nlohmann::json(); };
  nlohmann::json out{{"tower", r.tower},
                     {"one_step", to_json(r.one_step)},
                     {"two_step", to_json(r.two_step)},
                     {"one_step_value", value(r.one_step_value)},
                     {"two_step_value", value(r.two_step_value)},
                     {"agree", r.agree ? nlohmann::json(*r.agree) : nlohmann::json()}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

void finish_composition(CompositionReport& r) {
  if (r.one_step.stabilized) r.one_step_value = r.one_step.stabilized_value;
  if (r.error.empty() && r.two_step.stabilized) r.two_step_value = r.two_step.stabilized_value;
  if (r.one_step_value && r.two_step_value) r.agree = *r.one_step_value == *r.two_step_value;
}

Matrix<TensorExt<FiniteExtField>::Elem> over_field_coefficients(const TensorExt<RationalField>& s,
                                                                const TensorExt<FiniteExtField>& target,
                                                                const Matrix<TensorExt<RationalField>::Elem>& a) {
  const FiniteExtField& e = s.field();
  if (!(target.base() == e) || target.field_degree() != 1 || target.variables() != s.variables())
    throw InvalidInput("target must be E[t] over the same field and variables");
  return a.map([&](const TensorExt<RationalField>::Elem& x) {
    TensorExt<FiniteExtField>::Elem y;
    for (const auto& [idx, c] : x) {
      Index target_idx = idx;
      target_idx[0] = 0;
      y = target.add(y, target.monomial(target_idx, e.mul(e.from_rational(c), e.basis(static_cast<std::size_t>(idx[0])))));
    }
    return y;
  });
}

CompositionReport composition_check(const TensorExt<RationalField>& s, const Matrix<TensorExt<RationalField>::Elem>& a,
                                    const std::string& schedule, const LimitOptions& options) {
  if (s.variables().size() != 1) throw InvalidInput("composition check needs E (x) Q[t] in one variable");
  const FiniteExtField& e = s.field();
  CompositionReport out;
  out.tower = "Q < " + e.descriptor() + " < " + e.descriptor() + "(" + s.variables()[0] + ")";
  out.one_step = limit_rank(s, a, parse_schedule(schedule, index_shape(s)), field_rank(RationalField{}), options);
  TensorExt<FiniteExtField> over_e(e, s.variables());
  auto b = over_field_coefficients(s, over_e, a);
  out.two_step = limit_rank(over_e, b, parse_schedule(schedule, index_shape(over_e)), extension_field_rank(e), options);
  finish_composition(out);
  return out;
}

}  // namespace sylvan
