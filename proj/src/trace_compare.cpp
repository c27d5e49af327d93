#include "sylvan/trace_compare.hpp"

#include <climits>

namespace sylvan {

Matrix<RatFunc> laurent_to_ratfunc(const CrossedProduct<RationalField>& s,
                                   const Matrix<CrossedProduct<RationalField>::Elem>& a) {
  const Group& g = s.group();
  if (g.is_finite()) throw InvalidInput("Laurent entries need G = Z^d");
  const int d = g.rank();
  std::vector<std::string> vars;
  for (int i = 0; i < d; ++i) vars.push_back(d == 1 ? "z" : "z" + std::to_string(i + 1));
  Index low(static_cast<std::size_t>(d), INT_MAX);
  for (const auto& e : a.data())
    for (const auto& [idx, c] : e)
      for (int i = 0; i < d; ++i) low[i] = std::min(low[i], idx[i]);
  for (auto& l : low)
    if (l == INT_MAX) l = 0;
  return a.map([&](const CrossedProduct<RationalField>::Elem& e) {
    MultiPoly p(vars);
    for (const auto& [idx, c] : e) {
      Exponents shifted(idx.size());
      for (int i = 0; i < d; ++i) shifted[i] = idx[i] - low[i];
      p = p + MultiPoly::monomial(c, vars, shifted);
    }
    return RatFunc(p);
  });
}

TraceRankZ trace_rank_Z(const CrossedProduct<RationalField>& s, const Matrix<CrossedProduct<RationalField>::Elem>& a,
                        const GenericRankOptions& options) {
  if (!s.trivial_action()) throw InvalidInput("trace ranks are implemented for trivial actions only");
  TraceRankZ out;
  if (a.empty()) return out;
  out.detail = generic_rank(laurent_to_ratfunc(s, a), options);
  out.value = Rational(static_cast<long>(out.detail.rank));
  return out;
}

void finish_trace_compare(TraceCompareReport& r, std::size_t rows) {
  for (const auto& smp : r.window.samples) {
    DeviationCheck c;
    c.dim_w = smp.dim_w;
    c.normalized = smp.normalized;
    c.deviation = abs(smp.normalized - r.trace_rank);
    c.bound = static_cast<long>(rows) * smp.invariance_defect;
    c.passed = c.deviation <= c.bound;
    r.deviations.push_back(std::move(c));
  }
  if (!r.window.stabilized) r.verdict = "not stabilized";
  else r.verdict = *r.window.stabilized_value == r.trace_rank ? "equal" : "different";
}

nlohmann::json to_json(const TraceCompareReport& r) {
  nlohmann::json devs = nlohmann::json::array();
  for (const auto& d : r.deviations)
    devs.push_back({{"dimW", d.dim_w},
                    {"normalized", to_string(d.normalized)},
                    {"deviation", to_string(d.deviation)},
                    {"bound", to_string(d.bound)},
                    {"passed", d.passed}});
  return {{"group", r.group},
          {"trace_rank", to_string(r.trace_rank)},
          {"trace_detail", r.trace_detail},
          {"window_report", to_json(r.window)},
          {"deviations", devs},
          {"verdict", r.verdict}};
}

}  // namespace sylvan
