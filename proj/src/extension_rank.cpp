#include "sylvan/extension_rank.hpp"

#include <algorithm>
#include <sstream>

namespace sylvan {

void apply_stabilization(LimitReport& report, const LimitOptions& options) {
  if (options.kappa < 2) throw InvalidInput("kappa must be >= 2");
  report.kappa = options.kappa;
  report.tol = options.tol;
  report.stabilized = false;
  report.stabilized_value.reset();
  report.intercept.reset();
  report.rule.clear();
  auto& s = report.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i].running_inf = i == 0 ? s[i].normalized : std::min(s[i - 1].running_inf, s[i].normalized);
  }
  if (s.empty()) {
    report.note = "no samples";
    return;
  }
  report.running_inf = s.back().running_inf;

  // W A is contained in W: the compression is exact.
  if (options.allow_invariant && sgn(s.back().invariance_defect) == 0) {
    report.stabilized = true;
    report.stabilized_value = s.back().normalized;
    report.rule = "invariant";
    report.note = "last window is invariant under the support of A";
    return;
  }
  const std::size_t kappa = static_cast<std::size_t>(options.kappa);
  if (s.size() >= kappa) {
    const Rational& last = s.back().normalized;
    bool flat = true;
    for (std::size_t i = s.size() - kappa; i < s.size() && flat; ++i) flat = abs(s[i].normalized - last) <= options.tol;
    if (flat) {
      report.stabilized = true;
      report.stabilized_value = last;
      report.rule = "constant";
      report.note.clear();
      return;
    }
  }
  const std::size_t tail = std::max<std::size_t>(kappa, 3);
  if (options.allow_affine && sgn(options.tol) == 0 && s.size() >= tail) {
    const auto& p = s[s.size() - 2];
    const auto& q = s.back();
    if (q.dim_w != p.dim_w) {
      Rational slope = (q.rank_value - p.rank_value) / (static_cast<long>(q.dim_w) - static_cast<long>(p.dim_w));
      Rational intercept = q.rank_value - slope * static_cast<long>(q.dim_w);
      bool affine = sgn(slope) >= 0;
      for (std::size_t i = s.size() - tail; i < s.size() && affine; ++i)
        affine = s[i].rank_value == slope * static_cast<long>(s[i].dim_w) + intercept;
      if (affine) {
        report.stabilized = true;
        report.stabilized_value = slope;
        report.intercept = intercept;
        report.rule = "affine";
        report.note = "rank values are exactly affine in dim W on the last " + std::to_string(tail) + " steps";
        return;
      }
    }
  }
  report.note = "schedule exhausted without stabilization; extend the schedule";
}

std::string decimal(const Rational& q, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational a = abs(q) * scale + Rational(1, 2);
  BigInt v = a.get_num() / a.get_den();
  BigInt ip = v / scale, fp = v % scale;
  std::string frac = fp.get_str();
  frac = std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  bool negative = sgn(q) < 0 && v != 0;
  return (negative ? "-" : "") + ip.get_str() + "." + frac;
}

nlohmann::json to_json(const LimitReport& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"size", s.size},
                       {"dimW", s.dim_w},
                       {"rank_value", to_string(s.rank_value)},
                       {"normalized", to_string(s.normalized)},
                       {"running_inf", to_string(s.running_inf)},
                       {"invariance_defect", to_string(s.invariance_defect)}});
  nlohmann::json out{{"schedule", r.schedule},
                     {"kappa", r.kappa},
                     {"tol", to_string(r.tol)},
                     {"samples", samples},
                     {"running_inf", to_string(r.running_inf)},
                     {"stabilized", r.stabilized},
                     {"stabilized_value", r.stabilized_value ? nlohmann::json(to_string(*r.stabilized_value)) : nlohmann::json()},
                     {"rule", r.rule},
                     {"note", r.note}};
  if (r.intercept) out["intercept"] = to_string(*r.intercept);
  return out;
}

std::string to_csv(const LimitReport& r) {
  std::ostringstream out;
  out << "step,dimW,rank_value_num,rank_value_den,normalized_decimal,invariance_defect_decimal\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    out << i << ',' << s.dim_w << ',' << s.rank_value.get_num().get_str() << ',' << s.rank_value.get_den().get_str()
        << ',' << decimal(s.normalized) << ',' << decimal(s.invariance_defect) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const WindowPropertyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"property", c.property}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"passed", r.passed()}, {"checks", checks}};
}

}  // namespace sylvan
