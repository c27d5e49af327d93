#include "sylvan/rank_functions.hpp"

#include "json.hpp"

namespace sylvan {

RankFunction<FiniteExtField> extension_field_rank(const FiniteExtField& field) {
  return {"extension_field_rank", field.descriptor(), [field](const Matrix<FiniteExtField::Elem>& a) {
            const std::size_t d = field.degree();
            Matrix<Rational> blow(a.rows() * d, a.cols() * d, Rational(0));
            for (std::size_t i = 0; i < a.rows(); ++i)
              for (std::size_t j = 0; j < a.cols(); ++j) {
                if (field.is_zero(a(i, j))) continue;
                auto blk = field.regular_matrix(a(i, j));
                for (std::size_t r = 0; r < d; ++r)
                  for (std::size_t c = 0; c < d; ++c) blow(i * d + r, j * d + c) = blk(r, c);
              }
            return ratio(static_cast<long>(rank_rational(blow)), static_cast<long>(d));
          }};
}

Rational sample_pool_rational(std::mt19937_64& rng) {
  static const Rational pool[] = {Rational(0), Rational(0), Rational(0), Rational(1),  Rational(-1),
                                  Rational(2), Rational(-2), Rational(1, 2)};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
  return pool[pick(rng)];
}

nlohmann::json to_json(const AxiomReport& report) {
  nlohmann::json out;
  out["rank"] = report.rank_name;
  out["ring"] = report.ring;
  out["seed"] = report.seed;
  out["passed"] = report.passed();
  out["axioms"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json entry{{"axiom", r.axiom}, {"trials", r.trials}, {"failures", nlohmann::json::array()}};
    for (const auto& f : r.failures)
      entry["failures"].push_back({{"inputs", f.inputs}, {"expected_relation", f.expected_relation}, {"got", f.got}});
    out["axioms"].push_back(std::move(entry));
  }
  return out;
}

}  // namespace sylvan
