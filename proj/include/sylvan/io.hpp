#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sylvan/extension_rank.hpp"

// JSON descriptions of coefficient rings, groups, extensions and matrices.
//
// Coefficient ring:  "Q" | "gf7" | "Q(i)" | "Q(2^(1/3))"
//                    | {"type": "Q"} | {"type": "GF", "p": 7}
//                    | {"type": "matrix", "size": 2}
//                    | {"type": "product", "factors": 2, "weights": ["1/3", "2/3"]}
//                    | {"type": "field", "preset": "Q(i)"}
//                    | {"type": "field", "minimal_polynomial": "x^2 + 1", "label": "Q(i)"}
//                    | {"type": "field", "names": [...], "constants": [[[...]]]}
// Group:             "Z" | "Z^2" | "Z/3" | "Z/2xZ/2" | "S3"
//                    | {"type": "table", "names": [...], "table": [[...]]}
// Extension:         {"kind": "crossed_product", "coefficients": ..., "group": ...,
//                     "action": [matrix, ...], "cocycle": [[element, ...], ...]}
//                    {"kind": "poly_ext", "coefficients": ..., "field": ..., "variables": ["t"]}
//                    {"kind": "finite_ext", "coefficients": ..., "field": ...}
// Matrix:            {"rows": n, "cols": m, "entries": [["1 - z", ...], ...]}

namespace sylvan {

using CoeffRing = std::variant<RationalField, PrimeField, MatrixRing<RationalField>, ProductRing<RationalField>,
                               FiniteExtField>;

// Reads a whole file; nlohmann parse errors become ParseError with the byte offset.
nlohmann::json load_json(const std::string& path);
nlohmann::json parse_json_text(const std::string& text);

CoeffRing parse_coefficients(const nlohmann::json& j);
FiniteExtField parse_field(const nlohmann::json& j);
Group parse_group(const nlohmann::json& j);
Matrix<Rational> parse_rational_matrix(const nlohmann::json& j);
std::vector<Rational> parse_rationals(const nlohmann::json& j);

// Canonical rank of each coefficient ring; product rings read "weights"
// (uniform when absent).
RankFunction<RationalField> default_rank(const RationalField& r, const nlohmann::json& options);
RankFunction<PrimeField> default_rank(const PrimeField& r, const nlohmann::json& options);
RankFunction<MatrixRing<RationalField>> default_rank(const MatrixRing<RationalField>& r, const nlohmann::json& options);
RankFunction<ProductRing<RationalField>> default_rank(const ProductRing<RationalField>& r,
                                                      const nlohmann::json& options);
RankFunction<FiniteExtField> default_rank(const FiniteExtField& r, const nlohmann::json& options);

std::string require_string(const nlohmann::json& j, const std::string& what);

/// Entries are strings in the ring's text syntax (numbers are accepted too).
template <RingContext S>
Matrix<typename S::Elem> parse_matrix(const S& s, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries")) throw InvalidInput("matrix needs an \"entries\" array");
  const auto& rows = j.at("entries");
  if (!rows.is_array()) throw InvalidInput("\"entries\" must be an array of rows");
  std::size_t n = rows.size();
  std::size_t m = n ? rows[0].size() : 0;
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != n) throw InvalidInput("\"rows\" does not match entries");
  if (j.contains("cols")) {
    std::size_t declared = j.at("cols").get<std::size_t>();
    if (n && declared != m) throw InvalidInput("\"cols\" does not match entries");
    m = declared;
  }
  Matrix<typename S::Elem> out(n, m, s.zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m)
      throw InvalidInput("row " + std::to_string(i) + " must have " + std::to_string(m) + " entries");
    for (std::size_t k = 0; k < m; ++k) {
      const auto& e = rows[i][k];
      std::string text = e.is_string() ? e.get<std::string>() : e.dump();
      try {
        out(i, k) = s.parse(text);
      } catch (const ParseError& err) {
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(k) + ") '" + text + "': " + err.message(),
                         err.position());
      } catch (const Error& err) {
        throw InvalidInput("entry (" + std::to_string(i) + "," + std::to_string(k) + ") '" + text + "': " + err.what());
      }
    }
  }
  return out;
}

template <RingContext S>
nlohmann::json matrix_to_json(const S& s, const Matrix<typename S::Elem>& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(s.format(a(i, k)));
    rows.push_back(row);
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", rows}};
}

template <FiniteDimAlgebra R>
CrossedProduct<R> build_crossed_product(const R& ring, const nlohmann::json& spec) {
  Group g = parse_group(spec.at("group"));
  std::vector<Matrix<Rational>> action;
  if (spec.contains("action"))
    for (const auto& m : spec.at("action")) action.push_back(parse_rational_matrix(m));
  std::vector<std::vector<typename R::Elem>> cocycle;
  if (spec.contains("cocycle"))
    for (const auto& row : spec.at("cocycle")) {
      std::vector<typename R::Elem> r;
      for (const auto& e : row) r.push_back(ring.parse(e.is_string() ? e.get<std::string>() : e.dump()));
      cocycle.push_back(std::move(r));
    }
  std::uint64_t seed = spec.value("seed", std::uint64_t{0});
  return CrossedProduct<R>(ring, std::move(g), std::move(action), std::move(cocycle), seed);
}

template <RingContext R>
TensorExt<R> build_tensor_ext(const R& ring, const nlohmann::json& spec, bool with_variables) {
  FiniteExtField e = spec.contains("field") ? parse_field(spec.at("field")) : FiniteExtField::rationals();
  std::vector<std::string> vars;
  if (with_variables) {
    vars = spec.value("variables", std::vector<std::string>{"t"});
    if (vars.empty()) throw InvalidInput("poly_ext needs at least one variable");
  } else if (spec.contains("variables") && !spec.at("variables").empty()) {
    throw InvalidInput("finite_ext takes no variables");
  }
  return TensorExt<R>(ring, std::move(e), std::move(vars));
}

/// Builds the extension described by `spec` and calls fn(extension, rank of
/// the coefficient ring). Every branch must return the same type.
template <class Fn>
auto visit_extension(const nlohmann::json& spec, Fn&& fn) {
  if (!spec.is_object()) throw InvalidInput("extension spec must be a JSON object");
  const std::string kind = require_string(spec.at("kind"), "kind");
  if (kind != "crossed_product" && kind != "poly_ext" && kind != "finite_ext")
    throw InvalidInput("unknown extension kind '" + kind + "'");
  CoeffRing coeffs = parse_coefficients(spec.contains("coefficients") ? spec.at("coefficients") : nlohmann::json("Q"));
  nlohmann::json rank_options = spec.value("rank", nlohmann::json::object());
  if (spec.contains("coefficients") && spec.at("coefficients").is_object() && spec.at("coefficients").contains("weights") &&
      !rank_options.contains("weights"))
    rank_options["weights"] = spec.at("coefficients").at("weights");
  return std::visit(
      [&](const auto& ring) {
        using R = std::decay_t<decltype(ring)>;
        auto rk = default_rank(ring, rank_options);
        if (kind == "crossed_product") {
          if constexpr (std::is_same_v<typename R::Scalar, Rational>) {
            return fn(build_crossed_product(ring, spec), rk);
          } else {
            throw InvalidInput("crossed products need coefficients that are Q-algebras, not " + ring.descriptor());
          }
        }
        return fn(build_tensor_ext(ring, spec, kind == "poly_ext"), rk);
      },
      coeffs);
}

}  // namespace sylvan
