#include "sylvan/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace sylvan {

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann's message already names the line and column.
    std::string what = e.what();
    auto cut = what.find("] ");
    if (cut != std::string::npos) what = what.substr(cut + 2);
    throw ParseError("malformed JSON: " + what, e.byte == 0 ? 0 : e.byte - 1);
  }
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.position());
  }
}

std::string require_string(const nlohmann::json& j, const std::string& what) {
  if (!j.is_string()) throw InvalidInput("\"" + what + "\" must be a string");
  return j.get<std::string>();
}

namespace {

Rational read_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidInput("expected a rational number as a string or integer, got " + j.dump());
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::vector<Rational> parse_rationals(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(read_rational(x));
  return out;
}

Matrix<Rational> parse_rational_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("expected a nonempty array of rows");
  const std::size_t n = j.size(), m = j[0].size();
  Matrix<Rational> out(n, m, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != m) throw InvalidInput("rational matrix rows must have equal length");
    for (std::size_t k = 0; k < m; ++k) out(i, k) = read_rational(j[i][k]);
  }
  return out;
}

FiniteExtField parse_field(const nlohmann::json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Q") return FiniteExtField::rationals();
    if (s == "Q(i)") return FiniteExtField::gaussian_rationals();
    if (s == "Q(2^(1/3))") return FiniteExtField::cube_root_two();
    throw InvalidInput("unknown field '" + s + "'");
  }
  if (!j.is_object()) throw InvalidInput("field must be a string or an object");
  if (j.contains("preset")) return parse_field(j.at("preset"));
  std::string label = j.value("label", std::string{});
  if (j.contains("minimal_polynomial"))
    return FiniteExtField::from_minimal_polynomial(parse_poly(require_string(j.at("minimal_polynomial"), "minimal_polynomial")),
                                                   label);
  if (j.contains("names") && j.contains("constants")) {
    auto names = j.at("names").get<std::vector<std::string>>();
    FiniteExtField::Constants c;
    for (const auto& a : j.at("constants")) {
      std::vector<std::vector<Rational>> plane;
      for (const auto& b : a) plane.push_back(parse_rationals(b));
      c.push_back(std::move(plane));
    }
    return FiniteExtField(std::move(names), std::move(c), label, j.value("seed", std::uint64_t{0}));
  }
  throw InvalidInput("field needs \"preset\", \"minimal_polynomial\" or \"names\" with \"constants\"");
}

CoeffRing parse_coefficients(const nlohmann::json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    std::smatch m;
    if (s == "Q" || s == "QQ") return RationalField{};
    if (std::regex_match(s, m, std::regex(R"((?:gf|GF)\(?(\d+)\)?)"))) return PrimeField(std::stoull(m[1]));
    if (std::regex_match(s, m, std::regex(R"(M_?(\d+)\(Q\))"))) return MatrixRing<RationalField>(std::stoul(m[1]));
    if (std::regex_match(s, m, std::regex(R"(Q(?:xQ)+)"))) return ProductRing<RationalField>((s.size() + 1) / 2);
    return parse_field(j);
  }
  if (!j.is_object()) throw InvalidInput("coefficients must be a string or an object");
  std::string type = lower(require_string(j.at("type"), "type"));
  if (type == "q") return RationalField{};
  if (type == "gf") return PrimeField(j.at("p").get<std::uint64_t>());
  if (type == "matrix") return MatrixRing<RationalField>(j.at("size").get<std::size_t>());
  if (type == "product") return ProductRing<RationalField>(j.at("factors").get<std::size_t>());
  if (type == "field") return parse_field(j);
  throw InvalidInput("unknown coefficient type '" + type + "'");
}

Group parse_group(const nlohmann::json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    std::smatch m;
    if (s == "Z") return Group::free_abelian(1);
    if (std::regex_match(s, m, std::regex(R"(Z\^(\d+))"))) return Group::free_abelian(std::stoi(m[1]));
    if (std::regex_match(s, m, std::regex(R"(Z/(\d+))"))) return Group::cyclic(std::stoi(m[1]));
    if (std::regex_match(s, std::regex(R"(Z/\d+(?:xZ/\d+)+)"))) {
      std::vector<int> orders;
      const std::regex number(R"(\d+)");
      for (std::sregex_iterator it(s.begin(), s.end(), number), end; it != end; ++it)
        orders.push_back(std::stoi(it->str()));
      return Group::abelian_product(orders);
    }
    if (s == "S3") return Group::symmetric3();
    throw InvalidInput("unknown group '" + s + "'");
  }
  if (!j.is_object()) throw InvalidInput("group must be a string or an object");
  std::string type = lower(require_string(j.at("type"), "type"));
  if (type == "z") return Group::free_abelian(j.value("rank", 1));
  if (type == "cyclic") return Group::cyclic(j.at("order").get<int>(), j.value("generator", std::string("s")));
  if (type == "abelian")
    return Group::abelian_product(j.at("orders").get<std::vector<int>>(),
                                  j.value("generators", std::vector<std::string>{}));
  if (type == "s3") return Group::symmetric3();
  if (type == "table")
    return Group::from_table(j.at("names").get<std::vector<std::string>>(),
                             j.at("table").get<std::vector<std::vector<int>>>(), j.value("seed", std::uint64_t{0}));
  throw InvalidInput("unknown group type '" + type + "'");
}

RankFunction<RationalField> default_rank(const RationalField& r, const nlohmann::json&) { return field_rank(r); }
RankFunction<PrimeField> default_rank(const PrimeField& r, const nlohmann::json&) { return field_rank(r); }
RankFunction<MatrixRing<RationalField>> default_rank(const MatrixRing<RationalField>& r, const nlohmann::json&) {
  return matrix_ring_rank(r);
}
RankFunction<ProductRing<RationalField>> default_rank(const ProductRing<RationalField>& r,
                                                      const nlohmann::json& options) {
  std::vector<Rational> w;
  if (options.contains("weights")) w = parse_rationals(options.at("weights"));
  else w.assign(r.factors(), Rational(1) / static_cast<long>(r.factors()));
  return product_ring_rank(r, w);
}
RankFunction<FiniteExtField> default_rank(const FiniteExtField& r, const nlohmann::json&) {
  return extension_field_rank(r);
}

}  // namespace sylvan
