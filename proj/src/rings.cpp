#include "sylvan/rings.hpp"

#include <random>

namespace sylvan {

namespace detail {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth < 0) throw ParseError("unbalanced brackets", i);
    if (c == sep && depth == 0) {
      out.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets", s.size());
  out.emplace_back(trim(s.substr(start)));
  return out;
}

}  // namespace detail

namespace {

// Solves M x = rhs over Q; nullopt when M is singular.
std::optional<std::vector<Rational>> solve(Matrix<Rational> m, std::vector<Rational> rhs) {
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m(piv, c)) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      std::swap(rhs[piv], rhs[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
      rhs[i] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m(i, i);
  return rhs;
}

}  // namespace

FiniteExtField::FiniteExtField(std::vector<std::string> names, Constants constants, std::string label,
                               std::uint64_t seed)
    : d_(names.size()), names_(std::move(names)), c_(std::move(constants)), label_(std::move(label)) {
  if (d_ == 0) throw InvalidInput("extension degree must be at least 1");
  if (c_.size() != d_) throw InvalidInput("structure constants have the wrong shape");
  for (const auto& row : c_) {
    if (row.size() != d_) throw InvalidInput("structure constants have the wrong shape");
    for (const auto& v : row)
      if (v.size() != d_) throw InvalidInput("structure constants have the wrong shape");
  }
  if (label_.empty()) {
    label_ = "Q";
    if (d_ > 1) {
      label_ += "[";
      for (std::size_t i = 1; i < d_; ++i) label_ += (i > 1 ? "," : "") + names_[i];
      label_ += "]";
    }
  }
  for (std::size_t j = 0; j < d_; ++j) {
    if (c_[0][j] != basis(j) || c_[j][0] != basis(j)) throw InvalidInput("b_1 does not act as the identity");
  }
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      if (c_[i][j] != c_[j][i]) throw InvalidInput("structure constants are not commutative");
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k)
        if (mul(mul(basis(i), basis(j)), basis(k)) != mul(basis(i), mul(basis(j), basis(k))))
          throw InvalidInput("structure constants are not associative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 24; ++trial) {
    Elem a = zero();
    for (auto& x : a) x = coef(rng);
    if (is_zero(a)) continue;
    if (rank_rational(regular_matrix(a)) != d_) throw InvalidInput("algebra is not a field: a nonzero element is a zero divisor");
  }
}

FiniteExtField FiniteExtField::rationals() { return FiniteExtField({"1"}, {{{Rational(1)}}}, "Q"); }

FiniteExtField FiniteExtField::from_minimal_polynomial(const MultiPoly& f, std::string label) {
  if (f.variables().size() != 1) throw InvalidInput("minimal polynomial must be univariate");
  const int d = f.total_degree();
  if (d < 1 || f.coefficient({d}) != 1) throw InvalidInput("minimal polynomial must be monic of degree >= 1");
  for (const auto& [e, c] : f.terms())
    if (e[0] < 0) throw InvalidInput("minimal polynomial has negative powers");
  const std::string& x = f.variables()[0];
  // powers[k] = coordinates of x^k mod f, k < 2d - 1
  std::vector<std::vector<Rational>> powers;
  std::vector<Rational> cur(d, Rational(0));
  cur[0] = 1;
  for (int k = 0; k < 2 * d - 1; ++k) {
    powers.push_back(cur);
    std::vector<Rational> next(d, Rational(0));
    for (int i = 0; i + 1 < d; ++i) next[i + 1] = cur[i];
    Rational top = cur[d - 1];
    for (int i = 0; i < d; ++i) next[i] -= top * f.coefficient({i});
    cur = std::move(next);
  }
  Constants c(d, std::vector<std::vector<Rational>>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c[i][j] = powers[i + j];
  std::vector<std::string> names{"1"};
  for (int k = 1; k < d; ++k) names.push_back(k == 1 ? x : x + std::to_string(k));
  if (label.empty()) label = "Q[" + x + "]/(" + f.to_string() + ")";
  return FiniteExtField(std::move(names), std::move(c), std::move(label));
}

FiniteExtField FiniteExtField::gaussian_rationals() {
  return from_minimal_polynomial(parse_poly("i^2 + 1"), "Q(i)");
}

FiniteExtField FiniteExtField::cube_root_two() {
  return from_minimal_polynomial(parse_poly("u^3 - 2"), "Q(2^(1/3))");
}

FiniteExtField::Elem FiniteExtField::add(const Elem& a, const Elem& b) const {
  Elem out = check(a);
  check(b);
  for (std::size_t i = 0; i < d_; ++i) out[i] += b[i];
  return out;
}

FiniteExtField::Elem FiniteExtField::sub(const Elem& a, const Elem& b) const {
  Elem out = check(a);
  check(b);
  for (std::size_t i = 0; i < d_; ++i) out[i] -= b[i];
  return out;
}

FiniteExtField::Elem FiniteExtField::neg(const Elem& a) const {
  Elem out = check(a);
  for (auto& x : out) x = -x;
  return out;
}

FiniteExtField::Elem FiniteExtField::mul(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  Elem out = zero();
  for (std::size_t i = 0; i < d_; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational ab = a[i] * b[j];
      for (std::size_t k = 0; k < d_; ++k)
        if (sgn(c_[i][j][k]) != 0) out[k] += ab * c_[i][j][k];
    }
  }
  return out;
}

FiniteExtField::Elem FiniteExtField::inv(const Elem& a) const {
  // x with a * x = 1, i.e. sum_k x_k (b_k a) = b_1
  auto m = transpose(regular_matrix(a));
  auto x = solve(m, basis(0));
  if (!x) throw DivisionByZero("element is not invertible");
  return *x;
}

bool FiniteExtField::is_zero(const Elem& a) const {
  for (const auto& x : check(a))
    if (sgn(x) != 0) return false;
  return true;
}

Matrix<Rational> FiniteExtField::regular_matrix(const Elem& a) const {
  Matrix<Rational> m(d_, d_, Rational(0));
  for (std::size_t k = 0; k < d_; ++k) {
    auto row = mul(basis(k), a);
    for (std::size_t j = 0; j < d_; ++j) m(k, j) = row[j];
  }
  return m;
}

int FiniteExtField::name_index(const std::string& name) const {
  for (std::size_t i = 0; i < d_; ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string FiniteExtField::format(const Elem& a) const {
  check(a);
  std::string out;
  for (std::size_t i = 0; i < d_; ++i) {
    if (sgn(a[i]) == 0) continue;
    Rational c = a[i];
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    std::string term;
    if (i == 0) term = to_string(c);
    else term = (c == 1 ? "" : to_string(c) + "*") + names_[i];
    if (out.empty()) out = (negative ? "-" : "") + term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

FiniteExtField::Elem FiniteExtField::parse(std::string_view text) const {
  return detail::eval_named<FiniteExtField>(*this, parse_poly(text), [&](const std::string& name) {
    int i = name_index(name);
    if (i < 0) throw InvalidInput("unknown basis element '" + name + "' of " + label_);
    return basis(static_cast<std::size_t>(i));
  });
}

FiniteExtField tensor(const FiniteExtField& e1, const FiniteExtField& e2, std::string label) {
  const std::size_t d1 = e1.degree(), d2 = e2.degree(), d = d1 * d2;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      const auto& a = e1.names()[i];
      const auto& b = e2.names()[j];
      if (i == 0) names.push_back(b);
      else if (j == 0) names.push_back(a);
      else names.push_back(a + "_" + b);
    }
  FiniteExtField::Constants c(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, Rational(0))));
  const auto& c1 = e1.constants();
  const auto& c2 = e2.constants();
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t i2 = 0; i2 < d1; ++i2)
        for (std::size_t j2 = 0; j2 < d2; ++j2)
          for (std::size_t k = 0; k < d1; ++k) {
            if (sgn(c1[i][i2][k]) == 0) continue;
            for (std::size_t l = 0; l < d2; ++l)
              c[i * d2 + j][i2 * d2 + j2][k * d2 + l] = c1[i][i2][k] * c2[j][j2][l];
          }
  if (label.empty()) label = e1.descriptor() + "(x)" + e2.descriptor();
  return FiniteExtField(std::move(names), std::move(c), std::move(label));
}

FiniteExtField::Elem embed_left(const FiniteExtField& e1, const FiniteExtField& e2, const FiniteExtField::Elem& a) {
  if (a.size() != e1.degree()) throw InvalidInput("element does not belong to the smaller field");
  FiniteExtField::Elem out(e1.degree() * e2.degree(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i * e2.degree()] = a[i];
  return out;
}

}  // namespace sylvan
