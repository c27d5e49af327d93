#include "sylvan/extensions.hpp"

#include <cctype>


namespace sylvan::detail {

namespace {

std::vector<SplitTerm> split_poly(std::string_view text,
                                  const std::function<bool(const std::string&)>& is_basis_var) {
  MultiPoly p = parse_poly(text);
  const auto& vars = p.variables();
  std::vector<SplitTerm> out;
  for (const auto& [e, c] : p.terms()) {
    SplitTerm t{c, {}, {}, {}};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (is_basis_var(vars[i])) {
        t.basis_powers.emplace_back(vars[i], e[i]);
      } else {
        if (!t.coeff_monomial.empty()) t.coeff_monomial += "*";
        t.coeff_monomial += vars[i] + (e[i] == 1 ? "" : "^" + std::to_string(e[i]));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

// A factor is a coefficient literal when it is bracketed, or parenthesized
// with a comma at depth one.
bool is_literal(std::string_view f) {
  if (f.empty()) return false;
  if (f.front() == '[') return true;
  if (f.front() != '(' || f.back() != ')') return false;
  int depth = 0;
  for (char ch : f) {
    if (ch == '(' || ch == '[') ++depth;
    else if (ch == ')' || ch == ']') --depth;
    else if (ch == ',' && depth == 1) return true;
  }
  return false;
}

}  // namespace

std::vector<SplitTerm> split_terms(std::string_view text,
                                   const std::function<bool(const std::string&)>& is_basis_var) {
  if (text.find('[') == std::string_view::npos && text.find(',') == std::string_view::npos)
    return split_poly(text, is_basis_var);
  // Split at top-level '+'/'-' (not after '^'), then pull literal factors out
  // of each term and hand the rest to the polynomial parser.
  std::vector<std::pair<bool, std::string_view>> terms;
  int depth = 0;
  std::size_t start = 0;
  bool negative = false;
  auto flush = [&](std::size_t end) {
    auto t = trim(text.substr(start, end - start));
    if (!t.empty()) terms.emplace_back(negative, t);
    else if (end != 0 && end < text.size()) throw ParseError("empty term", end);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '(' || ch == '[') ++depth;
    else if (ch == ')' || ch == ']') {
      if (--depth < 0) throw ParseError("unbalanced bracket", i);
    } else if ((ch == '+' || ch == '-') && depth == 0) {
      std::size_t j = i;
      while (j > 0 && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
      if (j > 0 && (text[j - 1] == '^' || text[j - 1] == '*' || text[j - 1] == '/')) continue;
      flush(i);
      negative = ch == '-';
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced bracket", text.size());
  flush(text.size());
  std::vector<SplitTerm> out;
  for (const auto& [neg, term] : terms) {
    std::vector<std::string> literals;
    std::string rest = neg ? "-1" : "1";
    int d = 0;
    std::size_t s = 0;
    for (std::size_t i = 0; i <= term.size(); ++i) {
      if (i < term.size()) {
        char ch = term[i];
        if (ch == '(' || ch == '[') ++d;
        else if (ch == ')' || ch == ']') --d;
        if (ch != '*' || d != 0) continue;
      }
      auto f = trim(term.substr(s, i - s));
      if (is_literal(f)) literals.emplace_back(f);
      else rest += "*(" + std::string(f) + ")";
      s = i + 1;
    }
    for (auto& t : split_poly(rest, is_basis_var)) {
      t.coeff_literals = literals;
      out.push_back(std::move(t));
    }
  }
  return out;
}

Matrix<Rational> mat_mul_q(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  return mat_mul(RationalField{}, a, b);
}

std::vector<Rational> mat_vec_q(const Matrix<Rational>& a, const std::vector<Rational>& v) {
  if (a.cols() != v.size()) throw InvalidInput("matrix-vector shape mismatch");
  std::vector<Rational> out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) out[i] += a(i, j) * v[j];
  return out;
}

Matrix<Rational> mat_inverse_q(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidInput("only square matrices are invertible");
  Matrix<Rational> m = a;
  auto inv = identity(RationalField{}, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m(piv, c)) == 0) ++piv;
    if (piv == n) throw InvalidInput("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    Rational p = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace sylvan::detail
