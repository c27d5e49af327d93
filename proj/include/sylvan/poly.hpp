#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sylvan/concepts.hpp"

namespace sylvan {

using Exponents = std::vector<int>;

// Graded-lexicographic order; Laurent exponents allowed (total degree may be negative).
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Variables are kept sorted by name; two polynomials over different variable
/// sets are lifted to the union before any binary operation. No zero
/// coefficient is ever stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly constant(const Rational& c, std::vector<std::string> variables = {});
  static MultiPoly variable(const std::string& name);
  static MultiPoly monomial(const Rational& c, std::vector<std::string> variables, Exponents e);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  // Coefficient of the exponent vector (zero if absent).
  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;

  // Re-express over a superset of the current variables (sorted).
  MultiPoly lifted(const std::vector<std::string>& variables) const;
  // Drops variables that no term uses.
  MultiPoly compacted() const;
  int var_index(const std::string& name) const;

  void add_term(const Exponents& e, const Rational& c);

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const Rational& c) const;
  MultiPoly shifted(const Exponents& e) const;  // multiply by the monomial x^e
  MultiPoly pow(unsigned k) const;

  // Leading term in graded-lex order; throws on the zero polynomial.
  const std::pair<const Exponents, Rational>& leading() const;
  // Componentwise minimum exponent over all terms (zeros for the zero polynomial).
  Exponents min_exponents() const;
  Exponents max_exponents() const;
  // Makes all exponents nonnegative by multiplying with a monomial; returns the shift applied.
  Exponents clear_negative_powers();
  int total_degree() const;

  Rational eval(const std::vector<Rational>& point) const;
  // Evaluation in GF(p); point entries must be nonzero where negative powers occur.
  std::uint64_t eval_mod(const std::vector<std::uint64_t>& point, std::uint64_t p) const;

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

// Parses the textual syntax, e.g. "3*t^2 - 1", "z1^-2*z2^3", "1/2*x + y".
// Division is only permitted by monomials; other quotients raise ParseError.
MultiPoly parse_poly(std::string_view text);

// Univariate helpers over Q (the single variable of the inputs must agree).
std::pair<MultiPoly, MultiPoly> poly_divmod(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

/// Quotient of two polynomials.
///
/// Univariate values are kept fully reduced: numerator and denominator share
/// no common factor and the denominator is monic (monomial denominators are
/// folded into a Laurent numerator). In several variables only the content is
/// normalized and equality is decided by cross-multiplication.
class RatFunc {
 public:
  RatFunc() : num_(), den_(MultiPoly::constant(1)) {}
  RatFunc(MultiPoly num);  // NOLINT(google-explicit-constructor)
  RatFunc(MultiPoly num, MultiPoly den);

  const MultiPoly& numerator() const { return num_; }
  const MultiPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  std::vector<std::string> variables() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  std::string to_string() const;

  // Puts the pair into canonical form; idempotent.
  void normalize();

 private:
  MultiPoly num_;
  MultiPoly den_;
};

RatFunc parse_ratfunc(std::string_view text);

}  // namespace sylvan
