#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sylvan/linalg.hpp"
#include "sylvan/matrix.hpp"
#include "sylvan/poly.hpp"
#include "sylvan/scalars.hpp"

// Coefficient rings R that carry a rank function: matrix algebras M_k(F),
// products F x ... x F, and finite field extensions of Q given by structure
// constants. Each is a FiniteDimAlgebra so that automorphisms can be supplied
// as coordinate matrices.

namespace sylvan {

namespace detail {

std::string_view trim(std::string_view s);
// Splits "a, b, (c, d)" at top-level commas.
std::vector<std::string> split_top_level(std::string_view s, char sep = ',');

// Evaluates a polynomial whose variables name ring elements.
template <RingContext R>
typename R::Elem eval_named(const R& ring, const MultiPoly& p,
                            const std::function<typename R::Elem(const std::string&)>& lookup) {
  std::vector<typename R::Elem> vars;
  for (const auto& v : p.variables()) vars.push_back(lookup(v));
  auto result = ring.zero();
  for (const auto& [e, c] : p.terms()) {
    auto term = ring.from_rational(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw InvalidInput("negative power of '" + p.variables()[i] + "'");
      for (int k = 0; k < e[i]; ++k) term = ring.mul(term, vars[i]);
    }
    result = ring.add(result, term);
  }
  return result;
}

}  // namespace detail

/// M_k(F). Literals: "[[a,b],[c,d]]", a scalar (times the identity), or a
/// polynomial in the matrix units E11, E12, ...
template <FieldContext F = RationalField>
class MatrixRing {
 public:
  using Elem = Matrix<typename F::Elem>;
  using Scalar = typename F::Elem;

  explicit MatrixRing(std::size_t k, F field = F{}) : k_(k), field_(std::move(field)) {
    if (k == 0) throw InvalidInput("matrix ring needs k >= 1");
  }

  std::size_t block() const { return k_; }
  const F& field() const { return field_; }

  Elem zero() const { return Elem(k_, k_, field_.zero()); }
  Elem one() const { return sylvan::identity(field_, k_); }
  Elem unit(std::size_t i, std::size_t j) const {
    auto e = zero();
    e(i, j) = field_.one();
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const { return mat_add(field_, check(a), check(b)); }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem neg(const Elem& a) const {
    return check(a).map([&](const Scalar& x) { return field_.neg(x); });
  }
  Elem mul(const Elem& a, const Elem& b) const { return mat_mul(field_, check(a), check(b)); }
  bool is_zero(const Elem& a) const {
    for (const auto& x : check(a).data())
      if (!field_.is_zero(x)) return false;
    return true;
  }
  bool equal(const Elem& a, const Elem& b) const { return mat_equal(field_, check(a), check(b)); }
  Elem from_rational(const Rational& q) const { return scalar(field_.from_rational(q)); }
  Elem scalar(const Scalar& s) const {
    auto e = zero();
    for (std::size_t i = 0; i < k_; ++i) e(i, i) = s;
    return e;
  }
  std::size_t dim() const { return k_ * k_; }
  std::vector<Scalar> coords(const Elem& a) const { return check(a).data(); }
  Elem from_coords(std::span<const Scalar> c) const {
    if (c.size() != dim()) throw InvalidInput("coordinate vector has wrong length");
    return Elem(k_, k_, std::vector<Scalar>(c.begin(), c.end()));
  }

  std::string format(const Elem& a) const {
    std::string out = "[";
    for (std::size_t i = 0; i < k_; ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < k_; ++j) out += (j ? "," : "") + field_.format(a(i, j));
      out += "]";
    }
    return out + "]";
  }

  Elem parse(std::string_view text) const {
    auto s = detail::trim(text);
    if (s.size() >= 2 && s.substr(0, 2) == "[[") {
      auto rows = detail::split_top_level(s.substr(1, s.size() - 2));
      if (rows.size() != k_) throw ParseError("matrix literal has wrong number of rows", 0);
      auto e = zero();
      for (std::size_t i = 0; i < k_; ++i) {
        auto r = detail::trim(rows[i]);
        if (r.size() < 2 || r.front() != '[' || r.back() != ']') throw ParseError("malformed matrix row", 0);
        auto cells = detail::split_top_level(r.substr(1, r.size() - 2));
        if (cells.size() != k_) throw ParseError("matrix literal has wrong number of columns", 0);
        for (std::size_t j = 0; j < k_; ++j) e(i, j) = field_.parse(cells[j]);
      }
      return e;
    }
    return detail::eval_named<MatrixRing>(*this, parse_poly(s), [&](const std::string& name) {
      if (name.size() == 3 && name[0] == 'E' && std::isdigit(name[1]) && std::isdigit(name[2])) {
        std::size_t i = static_cast<std::size_t>(name[1] - '1'), j = static_cast<std::size_t>(name[2] - '1');
        if (i < k_ && j < k_) return unit(i, j);
      }
      throw InvalidInput("unknown matrix-ring generator '" + name + "'");
    });
  }

  std::string descriptor() const { return "M_" + std::to_string(k_) + "(" + field_.descriptor() + ")"; }

  // Replaces every entry by its k x k block.
  MatrixOver<F> flatten(const Matrix<Elem>& a) const {
    MatrixOver<F> out(a.rows() * k_, a.cols() * k_, field_.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const auto& blk = check(a(i, j));
        for (std::size_t r = 0; r < k_; ++r)
          for (std::size_t c = 0; c < k_; ++c) out(i * k_ + r, j * k_ + c) = blk(r, c);
      }
    return out;
  }

 private:
  const Elem& check(const Elem& a) const {
    if (a.rows() != k_ || a.cols() != k_) throw InvalidInput("matrix-ring entry has the wrong block size");
    return a;
  }

  std::size_t k_;
  F field_;
};

/// F x F x ... x F (k factors). Literals: "(a,b)", a scalar, or a polynomial
/// in the idempotents e1, e2, ...
template <FieldContext F = RationalField>
class ProductRing {
 public:
  using Elem = std::vector<typename F::Elem>;
  using Scalar = typename F::Elem;

  explicit ProductRing(std::size_t k, F field = F{}) : k_(k), field_(std::move(field)) {
    if (k == 0) throw InvalidInput("product ring needs at least one factor");
  }

  std::size_t factors() const { return k_; }
  const F& field() const { return field_; }

  Elem zero() const { return Elem(k_, field_.zero()); }
  Elem one() const { return Elem(k_, field_.one()); }
  Elem idempotent(std::size_t i) const {
    auto e = zero();
    e.at(i) = field_.one();
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const { return zip(a, b, [&](auto& x, auto& y) { return field_.add(x, y); }); }
  Elem sub(const Elem& a, const Elem& b) const { return zip(a, b, [&](auto& x, auto& y) { return field_.sub(x, y); }); }
  Elem mul(const Elem& a, const Elem& b) const { return zip(a, b, [&](auto& x, auto& y) { return field_.mul(x, y); }); }
  Elem neg(const Elem& a) const { return sub(zero(), a); }
  bool is_zero(const Elem& a) const {
    check(a);
    for (const auto& x : a)
      if (!field_.is_zero(x)) return false;
    return true;
  }
  bool equal(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }
  Elem from_rational(const Rational& q) const { return Elem(k_, field_.from_rational(q)); }
  Elem scalar(const Scalar& s) const { return Elem(k_, s); }
  std::size_t dim() const { return k_; }
  std::vector<Scalar> coords(const Elem& a) const { return check(a); }
  Elem from_coords(std::span<const Scalar> c) const {
    if (c.size() != k_) throw InvalidInput("coordinate vector has wrong length");
    return Elem(c.begin(), c.end());
  }

  std::string format(const Elem& a) const {
    std::string out = "(";
    for (std::size_t i = 0; i < k_; ++i) out += (i ? "," : "") + field_.format(a[i]);
    return out + ")";
  }

  Elem parse(std::string_view text) const {
    auto s = detail::trim(text);
    if (!s.empty() && s.front() == '(' && s.back() == ')' && s.find(',') != std::string_view::npos) {
      auto cells = detail::split_top_level(s.substr(1, s.size() - 2));
      if (cells.size() != k_) throw ParseError("tuple literal has wrong number of components", 0);
      Elem e;
      for (const auto& c : cells) e.push_back(field_.parse(c));
      return e;
    }
    return detail::eval_named<ProductRing>(*this, parse_poly(s), [&](const std::string& name) {
      if (name.size() >= 2 && name[0] == 'e') {
        std::size_t i = std::stoul(name.substr(1));
        if (i >= 1 && i <= k_) return idempotent(i - 1);
      }
      throw InvalidInput("unknown product-ring generator '" + name + "'");
    });
  }

  std::string descriptor() const {
    std::string out;
    for (std::size_t i = 0; i < k_; ++i) out += (i ? "x" : "") + field_.descriptor();
    return out;
  }

  // i-th coordinate projection applied entrywise.
  MatrixOver<F> component(const Matrix<Elem>& a, std::size_t i) const {
    return a.map([&](const Elem& e) { return check(e).at(i); });
  }

 private:
  const Elem& check(const Elem& a) const {
    if (a.size() != k_) throw InvalidInput("product-ring entry has the wrong number of components");
    return a;
  }
  template <class Op>
  Elem zip(const Elem& a, const Elem& b, Op op) const {
    check(a);
    check(b);
    Elem out(k_);
    for (std::size_t i = 0; i < k_; ++i) out[i] = op(a[i], b[i]);
    return out;
  }

  std::size_t k_;
  F field_;
};

/// A finite extension E of Q with basis b_1 = 1, b_2, ..., b_d and
/// multiplication b_i b_j = sum_k c_ijk b_k. Elements are coordinate vectors.
class FiniteExtField {
 public:
  using Elem = std::vector<Rational>;
  using Scalar = Rational;
  using Constants = std::vector<std::vector<std::vector<Rational>>>;  // [i][j][k]

  // Validates unit, commutativity, associativity and (by sampling) that
  // every nonzero element is invertible.
  FiniteExtField(std::vector<std::string> names, Constants constants, std::string label = {},
                 std::uint64_t seed = 0);

  // Q itself (degree 1).
  static FiniteExtField rationals();
  // Q[x]/(f) for monic irreducible f; basis 1, x, ..., x^{d-1}. `power_names`
  // defaults to "1", "x", "x^2", ... with x the variable of f.
  static FiniteExtField from_minimal_polynomial(const MultiPoly& f, std::string label = {});
  static FiniteExtField gaussian_rationals();  // Q(i), basis (1, i), i^2 = -1
  static FiniteExtField cube_root_two();       // Q[u]/(u^3 - 2), basis (1, u, u2)

  std::size_t degree() const { return d_; }
  const std::vector<std::string>& names() const { return names_; }
  const Constants& constants() const { return c_; }

  Elem zero() const { return Elem(d_, Rational(0)); }
  Elem one() const { return basis(0); }
  Elem basis(std::size_t i) const {
    auto e = zero();
    e.at(i) = 1;
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const { return check(a) == check(b); }
  Elem from_rational(const Rational& q) const {
    auto e = zero();
    e[0] = q;
    return e;
  }
  Elem scalar(const Scalar& s) const { return from_rational(s); }
  std::size_t dim() const { return d_; }
  std::vector<Scalar> coords(const Elem& a) const { return check(a); }
  Elem from_coords(std::span<const Scalar> c) const {
    if (c.size() != d_) throw InvalidInput("coordinate vector has wrong length");
    return Elem(c.begin(), c.end());
  }
  std::string format(const Elem& a) const;
  Elem parse(std::string_view text) const;
  std::string descriptor() const { return label_; }

  // Row k holds the coordinates of b_k * a (multiplication is commutative,
  // so this is the regular representation up to transposition).
  Matrix<Rational> regular_matrix(const Elem& a) const;

  // Index of a basis name, or -1.
  int name_index(const std::string& name) const;

  bool operator==(const FiniteExtField& other) const { return names_ == other.names_ && c_ == other.c_; }

 private:
  const Elem& check(const Elem& a) const {
    if (a.size() != d_) throw InvalidInput("extension-field element has the wrong degree");
    return a;
  }

  std::size_t d_;
  std::vector<std::string> names_;
  Constants c_;
  std::string label_;
};

// E1 (x) E2 with basis b_i (x) b'_j at index i * deg(E2) + j.
FiniteExtField tensor(const FiniteExtField& e1, const FiniteExtField& e2, std::string label = {});
// Image of a in E1 (x) E2 under x -> x (x) 1.
FiniteExtField::Elem embed_left(const FiniteExtField& e1, const FiniteExtField& e2, const FiniteExtField::Elem& a);

static_assert(FiniteDimAlgebra<MatrixRing<>>);
static_assert(FiniteDimAlgebra<ProductRing<>>);
static_assert(FieldContext<FiniteExtField>);
static_assert(FiniteDimAlgebra<FiniteExtField>);

}  // namespace sylvan
