#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sylvan/group.hpp"
#include "sylvan/rank_functions.hpp"
#include "sylvan/rings.hpp"

// Extensions S of a coefficient ring R with a distinguished basis U:
//   CrossedProduct<R>  R*G for G = Z^d or a finite group, twisted by an
//                      action sigma and a 2-cocycle u;
//   TensorExt<R>       E (x) R[t_1..t_r] for a finite extension E of Q.
// Elements are finitely supported maps U-index -> R, ordered by index.

namespace sylvan {

template <class Coeff>
using ExtElem = std::map<Index, Coeff>;

// Parsed text split into (coefficient monomial text, U-index part) per term.
namespace detail {

struct SplitTerm {
  Rational scalar;
  std::string coeff_monomial;  // empty when the coefficient is scalar
  std::vector<std::string> coeff_literals;  // "(1,0)", "[[0,1],[1,0]]": parsed by the coefficient ring
  std::vector<std::pair<std::string, int>> basis_powers;
};

// Separates the variables of each term of `text` into those accepted by
// `is_basis_var` and the rest (handed to the coefficient ring's parser).
std::vector<SplitTerm> split_terms(std::string_view text, const std::function<bool(const std::string&)>& is_basis_var);

Matrix<Rational> mat_mul_q(const Matrix<Rational>& a, const Matrix<Rational>& b);
Matrix<Rational> mat_inverse_q(const Matrix<Rational>& a);  // throws InvalidInput if singular
std::vector<Rational> mat_vec_q(const Matrix<Rational>& a, const std::vector<Rational>& v);

template <RingContext R>
std::string format_terms(const R& ring, const ExtElem<typename R::Elem>& a,
                         const std::function<std::string(const Index&)>& basis_name) {
  if (a.empty()) return "0";
  std::string out;
  for (const auto& [idx, c] : a) {
    std::string name = basis_name(idx);
    std::string term;
    bool negative = false;
    if constexpr (std::is_same_v<typename R::Elem, Rational>) {
      Rational v = c;
      negative = sgn(v) < 0;
      if (negative) v = -v;
      if (name == "1") term = to_string(v);
      else term = (v == 1 ? "" : to_string(v) + "*") + name;
    } else {
      std::string cs = ring.format(c);
      bool plain = ring.equal(c, ring.one());
      bool wrap = cs.find_first_of("+- ") != std::string::npos && cs.front() != '(' && cs.front() != '[';
      if (wrap) cs = "(" + cs + ")";
      if (name == "1") term = cs;
      else term = plain ? name : cs + "*" + name;
    }
    if (out.empty()) out = (negative ? "-" : "") + term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace detail

/// Twisted crossed product R*G. Multiplication:
///   (f s)(g t) = f sigma_s(g) u(s,t) (st).
/// sigma is given by coordinate matrices over Q (column j = image of the j-th
/// basis vector of R): one per element for finite G, one per generator for Z^d.
/// Cocycles are supported for finite G only.
template <FiniteDimAlgebra R>
class CrossedProduct {
  static_assert(std::is_same_v<typename R::Scalar, Rational>, "crossed products need a Q-algebra");

 public:
  using Base = R;
  using Coeff = typename R::Elem;
  using Elem = ExtElem<Coeff>;

  CrossedProduct(R ring, Group group, std::vector<Matrix<Rational>> action = {},
                 std::vector<std::vector<Coeff>> cocycle = {}, std::uint64_t seed = 0, int samples = 2000)
      : ring_(std::move(ring)), group_(std::move(group)), action_(std::move(action)), cocycle_(std::move(cocycle)) {
    validate(seed, samples);
  }

  const R& base() const { return ring_; }
  const Group& group() const { return group_; }
  bool trivial_action() const { return action_.empty(); }
  bool trivial_cocycle() const { return cocycle_.empty(); }

  Matrix<Rational> sigma_matrix(const Index& g) const {
    group_.check(g);
    const std::size_t k = ring_.dim();
    if (action_.empty()) return identity(RationalField{}, k);
    if (group_.is_finite()) return action_[g[0]];
    auto out = identity(RationalField{}, k);
    for (int i = 0; i < group_.rank(); ++i) {
      int e = g[i];
      Matrix<Rational> base = e < 0 ? inverses_[i] : action_[i];
      for (unsigned p = static_cast<unsigned>(std::abs(e)); p; p >>= 1) {
        if (p & 1) out = detail::mat_mul_q(out, base);
        if (p > 1) base = detail::mat_mul_q(base, base);
      }
    }
    return out;
  }

  Coeff sigma_apply(const Index& g, const Coeff& a) const {
    if (action_.empty()) return a;
    return apply_matrix(sigma_matrix(g), a);
  }
  Coeff apply_matrix(const Matrix<Rational>& m, const Coeff& a) const {
    auto v = detail::mat_vec_q(m, ring_.coords(a));
    return ring_.from_coords(v);
  }

  Coeff cocycle(const Index& s, const Index& t) const {
    if (cocycle_.empty()) return ring_.one();
    return cocycle_[s[0]][t[0]];
  }

  // ---- RingContext
  Elem zero() const { return {}; }
  Elem one() const { return monomial(group_.identity(), ring_.one()); }
  Elem monomial(const Index& g, const Coeff& c) const {
    group_.check(g);
    Elem out;
    if (!ring_.is_zero(c)) out.emplace(g, c);
    return out;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (const auto& [idx, c] : b) accumulate(out, idx, c);
    return out;
  }
  Elem neg(const Elem& a) const {
    Elem out;
    for (const auto& [idx, c] : a) out.emplace(idx, ring_.neg(c));
    return out;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem out;
    for (const auto& [s, f] : a) {
      const bool act = !action_.empty() && !group_.is_identity(s);
      Matrix<Rational> sig;
      if (act) sig = sigma_matrix(s);
      for (const auto& [t, g] : b) {
        Coeff c = ring_.mul(f, act ? apply_matrix(sig, g) : g);
        if (!cocycle_.empty()) c = ring_.mul(c, cocycle(s, t));
        accumulate(out, group_.mul(s, t), c);
      }
    }
    return out;
  }
  // (1 * g) * a, used row by row when compressing.
  Elem left_mul_basis(const Index& g, const Elem& a) const {
    const bool act = !action_.empty() && !group_.is_identity(g);
    Matrix<Rational> sig;
    if (act) sig = sigma_matrix(g);
    Elem out;
    for (const auto& [t, c] : a) {
      Coeff v = act ? apply_matrix(sig, c) : c;
      if (!cocycle_.empty()) v = ring_.mul(v, cocycle(g, t));
      accumulate(out, group_.mul(g, t), v);
    }
    return out;
  }
  // Products of basis elements up to units (cocycle values are absorbed).
  std::vector<std::pair<Index, Rational>> basis_product(const Index& a, const Index& b) const {
    return {{group_.mul(a, b), Rational(1)}};
  }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool equal(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }
  Elem from_rational(const Rational& q) const { return monomial(group_.identity(), ring_.from_rational(q)); }
  Elem from_base(const Coeff& c) const { return monomial(group_.identity(), c); }

  // Adjoint for coefficient rings with the identity involution:
  //   (f s)* = u(s^-1, s) sigma_{s^-1}(f) s^-1.
  Elem star(const Elem& a) const {
    Elem out;
    for (const auto& [s, f] : a) {
      Index si = group_.inv(s);
      accumulate(out, si, ring_.mul(cocycle(si, s), sigma_apply(si, f)));
    }
    return out;
  }

  std::string format(const Elem& a) const {
    return detail::format_terms(ring_, a, [&](const Index& g) { return group_.name(g); });
  }

  // Monomials in the group generators denote basis elements, e.g. "1 - z",
  // "2 - z - z^-1", "1 + s + s^2", "e1*s + (0,1)"; remaining variables are
  // handed to the coefficient ring. Several generators in one term multiply
  // in name order; the cocycle is not applied inside a single monomial.
  Elem parse(std::string_view text) const {
    const auto& gens = group_.generators();
    auto terms = detail::split_terms(text, [&](const std::string& v) { return gens.count(v) > 0; });
    Elem out;
    for (const auto& t : terms) {
      Index g = group_.identity();
      for (const auto& [name, power] : t.basis_powers) {
        Index gen = gens.at(name);
        if (power < 0) gen = group_.inv(gen);
        for (int k = 0; k < std::abs(power); ++k) g = group_.mul(g, gen);
      }
      Coeff c = ring_.from_rational(t.scalar);
      if (!t.coeff_monomial.empty()) c = ring_.mul(c, ring_.parse(t.coeff_monomial));
      for (const auto& lit : t.coeff_literals) c = ring_.mul(c, ring_.parse(lit));
      accumulate(out, g, c);
    }
    return out;
  }

  std::string descriptor() const {
    return ring_.descriptor() + "*" + group_.descriptor() + (action_.empty() ? "" : "[twisted]") +
           (cocycle_.empty() ? "" : "[cocycle]");
  }

  // Checks rk(sigma_g(M)) = rk(M) on random matrices for every element of a
  // finite group, or the generators and their inverses of Z^d. Returns the
  // first offending element, or nullopt.
  std::optional<Index> find_rank_violation(const RankFunction<R>& rk, const ElementSampler<R>& sample, int trials,
                                           std::uint64_t seed) const {
    std::vector<Index> probes;
    if (group_.is_finite()) probes = group_.elements();
    else
      for (const auto& [name, g] : group_.generators()) {
        probes.push_back(g);
        probes.push_back(group_.inv(g));
      }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, 4);
    for (const auto& g : probes) {
      auto sig = sigma_matrix(g);
      for (int t = 0; t < trials; ++t) {
        Matrix<Coeff> m(size(rng), size(rng), ring_.zero());
        for (auto& x : m.data()) x = sample(rng);
        auto image = m.map([&](const Coeff& c) { return apply_matrix(sig, c); });
        if (rk(image) != rk(m)) return g;
      }
    }
    return std::nullopt;
  }

 private:
  void accumulate(Elem& out, const Index& idx, const Coeff& c) const {
    if (ring_.is_zero(c)) return;
    auto it = out.find(idx);
    if (it == out.end()) {
      out.emplace(idx, c);
      return;
    }
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) out.erase(it);
  }

  bool is_unit(const Coeff& a) const {
    const std::size_t k = ring_.dim();
    Matrix<Rational> m(k, k, Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Rational> e(k, Rational(0));
      e[j] = 1;
      auto col = ring_.coords(ring_.mul(a, ring_.from_coords(e)));
      for (std::size_t i = 0; i < k; ++i) m(i, j) = col[i];
    }
    return rank_rational(m) == k;
  }

  void validate(std::uint64_t seed, int samples) {
    const std::size_t k = ring_.dim();
    std::vector<Coeff> basis;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Rational> e(k, Rational(0));
      e[j] = 1;
      basis.push_back(ring_.from_coords(e));
    }
    auto check_automorphism = [&](const Matrix<Rational>& m, const std::string& what) {
      if (m.rows() != k || m.cols() != k) throw InvalidInput(what + ": action matrix has the wrong size");
      if (rank_rational(m) != k) throw InvalidInput(what + ": action matrix is singular");
      if (!ring_.equal(apply_matrix(m, ring_.one()), ring_.one())) throw InvalidInput(what + ": action does not fix 1");
      for (const auto& a : basis)
        for (const auto& b : basis)
          if (!ring_.equal(apply_matrix(m, ring_.mul(a, b)), ring_.mul(apply_matrix(m, a), apply_matrix(m, b))))
            throw InvalidInput(what + ": action is not multiplicative");
    };

    if (!group_.is_finite()) {
      if (!cocycle_.empty()) throw InvalidInput("cocycles are only supported for finite groups");
      if (!action_.empty()) {
        if (static_cast<int>(action_.size()) != group_.rank())
          throw InvalidInput("Z^d action needs one matrix per generator");
        for (std::size_t i = 0; i < action_.size(); ++i) {
          check_automorphism(action_[i], "generator " + std::to_string(i + 1));
          inverses_.push_back(detail::mat_inverse_q(action_[i]));
        }
        // trivial cocycle: sigma_s sigma_t = sigma_st forces commuting generators
        for (std::size_t i = 0; i < action_.size(); ++i)
          for (std::size_t j = i + 1; j < action_.size(); ++j)
            if (detail::mat_mul_q(action_[i], action_[j]).data() != detail::mat_mul_q(action_[j], action_[i]).data())
              throw InvalidInput("generator actions do not commute");
      }
      return;
    }

    const int n = group_.order();
    const Index e = group_.identity();
    if (!action_.empty()) {
      if (static_cast<int>(action_.size()) != n) throw InvalidInput("finite-group action needs one matrix per element");
      if (action_[e[0]].data() != identity(RationalField{}, k).data())
        throw InvalidInput("sigma of the identity element is not the identity");
      for (int g = 0; g < n; ++g) check_automorphism(action_[g], "element " + group_.name({g}));
    }
    if (!cocycle_.empty()) {
      if (static_cast<int>(cocycle_.size()) != n) throw InvalidInput("cocycle table has the wrong size");
      for (const auto& row : cocycle_) {
        if (static_cast<int>(row.size()) != n) throw InvalidInput("cocycle table has the wrong size");
        for (const auto& v : row)
          if (!is_unit(v)) throw InvalidInput("cocycle value is not a unit");
      }
      for (int s = 0; s < n; ++s)
        if (!ring_.equal(cocycle_[e[0]][s], ring_.one()) || !ring_.equal(cocycle_[s][e[0]], ring_.one()))
          throw InvalidInput("cocycle is not normalized: u(e,s) = u(s,e) = 1 fails");
    }
    if (action_.empty() && cocycle_.empty()) return;

    auto twisted_ok = [&](int s, int t) {
      // sigma_s sigma_t (a) u(s,t) = u(s,t) sigma_st (a) on a basis of R
      Index st = group_.mul({s}, {t});
      Coeff u = cocycle({s}, {t});
      for (const auto& a : basis) {
        Coeff lhs = ring_.mul(sigma_apply({s}, sigma_apply({t}, a)), u);
        Coeff rhs = ring_.mul(u, sigma_apply(st, a));
        if (!ring_.equal(lhs, rhs)) return false;
      }
      return true;
    };
    auto cocycle_ok = [&](int g, int s, int t) {
      Index st = group_.mul({s}, {t});
      Index gs = group_.mul({g}, {s});
      Coeff lhs = ring_.mul(sigma_apply({g}, cocycle({s}, {t})), cocycle({g}, st));
      Coeff rhs = ring_.mul(cocycle({g}, {s}), cocycle(gs, {t}));
      return ring_.equal(lhs, rhs);
    };
    if (n <= 16) {
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
          if (!twisted_ok(s, t)) throw InvalidInput("sigma_s sigma_t = Ad(u(s,t)) sigma_st fails");
          for (int g = 0; g < n; ++g)
            if (!cocycle_ok(g, s, t)) throw InvalidInput("cocycle identity fails");
        }
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int i = 0; i < samples; ++i) {
        int g = pick(rng), s = pick(rng), t = pick(rng);
        if (!twisted_ok(s, t)) throw InvalidInput("sigma_s sigma_t = Ad(u(s,t)) sigma_st fails (sampled, seed " + std::to_string(seed) + ")");
        if (!cocycle_ok(g, s, t)) throw InvalidInput("cocycle identity fails (sampled, seed " + std::to_string(seed) + ")");
      }
    }
  }

  R ring_;
  Group group_;
  std::vector<Matrix<Rational>> action_;
  std::vector<Matrix<Rational>> inverses_;
  std::vector<std::vector<Coeff>> cocycle_;
};

/// E (x)_Q R[t_1..t_r] with basis b_j t^e, index {j, e_1, ..., e_r}. With E = Q
/// and one variable this is the polynomial ring R[t].
template <RingContext R>
class TensorExt {
 public:
  using Base = R;
  using Coeff = typename R::Elem;
  using Elem = ExtElem<Coeff>;

  TensorExt(R ring, FiniteExtField field, std::vector<std::string> variables)
      : ring_(std::move(ring)), field_(std::move(field)), vars_(std::move(variables)) {
    for (const auto& v : vars_)
      if (field_.name_index(v) >= 0) throw InvalidInput("variable '" + v + "' clashes with a basis name");
  }
  // R[t_1..t_r].
  TensorExt(R ring, std::vector<std::string> variables)
      : TensorExt(std::move(ring), FiniteExtField::rationals(), std::move(variables)) {}

  const R& base() const { return ring_; }
  const FiniteExtField& field() const { return field_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t field_degree() const { return field_.degree(); }

  void check(const Index& idx) const {
    if (idx.size() != 1 + vars_.size()) throw InvalidInput("index has the wrong length");
    if (idx[0] < 0 || idx[0] >= static_cast<int>(field_.degree())) throw InvalidInput("basis index out of range");
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (idx[i] < 0) throw InvalidInput("negative exponent in a polynomial extension");
  }

  Elem zero() const { return {}; }
  Elem one() const { return from_base(ring_.one()); }
  Elem monomial(const Index& idx, const Coeff& c) const {
    check(idx);
    Elem out;
    if (!ring_.is_zero(c)) out.emplace(idx, c);
    return out;
  }
  Elem from_base(const Coeff& c) const { return monomial(Index(1 + vars_.size(), 0), c); }
  Elem from_rational(const Rational& q) const { return from_base(ring_.from_rational(q)); }
  // Embeds x in E as sum_j x_j b_j.
  Elem from_field(const FiniteExtField::Elem& x) const {
    Elem out;
    for (std::size_t j = 0; j < x.size(); ++j) {
      Index idx(1 + vars_.size(), 0);
      idx[0] = static_cast<int>(j);
      accumulate(out, idx, ring_.from_rational(x[j]));
    }
    return out;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (const auto& [idx, c] : b) accumulate(out, idx, c);
    return out;
  }
  Elem neg(const Elem& a) const {
    Elem out;
    for (const auto& [idx, c] : a) out.emplace(idx, ring_.neg(c));
    return out;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem out;
    for (const auto& [x, f] : a)
      for (const auto& [y, g] : b) {
        Coeff fg = ring_.mul(f, g);
        for (const auto& [idx, c] : basis_product(x, y)) accumulate(out, idx, ring_.mul(ring_.from_rational(c), fg));
      }
    return out;
  }
  Elem left_mul_basis(const Index& x, const Elem& a) const {
    Elem out;
    for (const auto& [y, g] : a)
      for (const auto& [idx, c] : basis_product(x, y))
        accumulate(out, idx, c == 1 ? g : ring_.mul(ring_.from_rational(c), g));
    return out;
  }
  std::vector<std::pair<Index, Rational>> basis_product(const Index& x, const Index& y) const {
    std::vector<std::pair<Index, Rational>> out;
    const auto& cs = field_.constants()[x[0]][y[0]];
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (sgn(cs[k]) == 0) continue;
      Index idx(x.size());
      idx[0] = static_cast<int>(k);
      for (std::size_t i = 1; i < x.size(); ++i) idx[i] = x[i] + y[i];
      out.emplace_back(std::move(idx), cs[k]);
    }
    return out;
  }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool equal(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }

  std::string basis_name(const Index& idx) const {
    std::string out = idx[0] == 0 ? "" : field_.names()[idx[0]];
    for (std::size_t i = 1; i < idx.size(); ++i) {
      if (idx[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += vars_[i - 1] + (idx[i] == 1 ? "" : "^" + std::to_string(idx[i]));
    }
    return out.empty() ? "1" : out;
  }
  std::string format(const Elem& a) const {
    return detail::format_terms(ring_, a, [&](const Index& idx) { return basis_name(idx); });
  }
  Elem parse(std::string_view text) const {
    auto is_basis = [&](const std::string& v) {
      return field_.name_index(v) > 0 || std::find(vars_.begin(), vars_.end(), v) != vars_.end();
    };
    Elem out;
    for (const auto& t : detail::split_terms(text, is_basis)) {
      Elem term = from_base(ring_.from_rational(t.scalar));
      auto c = ring_.from_rational(t.scalar);
      if (!t.coeff_monomial.empty()) c = ring_.mul(c, ring_.parse(t.coeff_monomial));
      for (const auto& lit : t.coeff_literals) c = ring_.mul(c, ring_.parse(lit));
      term = from_base(c);
      for (const auto& [name, power] : t.basis_powers) {
        if (power < 0) throw InvalidInput("negative power of '" + name + "' in a polynomial extension");
        Index idx(1 + vars_.size(), 0);
        int fi = field_.name_index(name);
        if (fi > 0) idx[0] = fi;
        else idx[1 + (std::find(vars_.begin(), vars_.end(), name) - vars_.begin())] = 1;
        Elem gen = monomial(idx, ring_.one());
        for (int k = 0; k < power; ++k) term = mul(term, gen);
      }
      out = add(out, term);
    }
    return out;
  }
  std::string descriptor() const {
    std::string out = ring_.descriptor();
    if (field_.degree() > 1) out += "(x)" + field_.descriptor();
    if (!vars_.empty()) {
      out += "[";
      for (std::size_t i = 0; i < vars_.size(); ++i) out += (i ? "," : "") + vars_[i];
      out += "]";
    }
    return out;
  }

 private:
  void accumulate(Elem& out, const Index& idx, const Coeff& c) const {
    if (ring_.is_zero(c)) return;
    auto it = out.find(idx);
    if (it == out.end()) {
      out.emplace(idx, c);
      return;
    }
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) out.erase(it);
  }

  R ring_;
  FiniteExtField field_;
  std::vector<std::string> vars_;
};

// Extension rings usable by the window machinery.
template <class S>
concept ExtensionContext = RingContext<S> && requires(const S& s, const Index& i, const typename S::Elem& a) {
  typename S::Base;
  { s.base() } -> std::convertible_to<const typename S::Base&>;
  { s.left_mul_basis(i, a) } -> std::same_as<typename S::Elem>;
  { s.basis_product(i, i) } -> std::same_as<std::vector<std::pair<Index, Rational>>>;
};

static_assert(ExtensionContext<CrossedProduct<RationalField>>);
static_assert(ExtensionContext<TensorExt<RationalField>>);

}  // namespace sylvan
