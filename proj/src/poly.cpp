#include "sylvan/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "sylvan/errors.hpp"
#include "sylvan/scalars.hpp"

namespace sylvan {

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return a < b;
}

namespace {

std::vector<std::string> union_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

MultiPoly MultiPoly::constant(const Rational& c, std::vector<std::string> variables) {
  MultiPoly p(std::move(variables));
  p.add_term(Exponents(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p({name});
  p.add_term({1}, Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(const Rational& c, std::vector<std::string> variables, Exponents e) {
  if (e.size() != variables.size()) throw InvalidInput("exponent vector length does not match variable count");
  std::vector<std::pair<std::string, int>> pairs;
  for (std::size_t i = 0; i < e.size(); ++i) pairs.emplace_back(variables[i], e[i]);
  std::sort(pairs.begin(), pairs.end());
  MultiPoly p(std::move(variables));
  if (p.vars_.size() != pairs.size()) throw InvalidInput("duplicate variable names");
  Exponents sorted;
  for (auto& [name, exp] : pairs) sorted.push_back(exp);
  p.add_term(sorted, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

int MultiPoly::var_index(const std::string& name) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
  if (it == vars_.end() || *it != name) return -1;
  return static_cast<int>(it - vars_.begin());
}

MultiPoly MultiPoly::lifted(const std::vector<std::string>& variables) const {
  if (variables == vars_) return *this;
  MultiPoly out(variables);
  std::vector<std::size_t> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    int idx = out.var_index(vars_[i]);
    if (idx < 0) throw InvalidInput("variable '" + vars_[i] + "' missing from target variable set");
    where[i] = static_cast<std::size_t>(idx);
  }
  for (const auto& [e, c] : terms_) {
    Exponents ne(out.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::compacted() const {
  std::vector<std::string> used;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    bool any = std::any_of(terms_.begin(), terms_.end(), [i](const auto& t) { return t.first[i] != 0; });
    if (any) {
      used.push_back(vars_[i]);
      keep.push_back(i);
    }
  }
  if (used.size() == vars_.size()) return *this;
  MultiPoly out(used);
  for (const auto& [e, c] : terms_) {
    Exponents ne;
    for (std::size_t i : keep) ne.push_back(e[i]);
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != vars_.size()) throw InvalidInput("exponent vector length does not match variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  auto vars = union_vars(a.vars_, b.vars_);
  MultiPoly out = a.lifted(vars);
  MultiPoly bb = b.lifted(vars);
  for (const auto& [e, c] : bb.terms_) out.add_term(e, c);
  return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  auto vars = union_vars(a.vars_, b.vars_);
  MultiPoly aa = a.lifted(vars);
  MultiPoly bb = b.lifted(vars);
  MultiPoly out(vars);
  for (const auto& [ea, ca] : aa.terms_) {
    for (const auto& [eb, cb] : bb.terms_) {
      Exponents e(vars.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  auto vars = union_vars(a.vars_, b.vars_);
  return a.lifted(vars).terms_ == b.lifted(vars).terms_;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly out(vars_);
  if (sgn(c) == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

MultiPoly MultiPoly::shifted(const Exponents& s) const {
  if (s.size() != vars_.size()) throw InvalidInput("shift length does not match variable count");
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += s[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(1, vars_);
  MultiPoly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

const std::pair<const Exponents, Rational>& MultiPoly::leading() const {
  if (terms_.empty()) throw InvalidInput("leading term of the zero polynomial");
  return *terms_.rbegin();
}

Exponents MultiPoly::min_exponents() const {
  Exponents m(vars_.size(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponents MultiPoly::max_exponents() const {
  Exponents m(vars_.size(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponents MultiPoly::clear_negative_powers() {
  Exponents lo = min_exponents();
  Exponents shift(lo.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] < 0) {
      shift[i] = -lo[i];
      any = true;
    }
  }
  if (any) *this = shifted(shift);
  return shift;
}

int MultiPoly::total_degree() const {
  int best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
  return best;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size()) throw InvalidInput("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Rational base = point[i];
      if (e[i] < 0) base = checked_div(Rational(1), base);
      BigInt num, den;
      mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e[i])));
      mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e[i])));
      Rational power(num, den);
      power.canonicalize();
      term *= power;
    }
    sum += term;
  }
  return sum;
}

std::uint64_t MultiPoly::eval_mod(const std::vector<std::uint64_t>& point, std::uint64_t p) const {
  if (point.size() != vars_.size()) throw InvalidInput("evaluation point has wrong dimension");
  std::uint64_t sum = 0;
  for (const auto& [e, c] : terms_) {
    std::uint64_t term = modp::reduce(c, p);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::uint64_t base = point[i] % p;
      if (e[i] < 0) base = modp::inv(base, p);
      term = modp::mul(term, modp::pow(base, static_cast<std::uint64_t>(std::abs(e[i])), p), p);
    }
    sum = modp::add(sum, term, p);
  }
  return sum;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    std::string body;
    if (mono.empty()) {
      body = sylvan::to_string(mag);
    } else if (mag == 1) {
      body = mono;
    } else {
      body = sylvan::to_string(mag) + "*" + mono;
    }
    if (first) {
      out = (sgn(c) < 0 ? "-" : "") + body;
      first = false;
    } else {
      out += (sgn(c) < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// univariate Euclid

namespace {

std::string single_variable(const MultiPoly& a, const MultiPoly& b) {
  auto vars = union_vars(a.compacted().variables(), b.compacted().variables());
  if (vars.size() > 1) throw InvalidInput("univariate operation on a multivariate polynomial");
  return vars.empty() ? std::string("t") : vars[0];
}

std::vector<Rational> to_dense(const MultiPoly& p, const std::string& var) {
  MultiPoly q = p.compacted().lifted({var});
  std::vector<Rational> dense;
  for (const auto& [e, c] : q.terms()) {
    if (e[0] < 0) throw InvalidInput("Laurent polynomial in univariate division");
    if (dense.size() <= static_cast<std::size_t>(e[0])) dense.resize(e[0] + 1, Rational(0));
    dense[e[0]] = c;
  }
  return dense;
}

MultiPoly from_dense(const std::vector<Rational>& d, const std::string& var) {
  MultiPoly out(std::vector<std::string>{var});
  for (std::size_t k = 0; k < d.size(); ++k) out.add_term({static_cast<int>(k)}, d[k]);
  return out.compacted();
}

void trim_dense(std::vector<Rational>& d) {
  while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
}

}  // namespace

std::pair<MultiPoly, MultiPoly> poly_divmod(const MultiPoly& a, const MultiPoly& b) {
  std::string var = single_variable(a, b);
  auto num = to_dense(a, var);
  auto den = to_dense(b, var);
  trim_dense(num);
  trim_dense(den);
  if (den.empty()) throw DivisionByZero("polynomial division by zero");
  std::vector<Rational> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
  while (num.size() >= den.size() && !num.empty()) {
    std::size_t shift = num.size() - den.size();
    Rational factor = num.back() / den.back();
    quot[shift] = factor;
    for (std::size_t k = 0; k < den.size(); ++k) num[shift + k] -= factor * den[k];
    num.pop_back();
    trim_dense(num);
  }
  return {from_dense(quot, var), from_dense(num, var)};
}

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly x = a, y = b;
  while (!y.is_zero()) {
    MultiPoly r = poly_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.scaled(checked_div(Rational(1), x.leading().second)).compacted();
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(1)) { normalize(); }

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

std::vector<std::string> RatFunc::variables() const { return union_vars(num_.variables(), den_.variables()); }

void RatFunc::normalize() {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    num_ = MultiPoly();
    den_ = MultiPoly::constant(1);
    return;
  }
  auto vars = union_vars(num_.variables(), den_.variables());
  num_ = num_.lifted(vars);
  den_ = den_.lifted(vars);
  // drop variables used by neither side
  {
    std::vector<std::string> used;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      bool any = std::any_of(num_.terms().begin(), num_.terms().end(), [i](const auto& t) { return t.first[i] != 0; }) ||
                 std::any_of(den_.terms().begin(), den_.terms().end(), [i](const auto& t) { return t.first[i] != 0; });
      if (any) used.push_back(vars[i]);
    }
    if (used.size() != vars.size()) {
      auto project = [&](const MultiPoly& p) {
        MultiPoly out(used);
        for (const auto& [e, c] : p.terms()) {
          Exponents ne;
          for (const auto& name : used) ne.push_back(e[std::lower_bound(vars.begin(), vars.end(), name) - vars.begin()]);
          out.add_term(ne, c);
        }
        return out;
      };
      num_ = project(num_);
      den_ = project(den_);
      vars = used;
    }
  }
  if (vars.size() == 1) {
    Exponents sn = num_.clear_negative_powers();
    Exponents sd = den_.clear_negative_powers();
    int diff = sd[0] - sn[0];  // value = num/den * var^diff
    if (diff > 0) num_ = num_.shifted({diff});
    if (diff < 0) den_ = den_.shifted({-diff});
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = poly_divmod(num_, g).first.lifted(vars);
      den_ = poly_divmod(den_, g).first.lifted(vars);
    }
  }
  if (den_.is_monomial()) {
    const auto& [e, c] = den_.leading();
    Exponents inv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
    num_ = num_.shifted(inv).scaled(checked_div(Rational(1), c));
    den_ = MultiPoly::constant(1, vars);
  } else {
    Rational lc = den_.leading().second;
    num_ = num_.scaled(checked_div(Rational(1), lc));
    den_ = den_.scaled(checked_div(Rational(1), lc));
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.scaled(checked_div(Rational(1), den_.constant_term())).to_string();
  auto wrap = [](const MultiPoly& p) { return p.num_terms() > 1 ? "(" + p.to_string() + ")" : p.to_string(); };
  return wrap(num_) + "/" + wrap(den_);
}

// ---------------------------------------------------------------------------
// parser

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  RatFunc parse_all() {
    RatFunc v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  RatFunc term() {
    RatFunc v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatFunc d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v = v / d;
      } else {
        return v;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!accept('^')) return base;
    skip_ws();
    bool paren = accept('(');
    skip_ws();
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", pos_);
    unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (paren && !accept(')')) throw ParseError("expected ')'", pos_);
    RatFunc p = RatFunc(base.numerator().pow(static_cast<unsigned>(k)), base.denominator().pow(static_cast<unsigned>(k)));
    if (negative) {
      if (p.is_zero()) throw ParseError("negative power of zero", start);
      return RatFunc(MultiPoly::constant(1)) / p;
    }
    return p;
  }

  RatFunc atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(MultiPoly::constant(Rational(BigInt(std::string(s_.substr(start, pos_ - start)), 10))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return RatFunc(MultiPoly::variable(std::string(s_.substr(start, pos_ - start))));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return ExprParser(text).parse_all(); }

MultiPoly parse_poly(std::string_view text) {
  RatFunc r = parse_ratfunc(text);
  if (!r.is_polynomial()) throw ParseError("expression is not a (Laurent) polynomial", 0);
  return r.numerator().scaled(checked_div(Rational(1), r.denominator().constant_term())).compacted();
}

}  // namespace sylvan
