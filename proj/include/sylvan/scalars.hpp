#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sylvan/concepts.hpp"
#include "sylvan/errors.hpp"

namespace sylvan {

// Parses "a", "-a" or "a/b" (surrounding whitespace allowed) into canonical form.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational checked_div(const Rational& a, const Rational& b);
// num / den in canonical form.
inline Rational ratio(long num, long den) {
  if (den == 0) throw DivisionByZero("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace modp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;  // p < 2^63, no wrap
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);
// Uniform prime with exactly `bits` bits (2 <= bits <= 62).
std::uint64_t random_prime(unsigned bits, std::mt19937_64& rng);
// Image of q in GF(p); throws DivisionByZero when p divides the denominator.
std::uint64_t reduce(const Rational& q, std::uint64_t p);

}  // namespace modp

/// The field of rational numbers.
class RationalField {
 public:
  using Elem = Rational;
  using Scalar = Rational;

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return checked_div(Rational(1), a); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  Elem from_rational(const Rational& q) const { return q; }
  Elem scalar(const Scalar& s) const { return s; }
  std::size_t dim() const { return 1; }
  std::vector<Scalar> coords(const Elem& a) const { return {a}; }
  Elem from_coords(std::span<const Scalar> c) const { return c.empty() ? zero() : c[0]; }
  std::string format(const Elem& a) const { return to_string(a); }
  Elem parse(std::string_view text) const { return parse_rational(text); }
  std::string descriptor() const { return "Q"; }
  bool operator==(const RationalField&) const = default;
};

/// GF(p) for a prime p < 2^63. Elements are residues in [0, p).
class PrimeField {
 public:
  using Elem = std::uint64_t;
  using Scalar = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return modp::add(a, b, p_); }
  Elem sub(Elem a, Elem b) const { return modp::sub(a, b, p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return modp::mul(a, b, p_); }
  Elem inv(Elem a) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  Elem from_int(std::int64_t v) const;
  Elem from_rational(const Rational& q) const { return modp::reduce(q, p_); }
  Elem scalar(Scalar s) const { return s % p_; }
  std::size_t dim() const { return 1; }
  std::vector<Scalar> coords(Elem a) const { return {a}; }
  Elem from_coords(std::span<const Scalar> c) const { return c.empty() ? 0 : c[0] % p_; }
  std::string format(Elem a) const { return std::to_string(a); }
  Elem parse(std::string_view text) const { return from_rational(parse_rational(text)); }
  std::string descriptor() const { return "GF(" + std::to_string(p_) + ")"; }
  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

static_assert(FieldContext<RationalField>);
static_assert(FieldContext<PrimeField>);
static_assert(FiniteDimAlgebra<RationalField>);

}  // namespace sylvan
