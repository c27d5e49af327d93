#include "sylvan/scalars.hpp"

#include <array>
#include <cctype>

namespace sylvan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s, std::size_t offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw ParseError("expected digits", offset + i);
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw ParseError("unexpected character", offset + j);
  }
  BigInt v(std::string(s.substr(i)), 10);
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  std::size_t lead = static_cast<std::size_t>(s.data() - text.data());
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, lead));
  BigInt num = parse_integer(trim(s.substr(0, slash)), lead);
  BigInt den = parse_integer(trim(s.substr(slash + 1)), lead + slash + 1);
  if (den == 0) throw DivisionByZero("zero denominator in rational literal");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational checked_div(const Rational& a, const Rational& b) {
  if (sgn(b) == 0) throw DivisionByZero();
  return a / b;
}

namespace modp {

std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p) + ")");
  // extended Euclid on signed 128-bit to avoid overflow
  __int128 t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(unsigned bits, std::mt19937_64& rng) {
  if (bits < 2 || bits > 62) throw InvalidInput("prime bit length must lie in [2, 62]");
  const std::uint64_t lo = 1ULL << (bits - 1);
  const std::uint64_t hi = (1ULL << bits) - 1;
  std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
  for (;;) {
    std::uint64_t candidate = dist(rng) | 1ULL;
    if (bits == 2) candidate = dist(rng);
    if (candidate <= hi && is_prime(candidate)) return candidate;
  }
}

std::uint64_t reduce(const Rational& q, std::uint64_t p) {
  BigInt num = q.get_num() % BigInt(static_cast<unsigned long>(p));
  BigInt den = q.get_den() % BigInt(static_cast<unsigned long>(p));
  if (num < 0) num += static_cast<unsigned long>(p);
  if (den == 0) throw DivisionByZero("denominator vanishes modulo " + std::to_string(p));
  return mul(num.get_ui(), inv(den.get_ui(), p), p);
}

}  // namespace modp

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (1ULL << 63) || !modp::is_prime(p)) throw InvalidInput(std::to_string(p) + " is not a prime below 2^63");
}

PrimeField::Elem PrimeField::inv(Elem a) const { return modp::inv(a, p_); }

PrimeField::Elem PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
}

}  // namespace sylvan
