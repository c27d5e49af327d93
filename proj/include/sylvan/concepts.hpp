#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sylvan {

using BigInt = mpz_class;
using Rational = mpq_class;

// A ring is described by a context object: elements are plain values and all
// arithmetic goes through the context, which carries the runtime parameters
// (modulus, block size, structure constants, group tables, ...).
template <class R>
concept RingContext = requires(const R& r, const typename R::Elem& a, const typename R::Elem& b,
                               const Rational& q, std::string_view text) {
  typename R::Elem;
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.add(a, b) } -> std::same_as<typename R::Elem>;
  { r.sub(a, b) } -> std::same_as<typename R::Elem>;
  { r.neg(a) } -> std::same_as<typename R::Elem>;
  { r.mul(a, b) } -> std::same_as<typename R::Elem>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.equal(a, b) } -> std::same_as<bool>;
  { r.from_rational(q) } -> std::same_as<typename R::Elem>;
  { r.format(a) } -> std::same_as<std::string>;
  { r.parse(text) } -> std::same_as<typename R::Elem>;
  { r.descriptor() } -> std::same_as<std::string>;
};

template <class F>
concept FieldContext = RingContext<F> && requires(const F& f, const typename F::Elem& a) {
  { f.inv(a) } -> std::same_as<typename F::Elem>;
};

// A ring that is an algebra over a central scalar field.
template <class R>
concept AlgebraContext = RingContext<R> && requires(const R& r, const typename R::Scalar& s) {
  typename R::Scalar;
  { r.scalar(s) } -> std::same_as<typename R::Elem>;
};

// Finite-dimensional algebra with a fixed basis over its scalar field;
// automorphisms are given as matrices on these coordinates.
template <class R>
concept FiniteDimAlgebra = AlgebraContext<R> &&
    requires(const R& r, const typename R::Elem& a, std::span<const typename R::Scalar> c) {
      { r.dim() } -> std::convertible_to<std::size_t>;
      { r.coords(a) } -> std::same_as<std::vector<typename R::Scalar>>;
      { r.from_coords(c) } -> std::same_as<typename R::Elem>;
    };

}  // namespace sylvan
