#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sylvan/concepts.hpp"
#include "sylvan/errors.hpp"

namespace sylvan {

/// Dense row-major matrix. Empty shapes (0 x m, n x 0) are legal.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InvalidInput("matrix data size does not match shape");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <RingContext R>
using MatrixOver = Matrix<typename R::Elem>;

template <RingContext R>
MatrixOver<R> zeros(const R& ring, std::size_t n, std::size_t m) {
  return MatrixOver<R>(n, m, ring.zero());
}

template <RingContext R>
MatrixOver<R> identity(const R& ring, std::size_t n) {
  auto out = zeros(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = ring.one();
  return out;
}

template <RingContext R>
MatrixOver<R> mat_mul(const R& ring, const MatrixOver<R>& a, const MatrixOver<R>& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product shape mismatch");
  auto out = zeros(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ring.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (ring.is_zero(b(k, j))) continue;
        out(i, j) = ring.add(out(i, j), ring.mul(a(i, k), b(k, j)));
      }
    }
  }
  return out;
}

template <RingContext R>
MatrixOver<R> mat_add(const R& ring, const MatrixOver<R>& a, const MatrixOver<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix sum shape mismatch");
  auto out = a;
  for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = ring.add(a.data()[i], b.data()[i]);
  return out;
}

template <RingContext R>
bool mat_equal(const R& ring, const MatrixOver<R>& a, const MatrixOver<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    if (!ring.equal(a.data()[i], b.data()[i])) return false;
  }
  return true;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  std::vector<T> out;
  out.reserve(a.rows() * a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out.push_back(a(i, j));
  return Matrix<T>(a.cols(), a.rows(), std::move(out));
}

// [[a, c], [0, b]]; pass an empty-by-shape `c` of the right size for block_diag.
template <RingContext R>
MatrixOver<R> block_upper(const R& ring, const MatrixOver<R>& a, const MatrixOver<R>& c, const MatrixOver<R>& b) {
  if (c.rows() != a.rows() || c.cols() != b.cols()) throw InvalidInput("off-diagonal block has wrong shape");
  auto out = zeros(ring, a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) out(i, a.cols() + j) = c(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

template <RingContext R>
MatrixOver<R> block_diag(const R& ring, const MatrixOver<R>& a, const MatrixOver<R>& b) {
  return block_upper(ring, a, zeros(ring, a.rows(), b.cols()), b);
}

// out(i, j) = a(row_perm[i], col_perm[j])
template <class T>
Matrix<T> permuted(const Matrix<T>& a, std::span<const std::size_t> row_perm, std::span<const std::size_t> col_perm) {
  if (row_perm.size() != a.rows() || col_perm.size() != a.cols()) throw InvalidInput("permutation size mismatch");
  std::vector<T> out;
  out.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.push_back(a(row_perm[i], col_perm[j]));
  return Matrix<T>(a.rows(), a.cols(), std::move(out));
}

}  // namespace sylvan
