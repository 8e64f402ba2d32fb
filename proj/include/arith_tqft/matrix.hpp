#ifndef ARITH_TQFT_MATRIX_HPP
#define ARITH_TQFT_MATRIX_HPP

// Dense matrices over an arbitrary commutative scalar ring. A matrix carries a
// zero prototype so that scalars with run-time context (residues mod l) can be
// created without a global modulus.

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "arith_tqft/error.hpp"

namespace arith_tqft {

template <class S>
concept Scalar = std::copyable<S> && std::equality_comparable<S> && requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
};

template <Scalar S>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const S& zero)
      : rows_(rows), cols_(cols), zero_(zero), data_(rows * cols, zero) {}

  static Matrix identity(std::size_t n, const S& zero, const S& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const S& zero() const noexcept { return zero_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error("shape-mismatch", "cannot multiply " + a.shape() + " by " + b.shape());
    Matrix c(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (aik == a.zero_) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("shape-mismatch", "cannot add " + a.shape() + " and " + b.shape());
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.data_[i] + b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("shape-mismatch", "cannot subtract " + a.shape() + " and " + b.shape());
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.data_[i] - b.data_[i];
    return c;
  }

  Matrix scaled(const S& s) const {
    Matrix c = *this;
    for (auto& x : c.data_) x = s * x;
    return c;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == zero_)) return false;
    return true;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  S zero_;
  std::vector<S> data_;
};

/// Kronecker product; the left factor indexes the more significant digits.
template <Scalar S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> c(a.rows() * b.rows(), a.cols() * b.cols(), a.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const S& aij = a(i, j);
      if (aij == a.zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

/// Applies `op` (out_block x in_block) to the middle factor of a state whose
/// row index decomposes as (left, in_block, right): the result is
/// (I_left (x) op (x) I_right) * state, computed without forming the product.
template <Scalar S>
Matrix<S> apply_local(const Matrix<S>& state, const Matrix<S>& op, std::size_t left, std::size_t right) {
  const std::size_t in_block = op.cols(), out_block = op.rows();
  if (state.rows() != left * in_block * right)
    throw Error("shape-mismatch", "local operator does not fit state of shape " + state.shape());
  Matrix<S> out(left * out_block * right, state.cols(), state.zero());
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t mo = 0; mo < out_block; ++mo)
      for (std::size_t mi = 0; mi < in_block; ++mi) {
        const S& w = op(mo, mi);
        if (w == op.zero()) continue;
        for (std::size_t r = 0; r < right; ++r) {
          const std::size_t src = (l * in_block + mi) * right + r;
          const std::size_t dst = (l * out_block + mo) * right + r;
          for (std::size_t c = 0; c < state.cols(); ++c) out(dst, c) = out(dst, c) + w * state(src, c);
        }
      }
  return out;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_MATRIX_HPP
