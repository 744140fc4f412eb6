#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kcomm/scalar.hpp"

namespace kcomm {

/// Small dense row-major matrix used for vectorized operators and the
/// linear solves behind the sandwich-identity solver.
template <FieldScalar T>
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Dense identity(std::size_t n) {
    Dense m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int<T>(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  friend Dense operator*(const Dense& a, const Dense& b) {
    Dense out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T s(0);
        for (std::size_t l = 0; l < a.cols_; ++l) s = s + a(i, l) * b(l, j);
        out(i, j) = s;
      }
    return out;
  }
  friend std::vector<T> operator*(const Dense& a, const std::vector<T>& v) {
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) out[i] = out[i] + a(i, l) * v[l];
    return out;
  }
  friend bool operator==(const Dense&, const Dense&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <FieldScalar T>
bool approx_equal(const Dense<T>& a, const Dense<T>& b, const Field<T>& field = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!field.eq(a(i, j), b(i, j))) return false;
  return true;
}

namespace detail {

/// In-place row reduction to reduced echelon form; returns pivot columns.
/// Picks the largest-magnitude pivot so float fields stay well conditioned.
template <FieldScalar T>
std::vector<std::size_t> row_reduce(Dense<T>& m, const Field<T>& field) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = row;
    double best_mag = -1.0;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (field.is_zero(m(r, col))) continue;
      const double mag = scalar_traits<T>::magnitude(m(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    if (best_mag < 0.0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
    const T inv = from_int<T>(1) / m(row, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || field.is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = m(r, c) - factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <FieldScalar T>
std::size_t rank(Dense<T> m, const Field<T>& field = {}) {
  return detail::row_reduce(m, field).size();
}

template <FieldScalar T>
std::optional<Dense<T>> inverse(const Dense<T>& m, const Field<T>& field = {}) {
  const std::size_t n = m.rows();
  Dense<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = from_int<T>(1);
  }
  const auto pivots = detail::row_reduce(aug, field);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Dense<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace kcomm
