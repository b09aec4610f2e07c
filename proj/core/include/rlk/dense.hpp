#pragma once

//
// Dense vectors and matrices. Matrices are stored column-major; both
// types have fixed dimensions once constructed.
//

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rlk/error.hpp"
#include "rlk/scalar.hpp"

namespace rlk {

template <class T>
class DenseVector {
public:
  using value_type = T;

  DenseVector() = default;
  explicit DenseVector(std::size_t n, const T& fill = T{}) : data_(n, fill) {}
  DenseVector(std::initializer_list<T> init) : data_(init) {}
  explicit DenseVector(std::vector<T> data) : data_(std::move(data)) {}

  std::size_t
  size() const noexcept {
    return data_.size();
  }

  T&
  operator[](std::size_t i) noexcept {
    assert(i < data_.size());
    return data_[i];
  }
  const T&
  operator[](std::size_t i) const noexcept {
    assert(i < data_.size());
    return data_[i];
  }

  T&
  at(std::size_t i) {
    if (i >= data_.size()) {
      throw DimensionError("vector index " + std::to_string(i) + " out of range");
    }
    return data_[i];
  }
  const T&
  at(std::size_t i) const {
    return const_cast<DenseVector*>(this)->at(i);
  }

  std::span<T>
  span() noexcept {
    return data_;
  }
  std::span<const T>
  span() const noexcept {
    return data_;
  }

  T*
  data() noexcept {
    return data_.data();
  }
  const T*
  data() const noexcept {
    return data_.data();
  }

  auto
  begin() noexcept {
    return data_.begin();
  }
  auto
  end() noexcept {
    return data_.end();
  }
  auto
  begin() const noexcept {
    return data_.begin();
  }
  auto
  end() const noexcept {
    return data_.end();
  }

  const std::vector<T>&
  values() const noexcept {
    return data_;
  }

  friend bool
  operator==(const DenseVector&, const DenseVector&) = default;

private:
  std::vector<T> data_;
};

template <class T>
class DenseMatrix {
public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_{rows}
      , cols_{cols}
      , data_(rows * cols, fill) {}

  /// Row-major nested initializer, for tests and small literals.
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) : rows_{rows.size()} {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.assign(rows_ * cols_, T{});
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw DimensionError("ragged matrix initializer");
      }
      std::size_t j = 0;
      for (const auto& v : row) {
        (*this)(i, j++) = v;
      }
      ++i;
    }
  }

  static DenseMatrix
  identity(std::size_t n) {
    DenseMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      I(i, i) = T{1.0};
    }
    return I;
  }

  std::size_t
  rows() const noexcept {
    return rows_;
  }
  std::size_t
  cols() const noexcept {
    return cols_;
  }
  bool
  square() const noexcept {
    return rows_ == cols_;
  }

  T&
  operator()(std::size_t i, std::size_t j) noexcept {
    assert(i < rows_ && j < cols_);
    return data_[j * rows_ + i];
  }
  const T&
  operator()(std::size_t i, std::size_t j) const noexcept {
    assert(i < rows_ && j < cols_);
    return data_[j * rows_ + i];
  }

  T&
  at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) {
      throw DimensionError("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                           ") out of range");
    }
    return (*this)(i, j);
  }
  const T&
  at(std::size_t i, std::size_t j) const {
    return const_cast<DenseMatrix*>(this)->at(i, j);
  }

  std::span<T>
  col(std::size_t j) noexcept {
    assert(j < cols_);
    return {data_.data() + j * rows_, rows_};
  }
  std::span<const T>
  col(std::size_t j) const noexcept {
    assert(j < cols_);
    return {data_.data() + j * rows_, rows_};
  }

  T*
  data() noexcept {
    return data_.data();
  }
  const T*
  data() const noexcept {
    return data_.data();
  }

  friend bool
  operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<T> data_;
};

template <class R>
using CVector = DenseVector<Complex<R>>;
template <class R>
using CMatrix = DenseMatrix<Complex<R>>;
template <class R>
using RVector = DenseVector<R>;
template <class R>
using RMatrix = DenseMatrix<R>;

} // namespace rlk
