#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sossym/rational.hpp"

namespace sossym {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool is_symmetric() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalVector multiply(const RationalMatrix& m, std::span<const Rational> v);

/// vᵀ M v. Throws std::invalid_argument on a dimension mismatch.
Rational quadratic_form(const RationalMatrix& m, std::span<const Rational> v);

/// Entrywise sum/difference, same shape required.
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);

/// Exact determinant by fraction-based Gaussian elimination.
Rational determinant(RationalMatrix m);

/// Rank by row reduction.
std::size_t matrix_rank(RationalMatrix m);

}  // namespace sossym
