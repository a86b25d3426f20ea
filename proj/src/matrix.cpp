#include "sossym/matrix.hpp"

#include <utility>

namespace sossym {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalVector multiply(const RationalMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.cols()) throw std::invalid_argument("matrix-vector dimension mismatch");
  RationalVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational acc = 0;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(v[j]) != 0 && sgn(r[j]) != 0) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

Rational quadratic_form(const RationalMatrix& m, std::span<const Rational> v) {
  if (!m.square() || v.size() != m.rows()) throw std::invalid_argument("quadratic form dimension mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(v[i]) == 0) continue;
    Rational acc = 0;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(v[j]) != 0 && sgn(r[j]) != 0) acc += r[j] * v[j];
    total += v[i] * acc;
  }
  return total;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

namespace {

// Reduces m in place to row echelon form; returns (rank, determinant sign-tracked product).
std::pair<std::size_t, Rational> eliminate(RationalMatrix& m) {
  std::size_t rank = 0;
  Rational det = 1;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) {
      det = 0;
      continue;
    }
    if (pivot != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
      det = -det;
    }
    const Rational p = m(rank, col);
    det *= p;
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col) / p;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  if (rank < m.rows()) det = 0;
  return {rank, det};
}

}  // namespace

Rational determinant(RationalMatrix m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  return eliminate(m).second;
}

std::size_t matrix_rank(RationalMatrix m) { return eliminate(m).first; }

}  // namespace sossym
