#include "pinchlab/exact_linalg.hpp"

#include <utility>

#include "pinchlab/errors.hpp"

namespace pinchlab {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("matrix shape mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t l = 0; l < cols_; ++l) {
      const Rational& a = (*this)(i, l);
      if (is_zero(a)) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        if (!is_zero(other(l, j))) out(i, j) += a * other(l, j);
      }
    }
  }
  return out;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& x) const {
  if (cols_ != x.size()) throw DomainError("matrix-vector shape mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!is_zero(x[j]) && !is_zero((*this)(i, j))) out[i] += (*this)(i, j) * x[j];
    }
  }
  return out;
}

std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) {
      if (!is_zero(m(row, j))) m(row, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  RationalMatrix r = m;
  const std::vector<std::size_t> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(m.cols());
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r(i, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix r = m;
  return rref(r).size();
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  }
  return out;
}

}  // namespace pinchlab
