#pragma once

#include <cstddef>
#include <vector>

#include "pinchlab/rational.hpp"

namespace pinchlab {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& other) const;
  std::vector<Rational> operator*(const std::vector<Rational>& x) const;
  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(RationalMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column, with a 1 in that column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Exact inverse; throws DomainError when m is singular or not square.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace pinchlab
