#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pinchlab/rational.hpp"

namespace pinchlab {

/// Polynomials are supported in at most this many variables.
inline constexpr int kMaxVariables = 8;

/// A monomial x^alpha in at most kMaxVariables variables, with exponents packed
/// one byte per variable. Multiplication is addition of the packed words.
class Monomial {
 public:
  constexpr Monomial() = default;

  static Monomial from_exponents(std::span<const int> alpha);
  static Monomial variable(int i);
  static constexpr Monomial from_bits(std::uint64_t bits) { return Monomial(bits); }

  int exponent(int i) const noexcept {
    return static_cast<int>((bits_ >> (8 * i)) & 0xFFu);
  }
  int degree() const noexcept;
  std::uint64_t bits() const noexcept { return bits_; }

  /// Bit i is set iff the exponent of x_i is odd.
  std::uint32_t parity_mask() const noexcept;

  /// Exponent-wise sum. Throws DomainError if an exponent would exceed 255.
  Monomial operator*(Monomial other) const;
  /// Returns x^alpha / x_i; requires exponent(i) >= 1.
  Monomial divided_by_variable(int i) const noexcept {
    return Monomial(bits_ - (std::uint64_t{1} << (8 * i)));
  }

  std::vector<int> exponents(int n) const;

  friend constexpr auto operator<=>(Monomial, Monomial) = default;

 private:
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Homogeneous polynomial in n variables with coefficients in T (Rational or
/// double). Terms are kept sorted by monomial and zero coefficients are never
/// stored, so structural equality is polynomial equality.
template <class T>
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    T coeff;
  };

  Polynomial() = default;
  /// The zero polynomial of the given degree.
  Polynomial(int n, int degree);

  static Polynomial monomial(int n, Monomial m, T coeff);
  static Polynomial variable(int n, int i);
  static Polynomial constant(int n, T value);
  /// |x|^2 = x_1^2 + ... + x_n^2.
  static Polynomial norm_squared(int n);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial from_terms(int n, int degree, std::vector<Term> terms);

  int dimension() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  T coefficient(Monomial m) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const T& s);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.times(b); }

  Polynomial times(const Polynomial& other) const;
  Polynomial derivative(int i) const;
  Polynomial times_variable(int i) const;
  Polynomial times_norm_squared() const;
  /// Euclidean Laplacian sum_i d^2/dx_i^2.
  Polynomial laplacian() const;

  double evaluate(std::span<const double> x) const;

  bool operator==(const Polynomial& other) const;

  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& other) const;
  void canonicalize();

  int n_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

using RationalPolynomial = Polynomial<Rational>;
using RealPolynomial = Polynomial<double>;

Polynomial<double> to_double(const Polynomial<Rational>& p);

/// All exponent vectors of total degree d in n variables, in lexicographic
/// order of (alpha_1, ..., alpha_n) descending.
std::vector<Monomial> monomials_of_degree(int n, int d);

/// Number of monomials of degree d in n variables, C(n+d-1, d).
long long count_monomials(int n, int d);

extern template class Polynomial<Rational>;
extern template class Polynomial<double>;

}  // namespace pinchlab
