#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pinchlab/polynomial.hpp"

namespace pinchlab {

enum class BundleKind { Scalar, Form, Sym2 };

/// Coefficient bundle E of a field: R, Lambda^p R^n, or Sym^2 R^n.
class Bundle {
 public:
  static Bundle scalar() { return Bundle(BundleKind::Scalar, 0); }
  static Bundle form(int p);
  static Bundle sym2() { return Bundle(BundleKind::Sym2, 0); }

  BundleKind kind() const noexcept { return kind_; }
  /// Form degree; 0 for Scalar and Sym2.
  int p() const noexcept { return p_; }

  /// Number of basis indices of E over R^n.
  int rank(int n) const;

  /// Basis indices. Forms: subsets of {0..n-1} as bitmasks, in lexicographic
  /// order. Sym2: pairs i <= j encoded as bit i | bit j (a single bit when i = j),
  /// ordered (0,0), (0,1), ..., (0,n-1), (1,1), ...
  std::vector<std::uint32_t> indices(int n) const;
  std::vector<std::pair<int, int>> sym2_pairs(int n) const;

  /// Sign character of index i under the coordinate reflections x_j -> -x_j.
  std::uint32_t character(int n, std::size_t index) const;

  /// Pairing weight of index i: 1 except off-diagonal Sym2 entries, which count twice.
  int weight(int n, std::size_t index) const;

  std::string name() const;

  bool operator==(const Bundle&) const = default;

 private:
  Bundle(BundleKind kind, int p) : kind_(kind), p_(p) {}
  BundleKind kind_;
  int p_;
};

/// A section of P_d tensor E: one homogeneous polynomial of degree d per basis
/// index of E. Sym2 fields store the upper triangle of a symmetric matrix.
template <class T>
class PolynomialField {
 public:
  PolynomialField() = default;
  /// The zero field.
  PolynomialField(int n, int degree, Bundle bundle);
  PolynomialField(int n, int degree, Bundle bundle, std::vector<Polynomial<T>> components);

  int dimension() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  const Bundle& bundle() const noexcept { return bundle_; }
  const std::vector<Polynomial<T>>& components() const noexcept { return components_; }
  const Polynomial<T>& component(std::size_t i) const { return components_.at(i); }
  /// Sym2 entry (i, j) for any order of i and j.
  const Polynomial<T>& entry(int i, int j) const;

  bool is_zero() const;
  /// Every component annihilated by the Euclidean Laplacian.
  bool is_harmonic() const;

  PolynomialField& operator+=(const PolynomialField& other);
  PolynomialField& operator*=(const T& s);
  friend PolynomialField operator+(PolynomialField a, const PolynomialField& b) { return a += b; }
  friend PolynomialField operator*(PolynomialField a, const T& s) { return a *= s; }

  bool operator==(const PolynomialField& other) const;

 private:
  int n_ = 0;
  int degree_ = 0;
  Bundle bundle_ = Bundle::scalar();
  std::vector<Polynomial<T>> components_;
};

/// Field whose components are degree-k spherical harmonics.
template <class T>
class HarmonicField : public PolynomialField<T> {
 public:
  HarmonicField() = default;
  /// Throws DomainError if a component is not harmonic.
  explicit HarmonicField(PolynomialField<T> field);
  HarmonicField(int n, int k, Bundle bundle, std::vector<Polynomial<T>> components);
  static HarmonicField zero(int n, int k, Bundle bundle);

  int k() const noexcept { return this->degree(); }
};

HarmonicField<double> to_double(const HarmonicField<Rational>& u);

/// Sphere mean of the bundle pairing of u and w (units of vol(S^{n-1})).
template <class T>
T inner_product(const PolynomialField<T>& u, const PolynomialField<T>& w);

template <class T>
T norm_squared(const PolynomialField<T>& u);

/// grad[alpha][i] = d_i u_alpha |x|^2 - k x_i u_alpha, homogeneous of degree k+1;
/// on the unit sphere this is the tangential gradient.
template <class T>
std::vector<std::vector<Polynomial<T>>> vertical_gradient(const PolynomialField<T>& u);

/// Checks mean sum_alpha |grad_V u_alpha|^2 = k(n+k-2) ||u||^2; exact for
/// rationals, relative tolerance 1e-10 for doubles.
template <class T>
bool vertical_laplacian_eigencheck(const HarmonicField<T>& u);

/// Tautological contraction: forms Lambda^p -> Lambda^{p-1}, Sym2 -> Lambda^1
/// (u(v) v). Components have degree k+1.
template <class T>
PolynomialField<T> iota_v(const PolynomialField<T>& u);

struct ContractionReport {
  PolynomialField<Rational> field;
  /// Harmonic degrees present in any component, decreasing.
  std::vector<int> degrees;
  int top_degree() const { return degrees.empty() ? -1 : degrees.front(); }
};

/// iota_v u together with its harmonic degree report. Throws DomainError for scalar fields.
ContractionReport contract_tautological(const PolynomialField<Rational>& u);

/// Union of harmonic degrees of all components, decreasing.
std::vector<int> harmonic_degrees(const PolynomialField<Rational>& u);

extern template class PolynomialField<Rational>;
extern template class PolynomialField<double>;
extern template class HarmonicField<Rational>;
extern template class HarmonicField<double>;

}  // namespace pinchlab
