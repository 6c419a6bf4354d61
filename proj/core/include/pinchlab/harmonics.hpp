#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pinchlab/exact_linalg.hpp"
#include "pinchlab/polynomial.hpp"

namespace pinchlab {

/// dim Omega_k on S^{n-1}: C(n+k-1, k) - C(n+k-3, k-2).
long long dim_harmonics(int n, int k);

/// Orthogonal basis of Omega_k, grouped by parity class (bit i set iff the
/// element is odd in x_i). Elements have primitive integer coefficients.
struct HarmonicBasis {
  int n = 0;
  int k = 0;
  std::vector<RationalPolynomial> elements;
  std::vector<std::uint32_t> parity;
  /// Sphere means of elements[i]^2.
  std::vector<Rational> norms2;
};

/// Memoized per (n, k); safe to call concurrently.
std::shared_ptr<const HarmonicBasis> harmonic_basis_info(int n, int k);

/// The basis elements of harmonic_basis_info(n, k).
std::vector<RationalPolynomial> harmonic_basis(int n, int k);

/// Change of basis between monomials of degree d with a fixed parity class and
/// the graded harmonic basis [Omega_d, |x|^2 Omega_{d-2}, ...] of the same class.
struct DecompositionSolver {
  int n = 0;
  int d = 0;
  std::uint32_t parity = 0;
  std::vector<Monomial> monomials;
  /// Harmonic degree d - 2j of each graded basis column.
  std::vector<int> column_degree;
  /// Harmonic polynomial h of each column (the column itself is |x|^{2j} h).
  std::vector<RationalPolynomial> column_harmonic;
  /// Maps monomial coefficients to graded coefficients.
  RationalMatrix inverse;
};

std::shared_ptr<const DecompositionSolver> decomposition_solver(int n, int d, std::uint32_t parity);

/// (h_k, h_{k-2}, ...) with u = sum_j |x|^{2j} h_{k-2j}, each h harmonic.
std::vector<RationalPolynomial> harmonic_decompose(const RationalPolynomial& u);

/// Harmonic degrees present in u on the sphere, in decreasing order.
std::vector<int> harmonic_degrees(const RationalPolynomial& u);

/// Highest harmonic degree present, or -1 for the zero polynomial.
int top_harmonic_degree(const RationalPolynomial& u);

/// Sum_j |x|^{2j} h_{k-2j}.
RationalPolynomial harmonic_reassemble(int n, const std::vector<RationalPolynomial>& parts);

}  // namespace pinchlab
