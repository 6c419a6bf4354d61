#pragma once

#include <cstdint>

#include "pinchlab/fields.hpp"

namespace pinchlab {

/// <G^E u, grad_V u> computed by quadrature (lhs) and by its closed form (rhs).
template <class T>
struct GTermReport {
  T lhs{};
  T rhs{};
  bool match = false;
};

/// Forms: rhs = (n+2k-4)||iota_v u||^2 + p||u||^2. Requires iota_v u to have
/// harmonic degree <= k-1; throws ConstraintViolation otherwise.
GTermReport<Rational> g_term_forms(const HarmonicField<Rational>& u);
/// Sym2: rhs = 2(n+2k-4)||iota_v u||^2 + 2||u||^2, same requirement.
GTermReport<Rational> g_term_sym2(const HarmonicField<Rational>& u);

/// The same computations without the constraint check, for negative controls
/// and for double-precision fields.
template <class T>
GTermReport<T> g_term_forms_unchecked(const HarmonicField<T>& u);
template <class T>
GTermReport<T> g_term_sym2_unchecked(const HarmonicField<T>& u);

/// mean sum_{alpha,i} <grad_V u_alpha, e_i>^2 = k(n+k-2)||u||^2, with the
/// left side computed as mean(|grad u|^2 - k^2 |u|^2) from the Euclidean gradient.
template <class T>
bool gradient_norm_identity(const HarmonicField<T>& u);

struct ChainResult {
  double lhs = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;
  /// lhs <= bound (1 + 3 stderr/lhs).
  bool within = true;
};

/// lhs = sum_i mean |e_i - v_i v| |u| |sum_alpha <grad_V u_alpha, e_i> e_alpha|
/// by Monte-Carlo; bound = sqrt((n-1) k(n+k-2)) ||u||^2. Throws
/// ConvergenceError if the relative standard error exceeds max_rel_stderr.
ChainResult cauchy_schwarz_chain(const HarmonicField<Rational>& u, std::int64_t samples, std::uint64_t seed,
                                 double max_rel_stderr = 0.05);

struct ProjectorCheck {
  bool holds = false;
  std::size_t nullspace_dim = 0;
  double max_residual = 0.0;
};

/// Samples K in Sym^k tensor Sym^2 with K(v,...,v,v,.) = 0 and checks
/// K(v,...,v,w,w) = k(k-1)/2 K(w,w,v,...,v,v,v) at random unit v, unit w orthogonal to v.
ProjectorCheck projector_relation_check(int n, int k, std::uint64_t seed, int pairs = 100, bool zero_field = false);

struct Rank1Fixture {
  PolynomialField<Rational> f;   // (Jv)(Jv)^T, degree 2
  HarmonicField<Rational> f2;    // its degree-2 harmonic part
  PolynomialField<Rational> f0;  // degree-0 part (constant matrix)
  Rational ratio;                // ||iota_v f2||^2 / ||f2||^2
};

Rank1Fixture rank1_fixture(int m);

extern template GTermReport<Rational> g_term_forms_unchecked(const HarmonicField<Rational>&);
extern template GTermReport<double> g_term_forms_unchecked(const HarmonicField<double>&);
extern template GTermReport<Rational> g_term_sym2_unchecked(const HarmonicField<Rational>&);
extern template GTermReport<double> g_term_sym2_unchecked(const HarmonicField<double>&);
extern template bool gradient_norm_identity(const HarmonicField<Rational>&);
extern template bool gradient_norm_identity(const HarmonicField<double>&);

}  // namespace pinchlab
