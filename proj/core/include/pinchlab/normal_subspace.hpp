#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pinchlab/fields.hpp"

namespace pinchlab {

/// Basis of the subspace of Omega_k tensor E on which iota_v u has no harmonic
/// component of degree k+1 (and, for Sym2, iota_v iota_v u has none of degree
/// k+2 or k). Memoized per (n, k, bundle).
std::shared_ptr<const std::vector<HarmonicField<Rational>>> normal_subspace_basis(int n, int k, Bundle bundle);

/// Random element of the normal subspace: independent Gaussian weights on
/// normal_subspace_basis, rounded to multiples of 2^-8 so the field stays exact.
/// Throws ZeroSubspaceError when the subspace is {0}.
HarmonicField<Rational> normal_subspace_sample(int n, int k, Bundle bundle, std::uint64_t seed);

/// Random element of Omega_k tensor E with no constraint, drawn the same way
/// on the harmonic basis of each component.
HarmonicField<Rational> random_harmonic_field(int n, int k, Bundle bundle, std::uint64_t seed);

/// iota_v iota_v u for a Sym2 field: the scalar u(v)(v, v) of degree k+2.
RationalPolynomial double_contraction(const PolynomialField<Rational>& u);

}  // namespace pinchlab
