#include <gtest/gtest.h>

#include <random>

#include "pinchlab/harmonics.hpp"
#include "pinchlab/sphere_integral.hpp"

using namespace pinchlab;

namespace {

RationalPolynomial x(int n, int i) { return RationalPolynomial::variable(n, i); }

RationalPolynomial random_polynomial(int n, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::vector<RationalPolynomial::Term> terms;
  for (Monomial m : monomials_of_degree(n, d)) terms.push_back({m, Rational(coeff(rng), 1 + (coeff(rng) + 5) % 3)});
  return RationalPolynomial::from_terms(n, d, std::move(terms));
}

}  // namespace

TEST(DimHarmonics, DegreeThreeTable) {
  EXPECT_EQ(dim_harmonics(4, 3), 16);
  EXPECT_EQ(dim_harmonics(6, 3), 50);
  EXPECT_EQ(dim_harmonics(8, 3), 112);
}

TEST(DimHarmonics, ConstantsAndLinear) {
  for (int n = 2; n <= 9; ++n) {
    EXPECT_EQ(dim_harmonics(n, 0), 1);
    EXPECT_EQ(dim_harmonics(n, 1), n);
  }
}

TEST(HarmonicBasis, SizeMatchesDimension) {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k <= 5; ++k) {
      EXPECT_EQ(static_cast<long long>(harmonic_basis(n, k).size()), dim_harmonics(n, k)) << n << "," << k;
    }
  }
}

TEST(HarmonicBasis, LinearIsCoordinates) {
  auto basis = harmonic_basis(3, 1);
  ASSERT_EQ(basis.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    bool found = false;
    for (const auto& h : basis) {
      if (h.size() == 1 && h.coefficient(Monomial::variable(i)) != 0) found = true;
    }
    EXPECT_TRUE(found) << "x" << i;
  }
}

TEST(HarmonicBasis, QuadraticsAreHarmonicAndOrthogonal) {
  auto basis = harmonic_basis(3, 2);
  ASSERT_EQ(basis.size(), 5u);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EXPECT_TRUE(basis[i].laplacian().is_zero());
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(sphere_mean_product(basis[i], basis[j]), 0);
  }
}

TEST(HarmonicBasis, OrthogonalWithRecordedNorms) {
  for (auto [n, k] : {std::pair{4, 3}, std::pair{5, 4}, std::pair{6, 2}}) {
    auto info = harmonic_basis_info(n, k);
    const auto& e = info->elements;
    for (std::size_t i = 0; i < e.size(); ++i) {
      EXPECT_EQ(sphere_mean_product(e[i], e[i]), info->norms2[i]);
      EXPECT_GT(info->norms2[i], 0);
      for (std::size_t j = 0; j < i; ++j) ASSERT_EQ(sphere_mean_product(e[i], e[j]), 0);
    }
  }
}

TEST(HarmonicBasis, Parseval) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(-4, 4);
  auto info = harmonic_basis_info(4, 3);
  RationalPolynomial u(4, 3);
  Rational expected = 0;
  for (std::size_t i = 0; i < info->elements.size(); ++i) {
    Rational c(coeff(rng), 3);
    u += info->elements[i] * c;
    expected += c * c * info->norms2[i];
  }
  EXPECT_EQ(sphere_mean_product(u, u), expected);
}

TEST(HarmonicBasis, CachedInstanceIsShared) {
  EXPECT_EQ(harmonic_basis_info(5, 3).get(), harmonic_basis_info(5, 3).get());
}

TEST(HarmonicDecompose, NormSquared) {
  auto parts = harmonic_decompose(RationalPolynomial::norm_squared(3));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(parts[0].is_zero());
  EXPECT_EQ(parts[1], RationalPolynomial::constant(3, 1));
}

TEST(HarmonicDecompose, CoordinateSquared) {
  auto parts = harmonic_decompose(x(3, 0) * x(3, 0));
  ASSERT_EQ(parts.size(), 2u);
  auto expected = x(3, 0) * x(3, 0) - Rational(1, 3) * RationalPolynomial::norm_squared(3);
  EXPECT_EQ(parts[0], expected);
  EXPECT_TRUE(parts[0].laplacian().is_zero());
  EXPECT_EQ(parts[1], RationalPolynomial::constant(3, Rational(1, 3)));
}

TEST(HarmonicDecompose, RoundTripRandomQuartics) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    int n = 3 + t % 3;
    auto u = random_polynomial(n, 4, rng);
    auto parts = harmonic_decompose(u);
    for (const auto& h : parts) ASSERT_TRUE(h.laplacian().is_zero());
    ASSERT_EQ(harmonic_reassemble(n, parts), u);
  }
}

TEST(HarmonicDegrees, Report) {
  EXPECT_EQ(harmonic_degrees(RationalPolynomial::norm_squared(4)), (std::vector<int>{0}));
  EXPECT_EQ(top_harmonic_degree(RationalPolynomial(4, 2)), -1);
  auto p = x(3, 0) * x(3, 0) * x(3, 1);
  EXPECT_EQ(harmonic_degrees(p), (std::vector<int>{3, 1}));
  EXPECT_EQ(top_harmonic_degree(p.times_norm_squared()), 3);
}
