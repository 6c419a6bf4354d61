#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "pinchlab/errors.hpp"
#include "pinchlab/fields.hpp"
#include "pinchlab/harmonics.hpp"
#include "pinchlab/normal_subspace.hpp"
#include "pinchlab/pestov.hpp"
#include "pinchlab/sphere_integral.hpp"

using namespace pinchlab;

namespace {

RationalPolynomial x(int n, int i) { return RationalPolynomial::variable(n, i); }

// u(v) = v x e3 = (v2, -v1, 0) as a 1-form field on R^3.
HarmonicField<Rational> cross_with_e3() {
  return HarmonicField<Rational>(3, 1, Bundle::form(1), {x(3, 1), -x(3, 0), RationalPolynomial(3, 1)});
}

Rational gradient_ratio(const HarmonicField<Rational>& u) {
  Rational lhs = 0;
  for (const auto& row : vertical_gradient(u)) {
    for (const auto& g : row) lhs += sphere_mean_product(g, g);
  }
  return lhs / norm_squared(u);
}

}  // namespace

TEST(Bundle, RanksAndIndices) {
  EXPECT_EQ(Bundle::scalar().rank(5), 1);
  EXPECT_EQ(Bundle::form(2).rank(5), 10);
  EXPECT_EQ(Bundle::sym2().rank(4), 10);
  auto pairs = Bundle::sym2().sym2_pairs(3);
  ASSERT_EQ(pairs.size(), 6u);
  EXPECT_EQ(pairs[1], (std::pair<int, int>{0, 1}));
  EXPECT_EQ(Bundle::sym2().weight(3, 0), 1);
  EXPECT_EQ(Bundle::sym2().weight(3, 1), 2);
  EXPECT_THROW(Bundle::form(-1), DomainError);
}

TEST(HarmonicField, RejectsNonHarmonicComponents) {
  PolynomialField<Rational> f(3, 2, Bundle::scalar(), {x(3, 0) * x(3, 0)});
  EXPECT_FALSE(f.is_harmonic());
  EXPECT_THROW(HarmonicField<Rational>{f}, DomainError);
}

TEST(HarmonicField, Sym2EntryIsSymmetric) {
  auto u = random_harmonic_field(3, 2, Bundle::sym2(), 5);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(u.entry(i, j), u.entry(j, i));
  }
}

TEST(InnerProduct, PositiveDefinite) {
  for (auto bundle : {Bundle::scalar(), Bundle::form(1), Bundle::form(2), Bundle::sym2()}) {
    auto u = random_harmonic_field(4, 3, bundle, 9);
    EXPECT_GT(norm_squared(u), 0) << bundle.name();
    EXPECT_EQ(norm_squared(HarmonicField<Rational>::zero(4, 3, bundle)), 0);
  }
}

TEST(InnerProduct, OppositeParityOrthogonal) {
  auto even = random_harmonic_field(4, 2, Bundle::form(1), 1);
  auto odd = random_harmonic_field(4, 3, Bundle::form(1), 2);
  Rational s = 0;
  for (std::size_t a = 0; a < even.components().size(); ++a) {
    s += sphere_mean_product(even.component(a), odd.component(a));
  }
  EXPECT_EQ(s, 0);
}

TEST(InnerProduct, AgreesWithMonteCarlo) {
  auto u = to_double(random_harmonic_field(4, 3, Bundle::form(1), 21));
  auto w = to_double(random_harmonic_field(4, 3, Bundle::form(1), 22));
  double exact = inner_product(u, w);
  auto mc = monte_carlo_sphere_mean(
      4,
      [&](std::span<const double> v) {
        double s = 0.0;
        for (std::size_t a = 0; a < u.components().size(); ++a) s += u.component(a).evaluate(v) * w.component(a).evaluate(v);
        return s;
      },
      400000, 4);
  EXPECT_LE(std::abs(mc.value - exact), 3.0 * mc.error_estimate);
}

TEST(InnerProduct, BundleMismatchThrows) {
  auto u = random_harmonic_field(4, 2, Bundle::form(1), 1);
  auto w = random_harmonic_field(4, 2, Bundle::form(2), 1);
  EXPECT_THROW(inner_product(u, w), DomainError);
}

TEST(VerticalGradient, LinearFunction) {
  HarmonicField<Rational> u(3, 1, Bundle::scalar(), {x(3, 0)});
  auto grad = vertical_gradient(u);
  ASSERT_EQ(grad.size(), 1u);
  ASSERT_EQ(grad[0].size(), 3u);
  std::array<double, 3> e1{1, 0, 0};
  std::array<double, 3> e2{0, 1, 0};
  for (int i = 0; i < 3; ++i) EXPECT_EQ(grad[0][i].evaluate(e1), 0.0);
  EXPECT_EQ(grad[0][0].evaluate(e2), 1.0);
  EXPECT_EQ(grad[0][1].evaluate(e2), 0.0);
  EXPECT_EQ(grad[0][2].evaluate(e2), 0.0);
}

TEST(VerticalGradient, TangentToSphere) {
  auto u = random_harmonic_field(4, 3, Bundle::scalar(), 8);
  auto grad = vertical_gradient(u)[0];
  RationalPolynomial radial(4, 5);
  for (int i = 0; i < 4; ++i) radial += grad[i].times_variable(i);
  EXPECT_TRUE(radial.is_zero());
}

TEST(VerticalLaplacian, Eigenvalues) {
  EXPECT_EQ(gradient_ratio(HarmonicField<Rational>(3, 1, Bundle::scalar(), {x(3, 0)})), 2);
  EXPECT_EQ(gradient_ratio(HarmonicField<Rational>(3, 2, Bundle::scalar(), {x(3, 0) * x(3, 1)})), 6);
  auto c = HarmonicField<Rational>(4, 0, Bundle::scalar(), {RationalPolynomial::constant(4, 1)});
  EXPECT_TRUE(vertical_laplacian_eigencheck(c));
  for (const auto& row : vertical_gradient(c)) {
    for (const auto& g : row) EXPECT_TRUE(g.is_zero());
  }
}

TEST(VerticalLaplacian, AllBundles) {
  for (auto bundle : {Bundle::scalar(), Bundle::form(2), Bundle::sym2()}) {
    for (int k = 0; k <= 3; ++k) {
      EXPECT_TRUE(vertical_laplacian_eigencheck(random_harmonic_field(5, k, bundle, 31 + k))) << bundle.name();
      EXPECT_TRUE(vertical_laplacian_eigencheck(to_double(random_harmonic_field(5, k, bundle, 41 + k))));
    }
  }
}

TEST(Contraction, CrossProductIsOrthogonal) {
  auto report = contract_tautological(cross_with_e3());
  EXPECT_TRUE(report.field.is_zero());
  EXPECT_TRUE(report.degrees.empty());
  EXPECT_EQ(report.top_degree(), -1);
}

TEST(Contraction, GenericTopDegreeIsKPlusOne) {
  for (int seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(contract_tautological(random_harmonic_field(4, 3, Bundle::form(1), seed)).top_degree(), 4);
    EXPECT_EQ(contract_tautological(random_harmonic_field(4, 2, Bundle::form(2), seed)).top_degree(), 3);
    EXPECT_EQ(contract_tautological(random_harmonic_field(4, 2, Bundle::sym2(), seed)).top_degree(), 3);
  }
}

TEST(Contraction, ScalarThrows) {
  EXPECT_THROW(contract_tautological(random_harmonic_field(3, 1, Bundle::scalar(), 1)), DomainError);
}

TEST(Contraction, RankOneProjectorDropsToDegreeOne) {
  auto fx = rank1_fixture(2);
  EXPECT_EQ(contract_tautological(fx.f2).top_degree(), 1);
}

TEST(NormalSubspace, LinearOneFormsOnR3) {
  // u(v) = A v with v^T A v of degree <= 0: A = skew + scalar, a 4-dimensional space.
  auto basis = normal_subspace_basis(3, 1, Bundle::form(1));
  EXPECT_EQ(basis->size(), 4u);
  for (const auto& b : *basis) EXPECT_LE(contract_tautological(b).top_degree(), 0);
}

TEST(NormalSubspace, SamplesSatisfyConstraint) {
  for (int seed = 1; seed <= 3; ++seed) {
    auto u = normal_subspace_sample(4, 3, Bundle::form(2), seed);
    EXPECT_LE(contract_tautological(u).top_degree(), 2);
    auto s = normal_subspace_sample(4, 2, Bundle::sym2(), seed);
    EXPECT_LE(contract_tautological(s).top_degree(), 1);
    EXPECT_LE(top_harmonic_degree(double_contraction(s)), 0);
  }
}

TEST(NormalSubspace, Deterministic) {
  EXPECT_EQ(normal_subspace_sample(5, 2, Bundle::form(1), 77), normal_subspace_sample(5, 2, Bundle::form(1), 77));
  EXPECT_FALSE(normal_subspace_sample(5, 2, Bundle::form(1), 77) == normal_subspace_sample(5, 2, Bundle::form(1), 78));
}
