#include <gtest/gtest.h>

#include <array>
#include <vector>

#include "pinchlab/errors.hpp"
#include "pinchlab/polynomial.hpp"

using namespace pinchlab;

namespace {

RationalPolynomial x(int n, int i) { return RationalPolynomial::variable(n, i); }

}  // namespace

TEST(Monomial, ExponentsRoundTrip) {
  std::array<int, 4> alpha{3, 0, 2, 1};
  Monomial m = Monomial::from_exponents(alpha);
  EXPECT_EQ(m.degree(), 6);
  EXPECT_EQ(m.exponents(4), (std::vector<int>{3, 0, 2, 1}));
  EXPECT_EQ(m.parity_mask(), 0b1001u);
}

TEST(Monomial, ProductAddsExponents) {
  Monomial a = Monomial::variable(0);
  Monomial b = Monomial::variable(2);
  Monomial ab = a * b * b;
  EXPECT_EQ(ab.exponent(0), 1);
  EXPECT_EQ(ab.exponent(2), 2);
  EXPECT_EQ(ab.divided_by_variable(2).exponent(2), 1);
}

TEST(Monomial, OverflowIsDomainError) {
  std::array<int, 1> alpha{200};
  Monomial m = Monomial::from_exponents(alpha);
  EXPECT_THROW(m * m, DomainError);
}

TEST(Monomials, CountsMatchBinomials) {
  EXPECT_EQ(count_monomials(4, 3), 20);
  EXPECT_EQ(count_monomials(8, 3), 120);
  for (int n = 1; n <= 6; ++n) {
    for (int d = 0; d <= 5; ++d) {
      EXPECT_EQ(static_cast<long long>(monomials_of_degree(n, d).size()), count_monomials(n, d));
    }
  }
}

TEST(Polynomial, ZeroCoefficientsAreDropped) {
  auto p = x(3, 0) * x(3, 1);
  auto q = p - p;
  EXPECT_TRUE(q.is_zero());
  EXPECT_EQ(q.degree(), 2);
}

TEST(Polynomial, FromTermsMergesDuplicates) {
  Monomial m = Monomial::variable(1);
  auto p = RationalPolynomial::from_terms(2, 1, {{m, Rational(1, 2)}, {m, Rational(1, 2)}, {Monomial::variable(0), 0}});
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coefficient(m), 1);
}

TEST(Polynomial, MixedDegreesRejected) {
  EXPECT_THROW(x(3, 0) + x(3, 0) * x(3, 1), DomainError);
  EXPECT_THROW(x(3, 0) + x(2, 0), DomainError);
}

TEST(Polynomial, DerivativeAndLaplacian) {
  // p = x0^2 x1 - x1^3/3 is harmonic in the (x0, x1) plane.
  auto p = x(3, 0) * x(3, 0) * x(3, 1) - Rational(1, 3) * (x(3, 1) * x(3, 1) * x(3, 1));
  EXPECT_TRUE(p.laplacian().is_zero());
  EXPECT_EQ(p.derivative(0), Rational(2) * (x(3, 0) * x(3, 1)));
  EXPECT_EQ(RationalPolynomial::norm_squared(3).laplacian(), RationalPolynomial::constant(3, 6));
}

TEST(Polynomial, NormSquaredMultiplication) {
  auto p = x(3, 2);
  EXPECT_EQ(p.times_norm_squared(), p * RationalPolynomial::norm_squared(3));
  EXPECT_EQ(p.times_variable(1), p * x(3, 1));
}

TEST(Polynomial, Evaluate) {
  auto p = Rational(3) * (x(2, 0) * x(2, 1)) + x(2, 1) * x(2, 1);
  std::array<double, 2> v{2.0, -1.0};
  EXPECT_DOUBLE_EQ(p.evaluate(v), -5.0);
  EXPECT_DOUBLE_EQ(to_double(p).evaluate(v), -5.0);
}

TEST(Polynomial, DoubleAndRationalAgree) {
  auto p = (x(4, 0) + x(4, 3)) * (x(4, 1) - Rational(1, 4) * x(4, 2));
  auto d = to_double(p);
  EXPECT_EQ(d.size(), p.size());
  EXPECT_DOUBLE_EQ(d.coefficient(Monomial::variable(3) * Monomial::variable(2)), -0.25);
}
