#include <gtest/gtest.h>

#include <cmath>

#include "pinchlab/errors.hpp"
#include "pinchlab/fields.hpp"
#include "pinchlab/harmonics.hpp"
#include "pinchlab/normal_subspace.hpp"
#include "pinchlab/sharpness.hpp"
#include "pinchlab/thresholds.hpp"

using namespace pinchlab;

namespace {

SearchConfig small_config() {
  SearchConfig c;
  c.n = 4;
  c.restarts = 4;
  c.iterations = 30;
  c.mc_samples = 8000;
  c.seed = 9;
  return c;
}

}  // namespace

TEST(FFunctional, SingleComponentVanishes) {
  std::vector<RationalPolynomial> comps(4, RationalPolynomial(4, 3));
  comps[0] = harmonic_basis(4, 3)[2];
  HarmonicField<Rational> u(4, 3, Bundle::form(1), comps);
  auto f = f_functional(u, Weights::One, 10000, 1);
  EXPECT_EQ(f.value, 0.0);
}

TEST(FFunctional, QuadraticScaling) {
  auto u = to_double(random_harmonic_field(4, 3, Bundle::form(1), 3));
  auto f1 = f_functional(u, Weights::One, 50000, 2);
  auto f2 = f_functional(HarmonicField<double>(u * 2.0), Weights::One, 50000, 2);
  EXPECT_NEAR(f2.value, 4.0 * f1.value, 3.0 * (f2.stderr_ + 4.0 * f1.stderr_));
}

TEST(FFunctional, CauchySchwarzBound) {
  const double bound = cauchy_schwarz_constant(4);
  EXPECT_NEAR(bound, std::sqrt(45.0), 1e-14);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto u = random_harmonic_field(4, 3, Bundle::form(1), seed);
    auto f = f_functional(u, Weights::One, 4000, seed);
    double norm2 = norm_squared(u).get_d();
    ASSERT_LE(f.value / norm2, bound * (1.0 + 3.0 * f.stderr_ / f.value)) << seed;
  }
}

TEST(FFunctional, HalfWeightsHalveTheValue) {
  auto u = random_harmonic_field(6, 3, Bundle::form(1), 4);
  auto one = f_functional(u, Weights::One, 20000, 5);
  auto half = f_functional(u, Weights::Half, 20000, 5);
  EXPECT_NEAR(half.value, one.value / 2.0, 3.0 * half.stderr_);
  EXPECT_DOUBLE_EQ(weight_value(Weights::Half), 0.5);
}

TEST(FFunctional, DegenerateSamplingThrows) {
  auto u = random_harmonic_field(4, 3, Bundle::form(1), 1);
  EXPECT_THROW(f_functional(u, Weights::One, 1, 1), ConvergenceError);
}

TEST(FFunctional, RequiresOneForms) {
  auto u = random_harmonic_field(4, 3, Bundle::form(2), 1);
  EXPECT_THROW(f_functional(u, Weights::One, 1000, 1), DomainError);
}

TEST(SearchConfig, Validation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.restarts = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SearchConfig{};
  c.epsilon = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SearchConfig{};
  c.mc_samples = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(SharpnessSearch, Deterministic) {
  auto a = sharpness_search(small_config());
  auto b = sharpness_search(small_config());
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.c_estimate, b.c_estimate);
  EXPECT_EQ(a.best_coefficients, b.best_coefficients);
  EXPECT_EQ(a.seed, 9u);
}

TEST(SharpnessSearch, TraceIsRunningMaximum) {
  auto r = sharpness_search(small_config());
  ASSERT_EQ(r.trace.size(), 4u);
  ASSERT_EQ(r.restart_values.size(), 4u);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i], r.trace[i - 1]);
  EXPECT_EQ(r.trace.back(), r.restart_values[r.best_restart]);
}

TEST(SharpnessSearch, ResultWithinBounds) {
  auto r = sharpness_search(small_config());
  const double cs = cauchy_schwarz_constant(4);
  EXPECT_GT(r.c_estimate, 0.0);
  EXPECT_LE(r.c_estimate, cs * (1.0 + 3.0 * r.stderr_));
  EXPECT_GT(r.quotient, 0.0);
  EXPECT_LE(r.quotient, 1.0);
  EXPECT_NEAR(r.quotient, r.c_estimate / cs, 1e-15);
  EXPECT_NEAR(r.delta_new, delta_from_constant(4, r.c_estimate), 1e-15);
}

TEST(SharpnessSearch, CoefficientsReproduceTheField) {
  auto r = sharpness_search(small_config());
  auto u = field_from_coefficients(4, 3, r.best_coefficients);
  EXPECT_NEAR(norm_squared(u), 1.0, 1e-9);
  auto f = f_functional(u, Weights::One, 100000, 123);
  EXPECT_NEAR(f.value, r.c_estimate, 5.0 * (f.stderr_ + r.stderr_));
}

TEST(SharpnessSearch, HalfWeights) {
  auto c = small_config();
  auto one = sharpness_search(c);
  c.weights = Weights::Half;
  auto half = sharpness_search(c);
  EXPECT_NEAR(half.c_estimate, one.c_estimate / 2.0, 1e-9 * one.c_estimate);
  EXPECT_TRUE(std::isnan(half.delta_new));
}

TEST(SharpnessSearch, ConstrainedMode) {
  auto c = small_config();
  c.constrained = true;
  auto r = sharpness_search(c);
  auto u = field_from_coefficients(4, 3, r.best_coefficients);
  EXPECT_GT(r.c_estimate, 0.0);
  EXPECT_LE(r.c_estimate, cauchy_schwarz_constant(4) * (1.0 + 3.0 * r.stderr_));
  EXPECT_NEAR(norm_squared(u), 1.0, 1e-9);
}

TEST(DeltaFromConstant, IdentitySubstitution) {
  EXPECT_NEAR(delta_from_constant(4, std::sqrt(45.0)), delta_lambda1(4), 1e-12);
  for (int n : {6, 8, 10, 20}) {
    EXPECT_NEAR(delta_from_constant(n, cauchy_schwarz_constant(n)), delta_lambda1(n), 1e-12);
  }
}

TEST(DeltaFromConstant, TableRow) {
  EXPECT_EQ(truncate_decimals(delta_from_constant(4, 5.294), 3), 0.267);
  EXPECT_EQ(truncate_decimals(delta_from_constant(6, 8.614), 3), 0.262);
  EXPECT_EQ(truncate_decimals(delta_from_constant(8, 12.193), 3), 0.261);
}

TEST(DeltaFromConstant, IncreasingInConstant) {
  for (int n : {4, 6, 8, 12}) {
    const double cs = cauchy_schwarz_constant(n);
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      double d = delta_from_constant(n, cs * i / 200.0);
      ASSERT_GE(d, prev);
      prev = d;
    }
  }
}

TEST(DeltaFromConstant, DomainErrors) {
  EXPECT_THROW(delta_from_constant(4, 0.0), DomainError);
  EXPECT_THROW(delta_from_constant(4, 7.0), DomainError);
}
