#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pinchlab/classify.hpp"
#include "pinchlab/errors.hpp"
#include "pinchlab/thresholds.hpp"

using namespace pinchlab;

namespace {

double bisect_b_root(int n, int k, int p) {
  double lo = 1e-9, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (b_forms(n, k, mid, p) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

int sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

TEST(Constants, UnpinchedBHasNoCurvatureTerm) {
  EXPECT_DOUBLE_EQ(b_forms(4, 3, 1.0, 1), 14.0);
  for (int n = 3; n <= 12; ++n)
    for (int k = 1; k <= 5; ++k)
      for (int p = 0; p <= 3; ++p) EXPECT_NEAR(b_forms(n, k, 1.0, p), k * (n + k - 2) - p, 1e-12);
}

TEST(Constants, BundleInvariants) {
  auto c = constants(9, 4, 2, 0.4);
  EXPECT_NEAR(c.s, (9 + 8 - 2) * c.r, 1e-14);
  EXPECT_DOUBLE_EQ(c.b_sym2, b_forms(9, 4, 0.4, 2));
  EXPECT_GE(c.d, 0.0);
  EXPECT_EQ(constants(9, 1, 2, 0.4).d, 0.0);
  EXPECT_NEAR(coupling_r(4, 1, 3), (2.0 / 3.0) * std::sqrt(3.0 / 15.0), 1e-15);
}

TEST(Constants, DegreeOneConventions) {
  EXPECT_DOUBLE_EQ(c_forms(6, 1, 0.5, 2), -(6 - 2) * 1.5 / 2);
  EXPECT_DOUBLE_EQ(c_sym2(6, 1, 0.5), -(6 - 2) * 1.5);
}

TEST(Constants, DomainErrors) {
  EXPECT_THROW(constants(2, 3, 1, 0.5), DomainError);
  EXPECT_THROW(constants(4, 0, 1, 0.5), DomainError);
  EXPECT_THROW(constants(4, 3, 1, 0.0), DomainError);
  EXPECT_THROW(constants(4, 3, 1, 1.5), DomainError);
  EXPECT_THROW(delta2(4, 1, 1), DomainError);
  EXPECT_THROW(delta2_sym(8, 3), DomainError);
  EXPECT_THROW(delta2_sym_deg2(8, 8), DomainError);
}

TEST(Delta1, RootOfB) {
  for (int n : {4, 7, 20})
    for (int k : {2, 3, 6})
      for (int p : {1, 2, 3}) {
        double d = delta1(n, k, p);
        EXPECT_NEAR(b_forms(n, k, d, p), 0.0, 1e-10);
        EXPECT_NEAR(d, bisect_b_root(n, k, p), 1e-10);
      }
}

TEST(Delta1, SignEquivalence) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> nd(3, 60), kd(1, 12), pd(1, 4);
  std::uniform_real_distribution<double> dd(1e-6, 1.0);
  for (int t = 0; t < 1000; ++t) {
    int n = nd(rng), k = kd(rng), p = pd(rng);
    double delta = dd(rng);
    double gap = delta - delta1(n, k, p);
    if (std::abs(gap) < 1e-12) continue;
    ASSERT_EQ(sign(b_forms(n, k, delta, p)), sign(gap));
  }
}

TEST(Thresholds, PrintedValues) {
  EXPECT_EQ(truncate_decimals(std::max(delta1(7, 3, 2), delta2(7, 3, 2)), 4), 0.4962);
  EXPECT_EQ(truncate_decimals(std::max(delta1(8, 3, 3), delta2(8, 3, 3)), 4), 0.6212);
  EXPECT_EQ(truncate_decimals(std::max(delta1(134, 3, 3), delta2(134, 3, 3)), 4), 0.5788);
  EXPECT_EQ(truncate_decimals(delta1(10, 3, 1), 4), 0.2725);
  EXPECT_EQ(truncate_decimals(delta_lambda1(4), 4), 0.2928);
  EXPECT_EQ(truncate_decimals(delta_lambda1(6), 4), 0.2823);
  EXPECT_EQ(truncate_decimals(delta_sym2(12), 4), 0.5948);
}

TEST(Thresholds, Asymptotics) {
  EXPECT_NEAR(delta_lambda1(1000000), 0.2779, 1e-3);
  EXPECT_NEAR(delta_sym2(1000000), 0.5572, 1e-3);
}

TEST(Thresholds, ClosedFormsMatchRoots) {
  for (int n = 3; n <= 60; ++n) {
    for (int k = 2; k <= 8; ++k) {
      for (int p = 1; p <= 3; ++p) {
        ASSERT_NEAR(delta1(n, k, p), via_root::delta1(n, k, p), 1e-12);
        ASSERT_NEAR(delta2(n, k, p), via_root::delta2(n, k, p), 1e-12);
      }
    }
    for (int k = 4; k <= 10; k += 2) ASSERT_NEAR(delta2_sym(n, k), via_root::delta2_sym(n, k), 1e-12);
    for (int r = 1; r < n; ++r) ASSERT_NEAR(delta2_sym_deg2(n, r), via_root::delta2_sym_deg2(n, r), 1e-12);
  }
  for (int n = 4; n <= 500; n += 2) {
    ASSERT_NEAR(delta_lambda1(n), via_root::delta_lambda1(n), 1e-12);
    ASSERT_NEAR(delta_sym2(n), via_root::delta_sym2(n), 1e-12);
  }
}

TEST(Thresholds, VectorFieldBranches) {
  for (int n = 4; n <= 8; n += 2) EXPECT_NEAR(delta_lambda1(n), delta2(n, 3, 1), 1e-10);
  for (int n = 10; n <= 500; n += 2) ASSERT_NEAR(delta_lambda1(n), delta1(n, 3, 1), 1e-10);
  for (int n = 4; n <= 500; n += 2) {
    ASSERT_NEAR(delta_lambda1(n), std::max(delta1(n, 3, 1), delta2(n, 3, 1)), 1e-10);
  }
}

TEST(Thresholds, SignEquivalenceBPlusC) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> nd(3, 60), kd(2, 12), pd(1, 4);
  std::uniform_real_distribution<double> dd(1e-6, 1.0);
  for (int t = 0; t < 1000; ++t) {
    int n = nd(rng), k = kd(rng), p = pd(rng);
    double delta = dd(rng);
    double gap = delta - delta2(n, k, p);
    if (std::abs(gap) < 1e-12) continue;
    ASSERT_EQ(sign(b_forms(n, k, delta, p) + c_forms(n, k, delta, p)), sign(gap)) << n << " " << k << " " << p;
  }
}

TEST(Thresholds, Sym2SignEquivalence) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> nd(3, 60), kd(2, 10);
  std::uniform_real_distribution<double> dd(1e-6, 1.0);
  for (int t = 0; t < 1000; ++t) {
    int n = nd(rng), k = 2 * kd(rng);
    double delta = dd(rng);
    double gap = delta - delta2_sym(n, k);
    if (std::abs(gap) < 1e-12) continue;
    ASSERT_EQ(sign(b_sym2(n, k, delta) + c_sym2(n, k, delta) - d_constant(n, k, delta)), sign(gap));
  }
}

TEST(Thresholds, Degree2IncreasingInRank) {
  for (int n = 3; n <= 200; ++n)
    for (int r = 2; r < n; ++r) ASSERT_GT(delta2_sym_deg2(n, r), delta2_sym_deg2(n, r - 1));
}

TEST(Thresholds, Degree2ReductionToDegree4) {
  for (int n = 8; n <= 500; n += 2) {
    int r = std::min(radon_hurwitz(n) - 1, (n - 2) / 2);
    ASSERT_LE(delta2_sym_deg2(n, r), delta2_sym(n, 4)) << n;
  }
}

TEST(Thresholds, AllInUnitInterval) {
  for (int n = 3; n <= 100; ++n)
    for (int k = 2; k <= 10; ++k)
      for (int p = 1; p <= std::min(3, n - 1); ++p) {
        ASSERT_GT(delta1(n, k, p), 0.0);
        ASSERT_LT(delta1(n, k, p), 1.0);
        ASSERT_GT(delta2(n, k, p), 0.0);
        ASSERT_LT(delta2(n, k, p), 1.0);
      }
}

TEST(Thresholds, TopDegreeFormsReachOne) {
  EXPECT_NEAR(b_forms(3, 2, 1.0, 3) + c_forms(3, 2, 1.0, 3), 0.0, 1e-12);
  EXPECT_NEAR(delta2(3, 2, 3), 1.0, 1e-12);
}

TEST(DeltaMaster, TableValues) {
  EXPECT_EQ(truncate_decimals(delta_master(4).delta, 4), 0.2928);
  EXPECT_EQ(truncate_decimals(delta_master(6).delta, 4), 0.2823);
  EXPECT_EQ(truncate_decimals(delta_master(7).delta, 4), 0.4962);
  EXPECT_EQ(truncate_decimals(delta_master(8).delta, 4), 0.6212);
  EXPECT_EQ(truncate_decimals(delta_master(10).delta, 4), 0.2725);
  EXPECT_EQ(truncate_decimals(delta_master(12).delta, 4), 0.5948);
  EXPECT_EQ(truncate_decimals(delta_master(134).delta, 4), 0.5788);
}

TEST(DeltaMaster, ExceptionalCasesListAlternatives) {
  auto m8 = delta_master(8);
  EXPECT_EQ(m8.cases.size(), 2u);
  double best = 0.0;
  for (const auto& c : m8.cases) best = std::max(best, c.composite);
  EXPECT_DOUBLE_EQ(best, m8.delta);
  EXPECT_EQ(delta_master(134).cases.size(), 2u);
}

TEST(DeltaMaster, OddDimensions) {
  for (int n : {3, 5, 9, 11, 101}) EXPECT_EQ(delta_master(n).delta, 0.0);
  EXPECT_GT(delta_master(7).delta, 0.0);
  EXPECT_THROW(delta_master(2), DomainError);
}

TEST(DeltaMaster, Sequences) {
  // n = 134 is exceptional; the sequences follow the generic formulas.
  for (int l = 2; l < 200; ++l) {
    ASSERT_LT(delta_lambda1(4 * l + 2), delta_lambda1(4 * l + 6));
    if (4 * l + 2 != 134) ASSERT_EQ(delta_master(4 * l + 2).delta, delta_lambda1(4 * l + 2));
  }
  for (int l = 3; l < 200; ++l) {
    ASSERT_GT(delta_sym2(4 * l), delta_sym2(4 * l + 4));
    ASSERT_EQ(delta_master(4 * l).delta, delta_sym2(4 * l));
  }
  EXPECT_GT(delta_master(134).delta, delta_lambda1(134));
}

TEST(Monotonicity, DefaultGrid) {
  auto r = monotonicity_scan(GridRange{});
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front().what);
  EXPECT_GT(r.checks, 10000);
}

TEST(Monotonicity, Sym2Grid) {
  for (int n = 7; n <= 200; ++n)
    for (int k = 6; k <= 100; k += 2) ASSERT_LT(delta2_sym(n, k), delta2_sym(n, k - 2));
}

TEST(Monotonicity, SinglePoint) { EXPECT_LT(delta1(10, 3, 1), delta1(10, 2, 1)); }

TEST(Truncate, DoesNotRound) {
  EXPECT_EQ(truncate_decimals(0.29289, 4), 0.2928);
  EXPECT_EQ(truncate_decimals(0.5, 4), 0.5);
  EXPECT_EQ(truncate_decimals(0.26799, 3), 0.267);
}
