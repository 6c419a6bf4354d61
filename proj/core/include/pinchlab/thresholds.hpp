#pragma once

#include <string>
#include <vector>

namespace pinchlab {

/// r_{n,p,k} = (2p/3) sqrt((n-1) / (k(n+k-2))).
double coupling_r(int n, int p, int k);
/// s_{n,p,k} = (n+2k-2) r_{n,p,k}.
double coupling_s(int n, int p, int k);

double b_forms(int n, int k, double delta, int p);
double b_sym2(int n, int k, double delta);
double c_forms(int n, int k, double delta, int p);
double c_sym2(int n, int k, double delta);
double d_constant(int n, int k, double delta);

struct ThresholdBundle {
  int n = 0;
  int k = 0;
  int p = 0;
  double delta = 0.0;
  double r = 0.0;
  double s = 0.0;
  double b_forms = 0.0;
  double b_sym2 = 0.0;
  double c_forms = 0.0;
  double c_sym2 = 0.0;
  double d = 0.0;
};

ThresholdBundle constants(int n, int k, int p, double delta);

/// Positivity threshold of B^{Lambda^p}_{n,k,delta}.
double delta1(int n, int k, int p);
/// Positivity threshold of B + C (forms); needs k >= 2.
double delta2(int n, int k, int p);
/// Sym2 threshold for k >= 4 even, using ||iota_v iota_v u|| <= ||iota_v u||.
double delta2_sym(int n, int k);
/// Sym2 degree-2 threshold for a projector of rank r.
double delta2_sym_deg2(int n, int r);

/// Closed forms of the vector-field and Sym2 thresholds.
double delta_lambda1(int n);
double delta_sym2(int n);

/// Second route for each threshold: the root of the corresponding constant,
/// which is affine in delta, computed from constants() alone.
namespace via_root {
double delta1(int n, int k, int p);
double delta2(int n, int k, int p);
double delta2_sym(int n, int k);
double delta2_sym_deg2(int n, int r);
double delta_lambda1(int n);
double delta_sym2(int n);
}  // namespace via_root

enum class Binding { Delta1, Delta2, Delta2Sym, Delta2SymDeg2, None };
std::string to_string(Binding b);

struct ThresholdReport {
  int n = 0;
  std::string label;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double composite = 0.0;
  Binding binding = Binding::None;
};

/// max(delta1, delta2) at (n, k, p) with the binding branch.
ThresholdReport forms_report(int n, int k, int p, const std::string& label);

struct MasterThreshold {
  double delta = 0.0;
  std::string label;
  Binding binding = Binding::None;
  /// Every case considered, for the exceptional dimensions.
  std::vector<ThresholdReport> cases;
};

/// Master threshold delta(n): ergodic above it; 0 for odd n != 7.
MasterThreshold delta_master(int n);

struct GridRange {
  int n_min = 4, n_max = 200;
  int k_min = 2, k_max = 100;
  std::vector<int> ps = {1, 2, 3};
};

struct MonotonicityViolation {
  std::string what;
  int n = 0, k = 0, p = 0;
  double lhs = 0.0, rhs = 0.0;
};

struct MonotonicityReport {
  long long checks = 0;
  std::vector<MonotonicityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// delta1, delta2 decreasing in k and increasing in p on the grid; delta2_sym
/// decreasing in even k >= 4 for n >= 7.
MonotonicityReport monotonicity_scan(const GridRange& range);

/// Truncation (not rounding) to the given number of decimals.
double truncate_decimals(double x, int decimals);

}  // namespace pinchlab
