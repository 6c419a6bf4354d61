#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinchlab/fields.hpp"

namespace pinchlab {

/// Constant weight w_i(v) used in F(u); One and Half bracket any weight in [1/2, 1].
enum class Weights { One, Half };

std::string to_string(Weights w);
double weight_value(Weights w);

struct SearchConfig {
  int n = 4;
  int k = 3;
  int restarts = 1;
  int iterations = 200;
  std::int64_t mc_samples = 200000;
  std::uint64_t seed = 1;
  Weights weights = Weights::One;
  /// Restrict to fields whose iota_v drops harmonic degree.
  bool constrained = false;
  double epsilon = 1e-8;

  /// Throws DomainError on invalid values.
  void validate() const;
};

struct SearchResult {
  /// Best F(u)/||u||^2, re-evaluated on fresh samples.
  double c_estimate = 0.0;
  double stderr_ = 0.0;
  /// Value of the winner on the samples it was trained on.
  double train_value = 0.0;
  /// Coefficients of the winner in the orthonormal basis e_i (x) Y_m/|Y_m|, i-major.
  std::vector<double> best_coefficients;
  double quotient = 0.0;
  double delta_new = 0.0;
  /// Screening value of each restart, and its running maximum.
  std::vector<double> restart_values;
  std::vector<double> trace;
  int best_restart = 0;
  std::uint64_t seed = 0;
};

struct FValue {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// F(u) = sum_i mean |u - u_i e_i| |grad_V u_i| w_i by Monte-Carlo.
FValue f_functional(const HarmonicField<double>& u, Weights weights, std::int64_t mc_samples, std::uint64_t seed);
FValue f_functional(const HarmonicField<Rational>& u, Weights weights, std::int64_t mc_samples, std::uint64_t seed);

/// sqrt((n-1) k(n+k-2)); equals sqrt(3(n^2-1)) for k = 3.
double cauchy_schwarz_constant(int n, int k = 3);

/// Rebuilds the field described by SearchResult::best_coefficients.
HarmonicField<double> field_from_coefficients(int n, int k, const std::vector<double>& coefficients);

SearchResult sharpness_search(const SearchConfig& config);

/// max(delta1, delta2) at k = 3, p = 1 with sqrt(3(n^2-1)) replaced by c.
double delta_from_constant(int n, double c);

}  // namespace pinchlab
