#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "pinchlab/polynomial.hpp"
#include "pinchlab/rational.hpp"

namespace pinchlab {

/// A quantity of the form q * vol(S^{n-1}) with q rational.
struct VolMultiple {
  Rational q;
  int n = 2;

  double value() const;
  std::string to_string() const;
};

/// Surface area of the unit sphere S^{n-1} in R^n.
double sphere_volume(int n);

/// Integral of prod x_i^{alpha_i} over S^{n-1} with respect to the unnormalized
/// surface measure, carried exactly as a multiple of the sphere area.
VolMultiple monomial_sphere_integral(int n, std::span<const int> alpha);

/// Mean of x^alpha over S^{n-1} (the rational q of monomial_sphere_integral).
Rational monomial_sphere_mean(int n, Monomial m);

/// Mean of p over S^{n-1}. All L^2 quantities in this library are reported in
/// units of vol(S^{n-1}), i.e. as means over the sphere.
template <class T>
T sphere_mean(const Polynomial<T>& p);

/// Mean of a*b over S^{n-1}, without forming the product polynomial.
template <class T>
T sphere_mean_product(const Polynomial<T>& a, const Polynomial<T>& b);

enum class QuadratureMethod { ExactMonomial, MonteCarlo };

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  QuadratureMethod method = QuadratureMethod::ExactMonomial;
};

QuadratureResult exact_quadrature(const Polynomial<Rational>& p);

/// Monte-Carlo mean of f over S^{n-1} using normalized Gaussian samples.
/// error_estimate is the sample standard error.
QuadratureResult monte_carlo_sphere_mean(int n, const std::function<double(std::span<const double>)>& f,
                                         std::int64_t samples, std::uint64_t seed);

template <>
Rational sphere_mean(const Polynomial<Rational>&);
template <>
double sphere_mean(const Polynomial<double>&);
template <>
Rational sphere_mean_product(const Polynomial<Rational>&, const Polynomial<Rational>&);
template <>
double sphere_mean_product(const Polynomial<double>&, const Polynomial<double>&);

}  // namespace pinchlab
