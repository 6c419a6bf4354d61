#include "pinchlab/sphere_integral.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>
#include <vector>

#include "pinchlab/errors.hpp"

namespace pinchlab {

namespace {

// (e-1)!! for even e, as used in the Gaussian moment formula.
const mpz_class& odd_double_factorial(int e) {
  static const std::vector<mpz_class> table = [] {
    std::vector<mpz_class> t(257);
    t[0] = 1;
    for (int j = 2; j <= 256; j += 2) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 2)] * (j - 1);
    return t;
  }();
  return table[static_cast<std::size_t>(e)];
}

mpz_class numerator(Monomial m) {
  mpz_class num = 1;
  for (int i = 0; i < kMaxVariables; ++i) {
    const int e = m.exponent(i);
    if (e > 2) num *= odd_double_factorial(e);
  }
  return num;
}

// prod_{j < half} (n + 2j)
mpz_class denominator(int n, int half) {
  mpz_class d = 1;
  for (int j = 0; j < half; ++j) d *= n + 2 * j;
  return d;
}

double numerator_double(Monomial m) {
  double num = 1.0;
  for (int i = 0; i < kMaxVariables; ++i) {
    for (int e = m.exponent(i) - 1; e > 1; e -= 2) num *= e;
  }
  return num;
}

double denominator_double(int n, int half) {
  double d = 1.0;
  for (int j = 0; j < half; ++j) d *= n + 2 * j;
  return d;
}

// Common denominator and integer numerators of a rational polynomial.
struct Integerized {
  mpz_class denom = 1;
  std::vector<mpz_class> nums;
};

Integerized integerize(const Polynomial<Rational>& p) {
  Integerized out;
  for (const auto& t : p.terms()) mpz_lcm(out.denom.get_mpz_t(), out.denom.get_mpz_t(), t.coeff.get_den_mpz_t());
  out.nums.reserve(p.size());
  for (const auto& t : p.terms()) out.nums.push_back(t.coeff.get_num() * (out.denom / t.coeff.get_den()));
  return out;
}

}  // namespace

double sphere_volume(int n) {
  if (n < 1) throw DomainError("sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double VolMultiple::value() const { return q.get_d() * sphere_volume(n); }

std::string VolMultiple::to_string() const {
  return q.get_str() + "*vol(S^" + std::to_string(n - 1) + ")";
}

Rational monomial_sphere_mean(int n, Monomial m) {
  if (m.parity_mask() != 0) return Rational(0);
  Rational q(numerator(m), denominator(n, m.degree() / 2));
  q.canonicalize();
  return q;
}

VolMultiple monomial_sphere_integral(int n, std::span<const int> alpha) {
  if (n < 2) throw DomainError("sphere integration requires n >= 2");
  if (static_cast<int>(alpha.size()) != n) throw DomainError("exponent vector length must equal n");
  for (int a : alpha) {
    if (a < 0) throw DomainError("exponents must be non-negative");
  }
  return VolMultiple{monomial_sphere_mean(n, Monomial::from_exponents(alpha)), n};
}

template <>
Rational sphere_mean(const Polynomial<Rational>& p) {
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    if (t.mono.parity_mask() == 0) sum += t.coeff * monomial_sphere_mean(p.dimension(), t.mono);
  }
  return sum;
}

template <>
double sphere_mean(const Polynomial<double>& p) {
  if (p.degree() % 2 != 0) return 0.0;
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    if (t.mono.parity_mask() == 0) sum += t.coeff * numerator_double(t.mono);
  }
  return sum / denominator_double(p.dimension(), p.degree() / 2);
}

template <>
Rational sphere_mean_product(const Polynomial<Rational>& a, const Polynomial<Rational>& b) {
  if (a.dimension() != b.dimension()) throw DomainError("polynomial dimension mismatch");
  if (a.is_zero() || b.is_zero() || (a.degree() + b.degree()) % 2 != 0) return Rational(0);
  const Integerized ia = integerize(a);
  const Integerized ib = integerize(b);

  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_parity;
  for (std::size_t j = 0; j < b.size(); ++j) by_parity[b.terms()[j].mono.parity_mask()].push_back(j);

  // Only terms with matching parity give an even product.
  std::unordered_map<std::uint64_t, mpz_class> acc;
  acc.reserve(a.size() * 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Monomial ma = a.terms()[i].mono;
    auto it = by_parity.find(ma.parity_mask());
    if (it == by_parity.end()) continue;
    for (std::size_t j : it->second) {
      mpz_class& slot = acc[(ma * b.terms()[j].mono).bits()];
      mpz_addmul(slot.get_mpz_t(), ia.nums[i].get_mpz_t(), ib.nums[j].get_mpz_t());
    }
  }
  mpz_class sum = 0;
  for (const auto& [bits, c] : acc) {
    if (c == 0) continue;
    mpz_addmul(sum.get_mpz_t(), c.get_mpz_t(), numerator(Monomial::from_bits(bits)).get_mpz_t());
  }
  Rational out(sum, ia.denom * ib.denom * denominator(a.dimension(), (a.degree() + b.degree()) / 2));
  out.canonicalize();
  return out;
}

template <>
double sphere_mean_product(const Polynomial<double>& a, const Polynomial<double>& b) {
  if (a.dimension() != b.dimension()) throw DomainError("polynomial dimension mismatch");
  if (a.is_zero() || b.is_zero() || (a.degree() + b.degree()) % 2 != 0) return 0.0;
  double sum = 0.0;
  for (const auto& ta : a.terms()) {
    const std::uint32_t mask = ta.mono.parity_mask();
    for (const auto& tb : b.terms()) {
      if (tb.mono.parity_mask() != mask) continue;
      sum += ta.coeff * tb.coeff * numerator_double(ta.mono * tb.mono);
    }
  }
  return sum / denominator_double(a.dimension(), (a.degree() + b.degree()) / 2);
}

QuadratureResult exact_quadrature(const Polynomial<Rational>& p) {
  return {sphere_mean(p).get_d() * sphere_volume(p.dimension()), 0.0, QuadratureMethod::ExactMonomial};
}

QuadratureResult monte_carlo_sphere_mean(int n, const std::function<double(std::span<const double>)>& f,
                                         std::int64_t samples, std::uint64_t seed) {
  if (n < 2) throw DomainError("sphere sampling requires n >= 2");
  if (samples < 2) throw DomainError("Monte-Carlo needs at least two samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> x(static_cast<std::size_t>(n));
  double mean = 0.0, m2 = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    double r2 = 0.0;
    do {
      r2 = 0.0;
      for (double& xi : x) {
        xi = gauss(rng);
        r2 += xi * xi;
      }
    } while (r2 == 0.0);
    const double inv = 1.0 / std::sqrt(r2);
    for (double& xi : x) xi *= inv;
    const double y = f(x);
    const double d = y - mean;
    mean += d / static_cast<double>(s + 1);
    m2 += d * (y - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples)), QuadratureMethod::MonteCarlo};
}

}  // namespace pinchlab
