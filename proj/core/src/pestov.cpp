#include "pinchlab/pestov.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <unordered_map>

#include "pinchlab/errors.hpp"
#include "pinchlab/exact_linalg.hpp"
#include "pinchlab/harmonics.hpp"
#include "pinchlab/multilinear.hpp"
#include "pinchlab/normal_subspace.hpp"
#include "pinchlab/sphere_integral.hpp"

namespace pinchlab {

namespace {

template <class T>
bool same(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Rational>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

void require_constraint(const HarmonicField<Rational>& u) {
  if (u.is_zero()) return;
  const ContractionReport r = contract_tautological(u);
  if (r.top_degree() > u.k() - 1) {
    throw ConstraintViolation("iota_v u has harmonic degree " + std::to_string(r.top_degree()) +
                                  " > k-1 = " + std::to_string(u.k() - 1),
                              r.top_degree());
  }
}

}  // namespace

template <class T>
GTermReport<T> g_term_forms_unchecked(const HarmonicField<T>& u) {
  const Bundle& b = u.bundle();
  if (b.kind() != BundleKind::Form || b.p() < 1) throw DomainError("g_term_forms needs a Form(p >= 1) field");
  const int n = u.dimension();
  const int k = u.k();
  const int p = b.p();
  const auto idx = b.indices(n);
  std::unordered_map<std::uint32_t, std::size_t> pos;
  for (std::size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = a;
  const auto grad = vertical_gradient<T>(u);

  T lhs = T(0);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Polynomial<T>& ua = u.component(a);
    if (ua.is_zero()) continue;
    const std::uint32_t alpha = idx[a];
    std::vector<Polynomial<T>> times_x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) times_x[static_cast<std::size_t>(i)] = ua.times_variable(i);
    int t = 0;
    for (int i = 0; i < n; ++i) {
      if (!(alpha & (1u << i))) continue;
      const std::uint32_t rest = alpha & ~(1u << i);
      for (int j = 0; j < n; ++j) {
        if (alpha & (1u << j)) continue;
        const std::uint32_t beta = rest | (1u << j);
        const int s = std::popcount(rest & ((1u << j) - 1));
        const auto& w = grad[pos.at(beta)];
        T term = sphere_mean_product(times_x[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(j)]) -
                 sphere_mean_product(times_x[static_cast<std::size_t>(j)], w[static_cast<std::size_t>(i)]);
        if (std::abs(t - s) % 2 == 1) term = -term;
        lhs += term;
      }
      ++t;
    }
  }
  GTermReport<T> r;
  r.lhs = lhs;
  r.rhs = (p == 0 ? T(0) : T(n + 2 * k - 4) * norm_squared<T>(iota_v<T>(u))) + T(p) * norm_squared<T>(u);
  r.match = same(r.lhs, r.rhs);
  return r;
}

template <class T>
GTermReport<T> g_term_sym2_unchecked(const HarmonicField<T>& u) {
  if (u.bundle().kind() != BundleKind::Sym2) throw DomainError("g_term_sym2 needs a Sym2 field");
  const int n = u.dimension();
  const int k = u.k();
  const auto grad = vertical_gradient<T>(u);
  const PolynomialField<T> y = iota_v<T>(u);
  auto sym_pos = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i));
  };
  // xu[l][c][m] = x_l u_{cm}
  std::vector<Polynomial<T>> xu(static_cast<std::size_t>(n * n * n));
  for (int l = 0; l < n; ++l)
    for (int c = 0; c < n; ++c)
      for (int m = 0; m < n; ++m) xu[static_cast<std::size_t>((l * n + c) * n + m)] = u.entry(c, m).times_variable(l);
  auto at = [&](int l, int c, int m) -> const Polynomial<T>& { return xu[static_cast<std::size_t>((l * n + c) * n + m)]; };

  T lhs = T(0);
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      const auto& w = grad[sym_pos(l, m)];
      // sum_c (M_{lc} u_{cm} - u_{lc} M_{cm}) with M_{ab} = v_b w_a - w_b v_a
      T s = sphere_mean_product(w[static_cast<std::size_t>(l)], y.component(static_cast<std::size_t>(m))) +
            sphere_mean_product(w[static_cast<std::size_t>(m)], y.component(static_cast<std::size_t>(l)));
      for (int c = 0; c < n; ++c) {
        s -= sphere_mean_product(w[static_cast<std::size_t>(c)], at(l, c, m));
        s -= sphere_mean_product(w[static_cast<std::size_t>(c)], at(m, l, c));
      }
      lhs += s;
    }
  }
  GTermReport<T> r;
  r.lhs = lhs;
  r.rhs = T(2 * (n + 2 * k - 4)) * norm_squared<T>(y) + T(2) * norm_squared<T>(u);
  r.match = same(r.lhs, r.rhs);
  return r;
}

GTermReport<Rational> g_term_forms(const HarmonicField<Rational>& u) {
  require_constraint(u);
  return g_term_forms_unchecked(u);
}

GTermReport<Rational> g_term_sym2(const HarmonicField<Rational>& u) {
  require_constraint(u);
  return g_term_sym2_unchecked(u);
}

template <class T>
bool gradient_norm_identity(const HarmonicField<T>& u) {
  const int n = u.dimension();
  const int k = u.k();
  T lhs = T(0);
  for (std::size_t a = 0; a < u.components().size(); ++a) {
    const Polynomial<T>& c = u.component(a);
    if (c.is_zero()) continue;
    T s = -T(k * k) * sphere_mean_product(c, c);
    for (int i = 0; i < n; ++i) {
      const Polynomial<T> d = c.derivative(i);
      s += sphere_mean_product(d, d);
    }
    lhs += s * T(u.bundle().weight(n, a));
  }
  const T rhs = T(k * (n + k - 2)) * norm_squared<T>(u);
  return same(lhs, rhs);
}

ChainResult cauchy_schwarz_chain(const HarmonicField<Rational>& u, std::int64_t samples, std::uint64_t seed,
                                 double max_rel_stderr) {
  if (u.bundle().kind() != BundleKind::Form) throw DomainError("cauchy_schwarz_chain needs a form-valued field");
  const int n = u.dimension();
  const int k = u.k();
  ChainResult out;
  const double norm2 = norm_squared(u).get_d();
  out.bound = std::sqrt((n - 1.0) * k * (n + k - 2.0)) * norm2;
  if (u.is_zero()) return out;
  const HarmonicField<double> ud = to_double(u);
  const auto grad = vertical_gradient<double>(ud);
  const std::size_t rank = ud.components().size();
  std::vector<double> vals(rank);
  auto integrand = [&](std::span<const double> x) {
    double u2 = 0.0;
    for (std::size_t a = 0; a < rank; ++a) {
      vals[a] = ud.component(a).evaluate(x);
      u2 += vals[a] * vals[a];
    }
    const double un = std::sqrt(u2);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double g2 = 0.0;
      for (std::size_t a = 0; a < rank; ++a) {
        const double g = grad[a][static_cast<std::size_t>(i)].evaluate(x);
        g2 += g * g;
      }
      const double xi = x[static_cast<std::size_t>(i)];
      sum += std::sqrt(std::max(0.0, 1.0 - xi * xi)) * un * std::sqrt(g2);
    }
    return sum;
  };
  const QuadratureResult q = monte_carlo_sphere_mean(n, integrand, samples, seed);
  out.lhs = q.value;
  out.stderr_ = q.error_estimate;
  if (out.lhs > 0.0 && out.stderr_ / out.lhs > max_rel_stderr) {
    throw ConvergenceError("Monte-Carlo standard error above tolerance after the sample cap");
  }
  out.within = out.lhs <= out.bound + 3.0 * out.stderr_;
  return out;
}

ProjectorCheck projector_relation_check(int n, int k, std::uint64_t seed, int pairs, bool zero_field) {
  if (n < 2 || n > kMaxVariables) throw DomainError("projector_relation_check requires 2 <= n <= 8");
  if (k < 2 || k % 2 != 0) throw DomainError("projector_relation_check requires even k >= 2");
  const auto monos = monomials_of_degree(n, k);
  const auto target = monomials_of_degree(n, k + 1);
  std::unordered_map<std::uint64_t, std::size_t> row_of;
  for (std::size_t r = 0; r < target.size(); ++r) row_of[target[r].bits()] = r;
  const Bundle sym2 = Bundle::sym2();
  const auto pairs_ij = sym2.sym2_pairs(n);
  const std::size_t cols = pairs_ij.size() * monos.size();
  // Row (i, monomial of degree k+1) of sum_j K_ij(v) v_j.
  RationalMatrix m(static_cast<std::size_t>(n) * target.size(), cols);
  for (std::size_t e = 0; e < pairs_ij.size(); ++e) {
    const auto [i, j] = pairs_ij[e];
    for (std::size_t a = 0; a < monos.size(); ++a) {
      const std::size_t col = e * monos.size() + a;
      m(static_cast<std::size_t>(i) * target.size() + row_of.at((monos[a] * Monomial::variable(j)).bits()), col) += 1;
      if (i != j) {
        m(static_cast<std::size_t>(j) * target.size() + row_of.at((monos[a] * Monomial::variable(i)).bits()), col) += 1;
      }
    }
  }
  const auto kernel = nullspace(m);
  ProjectorCheck out;
  out.nullspace_dim = kernel.size();
  if (kernel.empty()) throw ZeroSubspaceError("constraint K(v,...,v,v,.) = 0 has only the zero solution");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> coeffs(cols, 0.0);
  if (!zero_field) {
    for (const auto& x : kernel) {
      const double g = std::round(gauss(rng) * 256.0) / 256.0;
      for (std::size_t c = 0; c < cols; ++c) coeffs[c] += g * x[c].get_d();
    }
  }
  // Entries K_ij and their second derivatives.
  std::vector<RealPolynomial> entry;
  for (std::size_t e = 0; e < pairs_ij.size(); ++e) {
    std::vector<RealPolynomial::Term> terms;
    for (std::size_t a = 0; a < monos.size(); ++a) {
      if (coeffs[e * monos.size() + a] != 0.0) terms.push_back({monos[a], coeffs[e * monos.size() + a]});
    }
    entry.push_back(RealPolynomial::from_terms(n, k, std::move(terms)));
  }
  std::vector<std::vector<RealPolynomial>> hess(pairs_ij.size());
  for (std::size_t e = 0; e < pairs_ij.size(); ++e) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) hess[e].push_back(entry[e].derivative(a).derivative(b));
  }
  auto entry_index = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i));
  };
  bool holds = true;
  for (int trial = 0; trial < pairs; ++trial) {
    const auto frame = random_frame(n, 2, rng);
    const std::vector<double> v(frame[0].data(), frame[0].data() + n);
    const std::vector<double> w(frame[1].data(), frame[1].data() + n);
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::size_t e = entry_index(i, j);
        const double kv = entry[e].evaluate(v);
        lhs += kv * w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
        double d2 = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            d2 += w[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)] *
                  hess[e][static_cast<std::size_t>(a * n + b)].evaluate(v);
        rhs += 0.5 * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] * d2;
        scale = std::max(scale, std::abs(kv));
      }
    }
    const double residual = std::abs(lhs - rhs);
    out.max_residual = std::max(out.max_residual, residual);
    if (residual > 1e-9 * std::max(1.0, scale)) holds = false;
  }
  out.holds = holds;
  return out;
}

Rank1Fixture rank1_fixture(int m) {
  if (m < 2) throw DomainError("rank1_fixture requires m >= 2");
  const int n = 2 * m;
  const Eigen::MatrixXd j = complex_structure(n);
  std::vector<RationalPolynomial> jv;
  for (int i = 0; i < n; ++i) {
    RationalPolynomial p(n, 1);
    for (int a = 0; a < n; ++a) {
      if (j(i, a) != 0.0) p += RationalPolynomial::variable(n, a) * Rational(static_cast<long>(j(i, a)));
    }
    jv.push_back(std::move(p));
  }
  const Bundle sym2 = Bundle::sym2();
  std::vector<RationalPolynomial> f, f2, f0;
  for (const auto& [a, b] : sym2.sym2_pairs(n)) {
    RationalPolynomial e = jv[static_cast<std::size_t>(a)] * jv[static_cast<std::size_t>(b)];
    if (e.is_zero()) e = RationalPolynomial(n, 2);
    auto parts = harmonic_decompose(e);
    f.push_back(std::move(e));
    f2.push_back(parts[0]);
    f0.push_back(parts[1]);
  }
  Rank1Fixture out{PolynomialField<Rational>(n, 2, sym2, std::move(f)),
                   HarmonicField<Rational>(n, 2, sym2, std::move(f2)), PolynomialField<Rational>(n, 0, sym2, std::move(f0)),
                   Rational(0)};
  out.ratio = norm_squared(iota_v(static_cast<const PolynomialField<Rational>&>(out.f2))) / norm_squared(out.f2);
  return out;
}

template GTermReport<Rational> g_term_forms_unchecked(const HarmonicField<Rational>&);
template GTermReport<double> g_term_forms_unchecked(const HarmonicField<double>&);
template GTermReport<Rational> g_term_sym2_unchecked(const HarmonicField<Rational>&);
template GTermReport<double> g_term_sym2_unchecked(const HarmonicField<double>&);
template bool gradient_norm_identity(const HarmonicField<Rational>&);
template bool gradient_norm_identity(const HarmonicField<double>&);

}  // namespace pinchlab
