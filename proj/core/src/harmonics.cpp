#include "pinchlab/harmonics.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <unordered_map>

#include "pinchlab/errors.hpp"
#include "pinchlab/sphere_integral.hpp"
#include "memo.hpp"

namespace pinchlab {

namespace {

using detail::Memo;

void check_nk(int n, int k) {
  if (n < 2 || n > kMaxVariables) throw DomainError("harmonics require 2 <= n <= 8");
  if (k < 0) throw DomainError("harmonic degree must be non-negative");
}

// Scales to primitive integer coefficients with a positive leading term.
RationalPolynomial make_primitive(const RationalPolynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational s(den, num);
  s.canonicalize();
  if (sgn(p.terms().front().coeff) < 0) s = -s;
  return p * s;
}

std::vector<Monomial> monomials_in_class(int n, int d, std::uint32_t parity) {
  std::vector<Monomial> out;
  for (Monomial m : monomials_of_degree(n, d)) {
    if (m.parity_mask() == parity) out.push_back(m);
  }
  return out;
}

// All parity classes that occur among degree-d monomials in n variables.
std::vector<std::uint32_t> parity_classes(int n, int d) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < (1u << n); ++c) {
    const int odd = std::popcount(c);
    if (odd <= d && (d - odd) % 2 == 0) out.push_back(c);
  }
  return out;
}

HarmonicBasis build_basis(int n, int k) {
  HarmonicBasis basis;
  basis.n = n;
  basis.k = k;
  for (std::uint32_t c : parity_classes(n, k)) {
    const std::vector<Monomial> cols = monomials_in_class(n, k, c);
    const std::vector<Monomial> rows = k >= 2 ? monomials_in_class(n, k - 2, c) : std::vector<Monomial>{};
    std::vector<std::vector<Rational>> kernel;
    if (rows.empty()) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<Rational> e(cols.size());
        e[j] = 1;
        kernel.push_back(std::move(e));
      }
    } else {
      std::unordered_map<std::uint64_t, std::size_t> row_index;
      for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i].bits()] = i;
      RationalMatrix lap(rows.size(), cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j) {
        for (int i = 0; i < n; ++i) {
          const int e = cols[j].exponent(i);
          if (e < 2) continue;
          lap(row_index.at(cols[j].divided_by_variable(i).divided_by_variable(i).bits()), j) += e * (e - 1);
        }
      }
      kernel = nullspace(lap);
    }
    // Gram-Schmidt in the sphere inner product, via the monomial Gram matrix.
    const std::size_t m = cols.size();
    std::vector<Rational> gram(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        gram[a * m + b] = gram[b * m + a] = monomial_sphere_mean(n, cols[a] * cols[b]);
      }
    }
    auto dot = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
      Rational s = 0;
      for (std::size_t a = 0; a < m; ++a) {
        if (is_zero(x[a])) continue;
        for (std::size_t b = 0; b < m; ++b) {
          if (!is_zero(y[b]) && !is_zero(gram[a * m + b])) s += x[a] * gram[a * m + b] * y[b];
        }
      }
      return s;
    };
    std::vector<std::vector<Rational>> ortho;
    std::vector<Rational> norms;
    for (auto& v : kernel) {
      for (std::size_t j = 0; j < ortho.size(); ++j) {
        const Rational f = dot(v, ortho[j]) / norms[j];
        if (is_zero(f)) continue;
        for (std::size_t a = 0; a < m; ++a) v[a] -= f * ortho[j][a];
      }
      std::vector<RationalPolynomial::Term> terms;
      for (std::size_t a = 0; a < m; ++a) {
        if (!is_zero(v[a])) terms.push_back({cols[a], v[a]});
      }
      RationalPolynomial h = make_primitive(RationalPolynomial::from_terms(n, k, std::move(terms)));
      std::vector<Rational> hv(m);
      for (std::size_t a = 0; a < m; ++a) hv[a] = h.coefficient(cols[a]);
      const Rational nn = dot(hv, hv);
      ortho.push_back(std::move(hv));
      norms.push_back(nn);
      basis.elements.push_back(std::move(h));
      basis.parity.push_back(c);
      basis.norms2.push_back(nn);
    }
  }
  return basis;
}

Memo<std::pair<int, int>, HarmonicBasis>& basis_memo() {
  static Memo<std::pair<int, int>, HarmonicBasis> memo;
  return memo;
}

Memo<std::tuple<int, int, std::uint32_t>, DecompositionSolver>& solver_memo() {
  static Memo<std::tuple<int, int, std::uint32_t>, DecompositionSolver> memo;
  return memo;
}

DecompositionSolver build_solver(int n, int d, std::uint32_t parity) {
  DecompositionSolver s;
  s.n = n;
  s.d = d;
  s.parity = parity;
  s.monomials = monomials_in_class(n, d, parity);
  const std::size_t m = s.monomials.size();
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[s.monomials[i].bits()] = i;
  RationalMatrix cols(m, m);
  std::size_t col = 0;
  for (int j = 0; 2 * j <= d; ++j) {
    const int deg = d - 2 * j;
    if (std::popcount(parity) > deg) break;
    auto hb = harmonic_basis_info(n, deg);
    for (std::size_t e = 0; e < hb->elements.size(); ++e) {
      if (hb->parity[e] != parity) continue;
      RationalPolynomial lifted = hb->elements[e];
      for (int t = 0; t < j; ++t) lifted = lifted.times_norm_squared();
      if (col >= m) throw DomainError("graded harmonic basis larger than monomial space");
      for (const auto& term : lifted.terms()) cols(index.at(term.mono.bits()), col) = term.coeff;
      s.column_degree.push_back(deg);
      s.column_harmonic.push_back(hb->elements[e]);
      ++col;
    }
  }
  if (col != m) throw DomainError("graded harmonic basis does not span the monomial space");
  s.inverse = inverse(cols);
  return s;
}

// Graded coefficients of the parity-c part of u.
std::vector<Rational> graded_coefficients(const DecompositionSolver& s, const RationalPolynomial& u) {
  std::vector<Rational> x(s.monomials.size());
  for (std::size_t i = 0; i < s.monomials.size(); ++i) x[i] = u.coefficient(s.monomials[i]);
  return s.inverse * x;
}

std::vector<std::uint32_t> classes_present(const RationalPolynomial& u) {
  std::vector<std::uint32_t> out;
  for (const auto& t : u.terms()) out.push_back(t.mono.parity_mask());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

long long dim_harmonics(int n, int k) {
  if (n < 2) throw DomainError("dim_harmonics requires n >= 2");
  if (k < 0) throw DomainError("dim_harmonics requires k >= 0");
  return count_monomials(n, k) - count_monomials(n, k - 2);
}

std::shared_ptr<const HarmonicBasis> harmonic_basis_info(int n, int k) {
  check_nk(n, k);
  return basis_memo().get({n, k}, [&] { return build_basis(n, k); });
}

std::vector<RationalPolynomial> harmonic_basis(int n, int k) { return harmonic_basis_info(n, k)->elements; }

std::shared_ptr<const DecompositionSolver> decomposition_solver(int n, int d, std::uint32_t parity) {
  check_nk(n, d);
  return solver_memo().get({n, d, parity}, [&] { return build_solver(n, d, parity); });
}

std::vector<RationalPolynomial> harmonic_decompose(const RationalPolynomial& u) {
  const int n = u.dimension();
  const int d = u.degree();
  check_nk(n, d);
  std::vector<RationalPolynomial> parts;
  for (int deg = d; deg >= 0; deg -= 2) parts.emplace_back(n, deg);
  for (std::uint32_t c : classes_present(u)) {
    auto s = decomposition_solver(n, d, c);
    const std::vector<Rational> g = graded_coefficients(*s, u);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (is_zero(g[i])) continue;
      parts[static_cast<std::size_t>((d - s->column_degree[i]) / 2)] += s->column_harmonic[i] * g[i];
    }
  }
  return parts;
}

std::vector<int> harmonic_degrees(const RationalPolynomial& u) {
  std::vector<int> out;
  const auto parts = harmonic_decompose(u);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (!parts[j].is_zero()) out.push_back(u.degree() - 2 * static_cast<int>(j));
  }
  return out;
}

int top_harmonic_degree(const RationalPolynomial& u) {
  const auto degrees = harmonic_degrees(u);
  return degrees.empty() ? -1 : degrees.front();
}

RationalPolynomial harmonic_reassemble(int n, const std::vector<RationalPolynomial>& parts) {
  if (parts.empty()) throw DomainError("nothing to reassemble");
  const int d = parts.front().degree();
  RationalPolynomial out(n, d);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    RationalPolynomial lifted = parts[j];
    if (lifted.is_zero()) continue;
    for (std::size_t t = 0; t < j; ++t) lifted = lifted.times_norm_squared();
    out += lifted;
  }
  return out;
}

}  // namespace pinchlab
