#include "pinchlab/normal_subspace.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <tuple>
#include <unordered_map>

#include "pinchlab/errors.hpp"
#include "pinchlab/exact_linalg.hpp"
#include "pinchlab/harmonics.hpp"
#include "memo.hpp"

namespace pinchlab {

namespace {

struct Unknown {
  std::size_t element;  // index into the harmonic basis
  std::size_t index;    // bundle index
};

// A polynomial x^shift * h_e contributing with an integer factor to one output slot.
struct Piece {
  std::size_t slot;
  std::uint32_t shift_mask;  // parity of the monomial multiplier
  Monomial shift;
  int factor;
};

// Pieces of iota_v (or iota_v iota_v) applied to h * e_index, with h of parity 0 multiplier.
std::vector<Piece> contraction_pieces(int n, const Bundle& b, std::uint32_t mask, bool twice) {
  std::vector<Piece> out;
  if (b.kind() == BundleKind::Form) {
    const Bundle target = Bundle::form(b.p() - 1);
    const auto idx = target.indices(n);
    std::unordered_map<std::uint32_t, std::size_t> pos;
    for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
    int t = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      out.push_back({pos.at(mask & ~(1u << i)), 1u << i, Monomial::variable(i), t % 2 == 1 ? -1 : 1});
      ++t;
    }
    return out;
  }
  // Sym2: mask has one bit (diagonal) or two bits.
  const int i = std::countr_zero(mask);
  const int j = 31 - std::countl_zero(mask);
  if (twice) {
    const Monomial xixj = Monomial::variable(i) * Monomial::variable(j);
    out.push_back({0, xixj.parity_mask(), xixj, i == j ? 1 : 2});
    return out;
  }
  out.push_back({static_cast<std::size_t>(i), 1u << j, Monomial::variable(j), 1});
  if (i != j) out.push_back({static_cast<std::size_t>(j), 1u << i, Monomial::variable(i), 1});
  return out;
}

struct SolverView {
  std::shared_ptr<const DecompositionSolver> solver;
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::size_t> rows;  // constrained graded rows
};

// Adds to `matrix` the constraint rows of one contraction (iota_v or iota_v iota_v).
void add_constraints(int n, int k, const Bundle& b, bool twice, const std::vector<int>& banned_degrees,
                     const HarmonicBasis& hb, const std::vector<Unknown>& unknowns,
                     std::vector<std::map<std::size_t, Rational>>& columns, std::size_t& row_count) {
  const int d = k + (twice ? 2 : 1);
  const auto idx = b.indices(n);
  std::map<std::uint32_t, SolverView> views;
  std::map<std::tuple<std::size_t, std::uint32_t, std::size_t>, std::size_t> row_of;
  auto view = [&](std::uint32_t parity) -> SolverView& {
    auto it = views.find(parity);
    if (it != views.end()) return it->second;
    SolverView v;
    v.solver = decomposition_solver(n, d, parity);
    for (std::size_t i = 0; i < v.solver->monomials.size(); ++i) v.index[v.solver->monomials[i].bits()] = i;
    for (std::size_t r = 0; r < v.solver->column_degree.size(); ++r) {
      for (int banned : banned_degrees) {
        if (v.solver->column_degree[r] == banned) v.rows.push_back(r);
      }
    }
    return views.emplace(parity, std::move(v)).first->second;
  };
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const RationalPolynomial& h = hb.elements[unknowns[u].element];
    for (const Piece& piece : contraction_pieces(n, b, idx[unknowns[u].index], twice)) {
      const std::uint32_t parity = hb.parity[unknowns[u].element] ^ piece.shift_mask;
      SolverView& v = view(parity);
      for (std::size_t r : v.rows) {
        Rational s = 0;
        for (const auto& t : h.terms()) {
          const Rational& a = v.solver->inverse(r, v.index.at((t.mono * piece.shift).bits()));
          if (!is_zero(a)) s += a * t.coeff;
        }
        if (is_zero(s)) continue;
        auto key = std::make_tuple(piece.slot, parity, r);
        auto [it, inserted] = row_of.emplace(key, row_count);
        if (inserted) ++row_count;
        columns[u][it->second] += s * piece.factor;
      }
    }
  }
}

std::vector<HarmonicField<Rational>> build_normal_basis(int n, int k, Bundle bundle) {
  if (k < 1) throw DomainError("normal subspace requires k >= 1");
  if (bundle.kind() == BundleKind::Scalar || (bundle.kind() == BundleKind::Form && bundle.p() < 1)) {
    throw DomainError("normal subspace requires a Form(p >= 1) or Sym2 bundle");
  }
  const auto hb = harmonic_basis_info(n, k);
  const auto idx = bundle.indices(n);
  std::map<std::uint32_t, std::vector<Unknown>> blocks;
  for (std::size_t e = 0; e < hb->elements.size(); ++e) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      blocks[hb->parity[e] ^ bundle.character(n, a)].push_back({e, a});
    }
  }
  std::vector<HarmonicField<Rational>> basis;
  for (const auto& [chi, unknowns] : blocks) {
    std::vector<std::map<std::size_t, Rational>> columns(unknowns.size());
    std::size_t rows = 0;
    add_constraints(n, k, bundle, false, {k + 1}, *hb, unknowns, columns, rows);
    if (bundle.kind() == BundleKind::Sym2) {
      add_constraints(n, k, bundle, true, {k + 2, k}, *hb, unknowns, columns, rows);
    }
    RationalMatrix m(rows, unknowns.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      for (const auto& [r, v] : columns[u]) m(r, u) = v;
    }
    for (const auto& x : nullspace(m)) {
      std::vector<RationalPolynomial> comps(idx.size(), RationalPolynomial(n, k));
      for (std::size_t u = 0; u < unknowns.size(); ++u) {
        if (!is_zero(x[u])) comps[unknowns[u].index] += hb->elements[unknowns[u].element] * x[u];
      }
      basis.emplace_back(n, k, bundle, std::move(comps));
    }
  }
  return basis;
}

int bundle_key(const Bundle& b) {
  return b.kind() == BundleKind::Sym2 ? -1 : (b.kind() == BundleKind::Scalar ? -2 : b.p());
}

Rational dyadic_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Rational q(static_cast<long>(std::lround(gauss(rng) * 256.0)), 256);
  q.canonicalize();
  return q;
}

}  // namespace

std::shared_ptr<const std::vector<HarmonicField<Rational>>> normal_subspace_basis(int n, int k, Bundle bundle) {
  static detail::Memo<std::tuple<int, int, int>, std::vector<HarmonicField<Rational>>> memo;
  return memo.get({n, k, bundle_key(bundle)}, [&] { return build_normal_basis(n, k, bundle); });
}

HarmonicField<Rational> normal_subspace_sample(int n, int k, Bundle bundle, std::uint64_t seed) {
  const auto basis = normal_subspace_basis(n, k, bundle);
  if (basis->empty()) {
    throw ZeroSubspaceError("normal subspace is {0} for n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                            ", bundle " + bundle.name());
  }
  std::mt19937_64 rng(seed);
  PolynomialField<Rational> out(n, k, bundle);
  for (;;) {
    for (const auto& b : *basis) {
      const Rational g = dyadic_gaussian(rng);
      if (!is_zero(g)) out += b * g;
    }
    if (!out.is_zero()) break;
  }
  return HarmonicField<Rational>(std::move(out));
}

HarmonicField<Rational> random_harmonic_field(int n, int k, Bundle bundle, std::uint64_t seed) {
  const auto hb = harmonic_basis_info(n, k);
  std::mt19937_64 rng(seed);
  std::vector<RationalPolynomial> comps;
  for (int a = 0; a < bundle.rank(n); ++a) {
    RationalPolynomial c(n, k);
    for (const auto& h : hb->elements) {
      const Rational g = dyadic_gaussian(rng);
      if (!is_zero(g)) c += h * g;
    }
    comps.push_back(std::move(c));
  }
  return HarmonicField<Rational>(n, k, bundle, std::move(comps));
}

RationalPolynomial double_contraction(const PolynomialField<Rational>& u) {
  if (u.bundle().kind() != BundleKind::Sym2) throw DomainError("double contraction requires a Sym2 field");
  const int n = u.dimension();
  RationalPolynomial out(n, u.degree() + 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto& e = u.entry(i, j);
      if (e.is_zero()) continue;
      RationalPolynomial t = e.times_variable(i).times_variable(j);
      if (i != j) t *= Rational(2);
      out += t;
    }
  }
  return out;
}

}  // namespace pinchlab
