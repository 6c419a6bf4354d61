#include "pinchlab/fields.hpp"

#include <bit>
#include <cmath>
#include <unordered_map>

#include "pinchlab/errors.hpp"
#include "pinchlab/harmonics.hpp"
#include "pinchlab/sphere_integral.hpp"

namespace pinchlab {

namespace {

void subsets(int n, int p, int start, std::uint32_t mask, std::vector<std::uint32_t>& out) {
  if (p == 0) {
    out.push_back(mask);
    return;
  }
  for (int i = start; i <= n - p; ++i) subsets(n, p - 1, i + 1, mask | (1u << i), out);
}

std::size_t sym2_position(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i));
}

template <class T>
bool near_equal(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Rational>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

}  // namespace

Bundle Bundle::form(int p) {
  if (p < 0) throw DomainError("form degree must be non-negative");
  return Bundle(BundleKind::Form, p);
}

int Bundle::rank(int n) const {
  switch (kind_) {
    case BundleKind::Scalar:
      return 1;
    case BundleKind::Sym2:
      return n * (n + 1) / 2;
    case BundleKind::Form: {
      long long c = 1;
      for (int j = 1; j <= p_; ++j) c = c * (n - p_ + j) / j;
      return static_cast<int>(c);
    }
  }
  return 0;
}

std::vector<std::uint32_t> Bundle::indices(int n) const {
  std::vector<std::uint32_t> out;
  switch (kind_) {
    case BundleKind::Scalar:
      out.push_back(0);
      break;
    case BundleKind::Form:
      if (p_ > n) throw DomainError("form degree exceeds dimension");
      subsets(n, p_, 0, 0, out);
      break;
    case BundleKind::Sym2:
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) out.push_back((1u << i) | (1u << j));
      }
      break;
  }
  return out;
}

std::vector<std::pair<int, int>> Bundle::sym2_pairs(int n) const {
  if (kind_ != BundleKind::Sym2) throw DomainError("sym2_pairs on a non-Sym2 bundle");
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

std::uint32_t Bundle::character(int n, std::size_t index) const {
  const std::uint32_t mask = indices(n).at(index);
  if (kind_ == BundleKind::Sym2 && std::popcount(mask) == 1) return 0;
  return mask;
}

int Bundle::weight(int n, std::size_t index) const {
  if (kind_ != BundleKind::Sym2) return 1;
  return std::popcount(indices(n).at(index)) == 2 ? 2 : 1;
}

std::string Bundle::name() const {
  switch (kind_) {
    case BundleKind::Scalar:
      return "scalar";
    case BundleKind::Form:
      return "form" + std::to_string(p_);
    case BundleKind::Sym2:
      return "sym2";
  }
  return "";
}

template <class T>
PolynomialField<T>::PolynomialField(int n, int degree, Bundle bundle)
    : n_(n), degree_(degree), bundle_(bundle) {
  components_.assign(static_cast<std::size_t>(bundle.rank(n)), Polynomial<T>(n, degree));
}

template <class T>
PolynomialField<T>::PolynomialField(int n, int degree, Bundle bundle, std::vector<Polynomial<T>> components)
    : n_(n), degree_(degree), bundle_(bundle), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != bundle.rank(n)) {
    throw DomainError("component count does not match bundle rank");
  }
  for (const auto& c : components_) {
    if (c.dimension() != n) throw DomainError("component dimension mismatch");
    if (!c.is_zero() && c.degree() != degree) throw DomainError("component degree mismatch");
  }
}

template <class T>
const Polynomial<T>& PolynomialField<T>::entry(int i, int j) const {
  if (bundle_.kind() != BundleKind::Sym2) throw DomainError("entry() on a non-Sym2 field");
  return components_.at(sym2_position(n_, i, j));
}

template <class T>
bool PolynomialField<T>::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

template <class T>
bool PolynomialField<T>::is_harmonic() const {
  for (const auto& c : components_) {
    const Polynomial<T> lap = c.laplacian();
    if constexpr (std::is_same_v<T, Rational>) {
      if (!lap.is_zero()) return false;
    } else {
      double scale = 0.0, residual = 0.0;
      for (const auto& t : c.terms()) scale = std::max(scale, std::abs(t.coeff));
      for (const auto& t : lap.terms()) residual = std::max(residual, std::abs(t.coeff));
      if (residual > 1e-9 * std::max(scale, 1.0)) return false;
    }
  }
  return true;
}

template <class T>
PolynomialField<T>& PolynomialField<T>::operator+=(const PolynomialField& other) {
  if (n_ != other.n_ || !(bundle_ == other.bundle_)) throw DomainError("field shape mismatch");
  if (degree_ != other.degree_ && !is_zero() && !other.is_zero()) throw DomainError("field degree mismatch");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
  return *this;
}

template <class T>
PolynomialField<T>& PolynomialField<T>::operator*=(const T& s) {
  for (auto& c : components_) c *= s;
  return *this;
}

template <class T>
bool PolynomialField<T>::operator==(const PolynomialField& other) const {
  return n_ == other.n_ && bundle_ == other.bundle_ && components_ == other.components_;
}

template <class T>
HarmonicField<T>::HarmonicField(PolynomialField<T> field) : PolynomialField<T>(std::move(field)) {
  if (!this->is_harmonic()) throw DomainError("field components are not harmonic");
}

template <class T>
HarmonicField<T>::HarmonicField(int n, int k, Bundle bundle, std::vector<Polynomial<T>> components)
    : HarmonicField(PolynomialField<T>(n, k, bundle, std::move(components))) {}

template <class T>
HarmonicField<T> HarmonicField<T>::zero(int n, int k, Bundle bundle) {
  return HarmonicField(PolynomialField<T>(n, k, bundle));
}

HarmonicField<double> to_double(const HarmonicField<Rational>& u) {
  std::vector<Polynomial<double>> comps;
  comps.reserve(u.components().size());
  for (const auto& c : u.components()) comps.push_back(to_double(c));
  return HarmonicField<double>(u.dimension(), u.k(), u.bundle(), std::move(comps));
}

template <class T>
T inner_product(const PolynomialField<T>& u, const PolynomialField<T>& w) {
  if (u.dimension() != w.dimension() || !(u.bundle() == w.bundle())) {
    throw DomainError("inner product of fields over different bundles");
  }
  const int n = u.dimension();
  T sum = T(0);
  for (std::size_t i = 0; i < u.components().size(); ++i) {
    const T term = sphere_mean_product(u.component(i), w.component(i));
    sum += term * T(u.bundle().weight(n, i));
  }
  return sum;
}

template <class T>
T norm_squared(const PolynomialField<T>& u) {
  return inner_product(u, u);
}

template <class T>
std::vector<std::vector<Polynomial<T>>> vertical_gradient(const PolynomialField<T>& u) {
  const int n = u.dimension();
  const int k = u.degree();
  std::vector<std::vector<Polynomial<T>>> grad;
  grad.reserve(u.components().size());
  for (const auto& c : u.components()) {
    std::vector<Polynomial<T>> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Polynomial<T> gi = c.derivative(i).times_norm_squared();
      if (gi.is_zero()) gi = Polynomial<T>(n, k + 1);
      gi -= c.times_variable(i) * T(k);
      g.push_back(std::move(gi));
    }
    grad.push_back(std::move(g));
  }
  return grad;
}

template <class T>
bool vertical_laplacian_eigencheck(const HarmonicField<T>& u) {
  const int n = u.dimension();
  const int k = u.k();
  const auto grad = vertical_gradient<T>(u);
  T lhs = T(0);
  for (std::size_t a = 0; a < grad.size(); ++a) {
    T s = T(0);
    for (const auto& g : grad[a]) s += sphere_mean_product(g, g);
    lhs += s * T(u.bundle().weight(n, a));
  }
  const T rhs = T(k * (n + k - 2)) * norm_squared<T>(u);
  return near_equal(lhs, rhs);
}

template <class T>
PolynomialField<T> iota_v(const PolynomialField<T>& u) {
  const int n = u.dimension();
  const int d = u.degree() + 1;
  const Bundle& b = u.bundle();
  switch (b.kind()) {
    case BundleKind::Scalar:
      throw DomainError("tautological contraction of a scalar field");
    case BundleKind::Form: {
      if (b.p() < 1) throw DomainError("tautological contraction of a 0-form");
      const Bundle target = Bundle::form(b.p() - 1);
      PolynomialField<T> out(n, d, target);
      std::vector<Polynomial<T>> comps = out.components();
      std::unordered_map<std::uint32_t, std::size_t> pos;
      const auto target_idx = target.indices(n);
      for (std::size_t i = 0; i < target_idx.size(); ++i) pos[target_idx[i]] = i;
      const auto src = b.indices(n);
      for (std::size_t a = 0; a < src.size(); ++a) {
        if (u.component(a).is_zero()) continue;
        int t = 0;
        for (int i = 0; i < n; ++i) {
          if (!(src[a] & (1u << i))) continue;
          Polynomial<T> term = u.component(a).times_variable(i);
          if (t % 2 == 1) term = -term;
          comps[pos.at(src[a] & ~(1u << i))] += term;
          ++t;
        }
      }
      return PolynomialField<T>(n, d, target, std::move(comps));
    }
    case BundleKind::Sym2: {
      const Bundle target = Bundle::form(1);
      std::vector<Polynomial<T>> comps(static_cast<std::size_t>(n), Polynomial<T>(n, d));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const auto& e = u.entry(i, j);
          if (!e.is_zero()) comps[static_cast<std::size_t>(i)] += e.times_variable(j);
        }
      }
      return PolynomialField<T>(n, d, target, std::move(comps));
    }
  }
  throw DomainError("unknown bundle");
}

std::vector<int> harmonic_degrees(const PolynomialField<Rational>& u) {
  std::vector<bool> present(static_cast<std::size_t>(u.degree() + 1), false);
  for (const auto& c : u.components()) {
    if (c.is_zero()) continue;
    for (int d : harmonic_degrees(c)) present[static_cast<std::size_t>(d)] = true;
  }
  std::vector<int> out;
  for (int d = u.degree(); d >= 0; --d) {
    if (present[static_cast<std::size_t>(d)]) out.push_back(d);
  }
  return out;
}

ContractionReport contract_tautological(const PolynomialField<Rational>& u) {
  ContractionReport r{iota_v(u), {}};
  r.degrees = harmonic_degrees(r.field);
  return r;
}

template class PolynomialField<Rational>;
template class PolynomialField<double>;
template class HarmonicField<Rational>;
template class HarmonicField<double>;

template Rational inner_product(const PolynomialField<Rational>&, const PolynomialField<Rational>&);
template double inner_product(const PolynomialField<double>&, const PolynomialField<double>&);
template Rational norm_squared(const PolynomialField<Rational>&);
template double norm_squared(const PolynomialField<double>&);
template std::vector<std::vector<Polynomial<Rational>>> vertical_gradient(const PolynomialField<Rational>&);
template std::vector<std::vector<Polynomial<double>>> vertical_gradient(const PolynomialField<double>&);
template bool vertical_laplacian_eigencheck(const HarmonicField<Rational>&);
template bool vertical_laplacian_eigencheck(const HarmonicField<double>&);
template PolynomialField<Rational> iota_v(const PolynomialField<Rational>&);
template PolynomialField<double> iota_v(const PolynomialField<double>&);

}  // namespace pinchlab
