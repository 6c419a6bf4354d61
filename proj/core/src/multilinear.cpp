#include "pinchlab/multilinear.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

#include "pinchlab/errors.hpp"

namespace pinchlab {

namespace {

void check_same_dim(const EuclideanVector& a, const EuclideanVector& b) {
  if (a.size() != b.size()) throw DomainError("vector dimension mismatch");
}

void subsets_rec(int n, int p, int start, std::uint32_t mask, std::vector<std::uint32_t>& out) {
  if (p == 0) {
    out.push_back(mask);
    return;
  }
  for (int i = start; i <= n - p; ++i) subsets_rec(n, p - 1, i + 1, mask | (1u << i), out);
}

struct FormIndex {
  std::vector<std::uint32_t> subsets;
  std::unordered_map<std::uint32_t, std::size_t> position;
};

const FormIndex& form_index(int n, int p) {
  if (n < 1 || n > 31 || p < 0 || p > n) throw DomainError("form degree out of range");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, FormIndex> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({n, p});
  if (it == cache.end()) {
    FormIndex idx;
    subsets_rec(n, p, 0, 0, idx.subsets);
    for (std::size_t i = 0; i < idx.subsets.size(); ++i) idx.position[idx.subsets[i]] = i;
    it = cache.emplace(std::make_pair(n, p), std::move(idx)).first;
  }
  return it->second;
}

// Sign of e_alpha ^ e_beta relative to e_{alpha | beta}; 0 if they overlap.
int wedge_sign(std::uint32_t alpha, std::uint32_t beta) {
  if (alpha & beta) return 0;
  int inversions = 0;
  for (std::uint32_t b = beta; b; b &= b - 1) {
    const int j = std::countr_zero(b);
    inversions += std::popcount(alpha >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

void check_skew(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DomainError("operator must be square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw DomainError("operator is not antisymmetric");
}

}  // namespace

EuclideanVector g_tensor(const EuclideanVector& a, const EuclideanVector& b, const EuclideanVector& c) {
  check_same_dim(a, b);
  check_same_dim(a, c);
  return a.dot(c) * b - b.dot(c) * a;
}

double g_curvature(const EuclideanVector& a, const EuclideanVector& b, const EuclideanVector& c,
                   const EuclideanVector& d) {
  check_same_dim(a, b);
  check_same_dim(c, d);
  check_same_dim(a, c);
  return a.dot(c) * b.dot(d) - b.dot(c) * a.dot(d);
}

const std::vector<std::uint32_t>& form_subsets(int n, int p) { return form_index(n, p).subsets; }

template <class T>
BasicPForm<T>::BasicPForm(int n, int p) : n_(n), p_(p), subsets_(&form_subsets(n, p)) {
  coeffs_.assign(subsets_->size(), T(0));
}

template <class T>
BasicPForm<T> BasicPForm<T>::basis(int n, std::uint32_t mask) {
  BasicPForm w(n, std::popcount(mask));
  w.add(mask, T(1));
  return w;
}

template <class T>
BasicPForm<T> BasicPForm<T>::from_vector(const EuclideanVector& v) {
  BasicPForm w(static_cast<int>(v.size()), 1);
  for (int i = 0; i < v.size(); ++i) w.coeffs_[static_cast<std::size_t>(i)] = static_cast<T>(v[i]);
  return w;
}

template <class T>
std::size_t BasicPForm<T>::position(std::uint32_t mask) const {
  return form_index(n_, p_).position.at(mask);
}

template <class T>
T BasicPForm<T>::coefficient(std::uint32_t mask) const {
  return coeffs_[position(mask)];
}

template <class T>
void BasicPForm<T>::add(std::uint32_t mask, T value) {
  if (std::popcount(mask) != p_ || (n_ < 32 && (mask >> n_) != 0)) throw DomainError("index subset out of range");
  coeffs_[position(mask)] += value;
}

template <class T>
BasicPForm<T> BasicPForm<T>::wedge(const BasicPForm& other) const {
  if (n_ != other.n_) throw DomainError("form dimension mismatch");
  if (p_ + other.p_ > n_) return BasicPForm(n_, n_);
  BasicPForm out(n_, p_ + other.p_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == T(0)) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      if (other.coeffs_[j] == T(0)) continue;
      const int s = wedge_sign((*subsets_)[i], (*other.subsets_)[j]);
      if (s == 0) continue;
      out.add((*subsets_)[i] | (*other.subsets_)[j], T(s) * coeffs_[i] * other.coeffs_[j]);
    }
  }
  return out;
}

template <class T>
BasicPForm<T> BasicPForm<T>::interior(int i) const {
  if (i < 0 || i >= n_) throw DomainError("interior product index out of range");
  if (p_ == 0) return BasicPForm(n_, 0);
  BasicPForm out(n_, p_ - 1);
  const std::uint32_t bit = 1u << i;
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    const std::uint32_t mask = (*subsets_)[a];
    if (!(mask & bit) || coeffs_[a] == T(0)) continue;
    const int before = std::popcount(mask & (bit - 1));
    out.add(mask & ~bit, before % 2 ? -coeffs_[a] : coeffs_[a]);
  }
  return out;
}

template <class T>
T BasicPForm<T>::inner(const BasicPForm& other) const {
  if (n_ != other.n_ || p_ != other.p_) throw DomainError("form shape mismatch");
  T s = T(0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * other.coeffs_[i];
  return s;
}

template <class T>
BasicPForm<T>& BasicPForm<T>::operator+=(const BasicPForm& other) {
  if (n_ != other.n_ || p_ != other.p_) throw DomainError("form shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

template <class T>
BasicPForm<T>& BasicPForm<T>::operator*=(T s) {
  for (T& c : coeffs_) c *= s;
  return *this;
}

template class BasicPForm<double>;
template class BasicPForm<long long>;

PForm pure_wedge(const std::vector<EuclideanVector>& vs) {
  if (vs.empty()) throw DomainError("pure_wedge needs at least one vector");
  PForm w = PForm::from_vector(vs.front());
  for (std::size_t i = 1; i < vs.size(); ++i) w = w.wedge(PForm::from_vector(vs[i]));
  return w;
}

SymMatrix::SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("symmetric matrix must be square");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw DomainError("matrix is not symmetric");
}

CurvatureTensor::CurvatureTensor(int n, double delta) : n_(n), delta_(delta) {
  if (n < 2) throw DomainError("curvature tensor requires n >= 2");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("pinching constant must lie in (0, 1]");
  values_.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
}

CurvatureTensor CurvatureTensor::from_function(int n, double delta, const std::function<double(int, int, int, int)>& f) {
  CurvatureTensor r(n, delta);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) r.at(a, b, c, d) = f(a, b, c, d);
  return r;
}

double CurvatureTensor::evaluate(const EuclideanVector& a, const EuclideanVector& b, const EuclideanVector& c,
                                 const EuclideanVector& d) const {
  if (a.size() != n_ || b.size() != n_ || c.size() != n_ || d.size() != n_) {
    throw DomainError("vector dimension does not match tensor");
  }
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      const double ab = a[i] * b[j];
      if (ab == 0.0) continue;
      for (int k = 0; k < n_; ++k) {
        const double abc = ab * c[k];
        if (abc == 0.0) continue;
        const double* row = &values_[index(i, j, k, 0)];
        for (int l = 0; l < n_; ++l) s += abc * row[l] * d[l];
      }
    }
  }
  return s;
}

double CurvatureTensor::sectional(const EuclideanVector& a, const EuclideanVector& b) const {
  const double area2 = a.squaredNorm() * b.squaredNorm() - a.dot(b) * a.dot(b);
  if (area2 <= 1e-300) throw DomainError("sectional curvature of a degenerate plane");
  return evaluate(a, b, b, a) / area2;
}

double CurvatureTensor::symmetry_defect() const {
  double worst = 0.0;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) {
          const double r = (*this)(a, b, c, d);
          worst = std::max({worst, std::abs(r + (*this)(b, a, c, d)), std::abs(r + (*this)(a, b, d, c)),
                            std::abs(r - (*this)(c, d, a, b)),
                            std::abs(r + (*this)(b, c, a, d) + (*this)(c, a, b, d))});
        }
  return worst;
}

Eigen::MatrixXd CurvatureTensor::endomorphism(const EuclideanVector& a, const EuclideanVector& b) const {
  Eigen::MatrixXd m(n_, n_);
  for (int c = 0; c < n_; ++c) {
    for (int d = 0; d < n_; ++d) {
      m(d, c) = evaluate(a, b, EuclideanVector::Unit(n_, c), EuclideanVector::Unit(n_, d));
    }
  }
  return m;
}

CurvatureTensor CurvatureTensor::operator-(const CurvatureTensor& other) const {
  if (n_ != other.n_) throw DomainError("curvature tensor dimension mismatch");
  CurvatureTensor out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] -= other.values_[i];
  return out;
}

CurvatureTensor CurvatureTensor::operator*(double s) const {
  CurvatureTensor out = *this;
  for (double& v : out.values_) v *= s;
  return out;
}

CurvatureTensor g_curvature_tensor(int n) {
  return CurvatureTensor::from_function(n, 1.0, [](int a, int b, int c, int d) {
    return double((a == c) * (b == d)) - double((b == c) * (a == d));
  });
}

CurvatureTensor r0_split(const CurvatureTensor& r) {
  CurvatureTensor r0 = r - g_curvature_tensor(r.dimension()) * (0.5 * (1.0 + r.delta()));
  return r0;
}

Eigen::MatrixXd complex_structure(int n) {
  if (n % 2 != 0) throw DomainError("complex structure needs even dimension");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; a += 2) {
    j(a + 1, a) = 1.0;
    j(a, a + 1) = -1.0;
  }
  return j;
}

CurvatureTensor ch_model(int m) {
  if (m < 2) throw DomainError("ch_model requires m >= 2");
  const int n = 2 * m;
  const Eigen::MatrixXd j = complex_structure(n);
  // <J e_a, e_c> = J(c, a)
  auto jp = [&](int a, int c) { return j(c, a); };
  return CurvatureTensor::from_function(n, 0.25, [&](int a, int b, int c, int d) {
    const double g = double((a == c) * (b == d)) - double((b == c) * (a == d));
    return 0.25 * (g + jp(a, c) * jp(b, d) - jp(b, c) * jp(a, d) + 2.0 * jp(a, b) * jp(c, d));
  });
}

Eigen::MatrixXd extend_to_forms(const Eigen::MatrixXd& a, int p) {
  check_skew(a);
  const int n = static_cast<int>(a.rows());
  if (p < 1 || p > n) throw DomainError("form degree must satisfy 1 <= p <= n");
  const FormIndex& idx = form_index(n, p);
  const std::size_t dim = idx.subsets.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint32_t alpha = idx.subsets[col];
    int t = 0;
    for (int i = 0; i < n; ++i) {
      if (!(alpha & (1u << i))) continue;
      const std::uint32_t rest = alpha & ~(1u << i);
      for (int j = 0; j < n; ++j) {
        if (rest & (1u << j)) continue;
        const double v = a(j, i);
        if (v == 0.0) continue;
        // e_j sits at slot t; moving it to its sorted slot costs |t - s| swaps.
        const int s = std::popcount(rest & ((1u << j) - 1));
        const double sign = (std::abs(t - s) % 2) ? -1.0 : 1.0;
        out(static_cast<Eigen::Index>(idx.position.at(rest | (1u << j))), static_cast<Eigen::Index>(col)) += sign * v;
      }
      ++t;
    }
  }
  return out;
}

PForm apply_to_form(const Eigen::MatrixXd& a, const PForm& w) {
  const Eigen::MatrixXd m = extend_to_forms(a, w.degree());
  const Eigen::Map<const Eigen::VectorXd> x(w.coefficients().data(), static_cast<Eigen::Index>(w.coefficients().size()));
  const Eigen::VectorXd y = m * x;
  PForm out(w.dimension(), w.degree());
  for (std::size_t i = 0; i < w.subsets().size(); ++i) out.add(w.subsets()[i], y[static_cast<Eigen::Index>(i)]);
  return out;
}

SymMatrix extend_to_sym2(const Eigen::MatrixXd& a, const SymMatrix& c) {
  check_skew(a);
  if (a.rows() != c.matrix().rows()) throw DomainError("operator dimension mismatch");
  Eigen::MatrixXd out = a * c.matrix() - c.matrix() * a;
  out = 0.5 * (out + out.transpose());
  return SymMatrix(out);
}

Eigen::MatrixXd sym2_commutator_matrix(const Eigen::MatrixXd& a) {
  check_skew(a);
  const int n = static_cast<int>(a.rows());
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = std::sqrt(0.5);
      }
      basis.push_back(std::move(e));
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd out(dim, dim);
  for (Eigen::Index l = 0; l < dim; ++l) {
    const Eigen::MatrixXd image = a * basis[static_cast<std::size_t>(l)] - basis[static_cast<std::size_t>(l)] * a;
    for (Eigen::Index k = 0; k < dim; ++k) out(k, l) = (basis[static_cast<std::size_t>(k)].cwiseProduct(image)).sum();
  }
  return out;
}

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const Eigen::MatrixXd mtm = m.transpose() * m;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(mtm.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd w = mtm * v;
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::abs(next)) return std::sqrt(next);
    lambda = next;
  }
  throw ConvergenceError("power iteration did not converge in 10000 iterations");
}

EuclideanVector random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    EuclideanVector v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    const double r = v.norm();
    if (r > 1e-8) return v / r;
  }
}

std::vector<EuclideanVector> random_frame(int n, int count, std::mt19937_64& rng) {
  if (count > n) throw DomainError("cannot draw more orthonormal vectors than the dimension");
  std::normal_distribution<double> gauss;
  std::vector<EuclideanVector> frame;
  while (static_cast<int>(frame.size()) < count) {
    EuclideanVector v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    for (const auto& e : frame) v -= v.dot(e) * e;
    const double r = v.norm();
    if (r < 1e-8) continue;
    frame.push_back(v / r);
  }
  return frame;
}

Eigen::MatrixXd random_skew(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  return 0.5 * (a - a.transpose());
}

bool wedge_contract_identity_check(int p, int n) {
  if (p < 1 || p > n) throw DomainError("wedge_contract_identity_check requires 1 <= p <= n");
  using IForm = BasicPForm<long long>;
  for (std::uint32_t alpha : form_subsets(n, p)) {
    const IForm w = IForm::basis(n, alpha);
    IForm sum(n, p);
    for (int i = 0; i < n; ++i) sum += IForm::basis(n, 1u << i).wedge(w.interior(i));
    IForm expected = w;
    expected *= p;
    if (!(sum == expected)) return false;
  }
  return true;
}

FrameSearchResult max_over_frames(const CurvatureTensor& r, std::int64_t frames, std::uint64_t seed) {
  const int n = r.dimension();
  if (n < 4) throw DomainError("4-frames need n >= 4");
  std::mt19937_64 rng(seed);
  auto value = [&](const std::vector<EuclideanVector>& f) { return std::abs(r.evaluate(f[0], f[1], f[2], f[3])); };
  constexpr std::size_t kKeep = 8;
  std::vector<std::pair<double, std::vector<EuclideanVector>>> best;
  FrameSearchResult out;
  out.frames = frames;
  for (std::int64_t i = 0; i < frames; ++i) {
    auto f = random_frame(n, 4, rng);
    const double v = value(f);
    out.max_random = std::max(out.max_random, v);
    if (best.size() < kKeep || v > best.back().first) {
      best.emplace_back(v, std::move(f));
      std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      if (best.size() > kKeep) best.pop_back();
    }
  }
  std::normal_distribution<double> gauss;
  out.max_refined = out.max_random;
  for (auto& [v, f] : best) {
    double scale = 0.1;
    int failures = 0;
    for (int step = 0; step < 4000 && scale > 1e-9; ++step) {
      std::vector<EuclideanVector> g;
      for (int a = 0; a < 4; ++a) {
        EuclideanVector x = f[static_cast<std::size_t>(a)];
        for (int i = 0; i < n; ++i) x[i] += scale * gauss(rng);
        for (const auto& e : g) x -= x.dot(e) * e;
        g.push_back(x.normalized());
      }
      const double w = value(g);
      if (w > v) {
        v = w;
        f = std::move(g);
        failures = 0;
      } else if (++failures >= 20) {
        scale *= 0.7;
        failures = 0;
      }
    }
    out.max_refined = std::max(out.max_refined, v);
  }
  return out;
}

}  // namespace pinchlab
