#include "pinchlab/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "pinchlab/errors.hpp"

namespace pinchlab {

namespace {

// An mpq_class built from (num, den) stays unreduced until its next operation.
void normalize(Rational& q) { q.canonicalize(); }
void normalize(double) {}

void check_dimension(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw DomainError("polynomial dimension must be in [1, " +
                      std::to_string(kMaxVariables) + "], got " + std::to_string(n));
  }
}

void check_variable(int n, int i) {
  if (i < 0 || i >= n) {
    throw DomainError("variable index " + std::to_string(i) + " out of range for n = " +
                      std::to_string(n));
  }
}

}  // namespace

Monomial Monomial::from_exponents(std::span<const int> alpha) {
  check_dimension(static_cast<int>(alpha.size()));
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0 || alpha[i] > 255) throw DomainError("exponent out of range [0, 255]");
    bits |= static_cast<std::uint64_t>(alpha[i]) << (8 * i);
  }
  return Monomial(bits);
}

Monomial Monomial::variable(int i) {
  check_variable(kMaxVariables, i);
  return Monomial(std::uint64_t{1} << (8 * i));
}

int Monomial::degree() const noexcept {
  int d = 0;
  for (int i = 0; i < kMaxVariables; ++i) d += exponent(i);
  return d;
}

std::uint32_t Monomial::parity_mask() const noexcept {
  // Low bit of every byte, gathered.
  std::uint32_t mask = 0;
  for (int i = 0; i < kMaxVariables; ++i) mask |= ((bits_ >> (8 * i)) & 1u) << i;
  return mask;
}

Monomial Monomial::operator*(Monomial other) const {
  for (int i = 0; i < kMaxVariables; ++i) {
    if (exponent(i) + other.exponent(i) > 255) throw DomainError("monomial exponent overflow");
  }
  return Monomial(bits_ + other.bits_);
}

std::vector<int> Monomial::exponents(int n) const {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = exponent(i);
  return out;
}

namespace {

void enumerate(int n, int i, int remaining, std::vector<int>& alpha, std::vector<Monomial>& out) {
  if (i == n - 1) {
    alpha[static_cast<std::size_t>(i)] = remaining;
    out.push_back(Monomial::from_exponents(alpha));
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    alpha[static_cast<std::size_t>(i)] = e;
    enumerate(n, i + 1, remaining - e, alpha, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int n, int d) {
  check_dimension(n);
  if (d < 0) return {};
  std::vector<Monomial> out;
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  enumerate(n, 0, d, alpha, out);
  return out;
}

long long count_monomials(int n, int d) {
  if (d < 0) return 0;
  // C(n+d-1, d) computed incrementally; exact for the sizes used here.
  long long c = 1;
  for (int j = 1; j <= d; ++j) c = c * (n - 1 + j) / j;
  return c;
}

template <class T>
Polynomial<T>::Polynomial(int n, int degree) : n_(n), degree_(degree) {
  check_dimension(n);
  if (degree < 0) throw DomainError("polynomial degree must be non-negative");
}

template <class T>
Polynomial<T> Polynomial<T>::monomial(int n, Monomial m, T coeff) {
  Polynomial p(n, m.degree());
  for (int i = n; i < kMaxVariables; ++i) {
    if (m.exponent(i) != 0) throw DomainError("monomial uses a variable beyond the dimension");
  }
  normalize(coeff);
  if (!pinchlab::is_zero(coeff)) p.terms_.push_back({m, std::move(coeff)});
  return p;
}

template <class T>
Polynomial<T> Polynomial<T>::variable(int n, int i) {
  check_variable(n, i);
  return monomial(n, Monomial::variable(i), T(1));
}

template <class T>
Polynomial<T> Polynomial<T>::constant(int n, T value) {
  return monomial(n, Monomial(), std::move(value));
}

template <class T>
Polynomial<T> Polynomial<T>::norm_squared(int n) {
  Polynomial p(n, 2);
  for (int i = 0; i < n; ++i) {
    const Monomial xi = Monomial::variable(i);
    p.terms_.push_back({xi * xi, T(1)});
  }
  p.canonicalize();
  return p;
}

template <class T>
Polynomial<T> Polynomial<T>::from_terms(int n, int degree, std::vector<Term> terms) {
  Polynomial p(n, degree);
  for (const Term& t : terms) {
    if (t.mono.degree() != degree) throw DomainError("term degree differs from polynomial degree");
    for (int i = n; i < kMaxVariables; ++i) {
      if (t.mono.exponent(i) != 0) throw DomainError("term uses a variable beyond the dimension");
    }
  }
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

template <class T>
void Polynomial<T>::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    T sum = std::move(terms_[i].coeff);
    while (j < terms_.size() && terms_[j].mono == terms_[i].mono) {
      sum += terms_[j].coeff;
      ++j;
    }
    normalize(sum);
    if (!pinchlab::is_zero(sum)) {
      terms_[out].mono = terms_[i].mono;
      terms_[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

template <class T>
T Polynomial<T>::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.mono < key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return T(0);
}

template <class T>
void Polynomial<T>::check_compatible(const Polynomial& other) const {
  if (n_ != other.n_) throw DomainError("polynomial dimension mismatch");
  if (degree_ != other.degree_ && !is_zero() && !other.is_zero()) {
    throw DomainError("adding homogeneous polynomials of different degrees");
  }
}

template <class T>
Polynomial<T>& Polynomial<T>::operator+=(const Polynomial& other) {
  check_compatible(other);
  if (other.is_zero()) return *this;
  if (is_zero()) degree_ = other.degree_;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() || (i < terms_.size() && terms_[i].mono < other.terms_[j].mono)) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || other.terms_[j].mono < terms_[i].mono) {
      merged.push_back(other.terms_[j++]);
    } else {
      T sum = terms_[i].coeff + other.terms_[j].coeff;
      if (!pinchlab::is_zero(sum)) merged.push_back({terms_[i].mono, std::move(sum)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator-=(const Polynomial& other) {
  return *this += -other;
}

template <class T>
Polynomial<T>& Polynomial<T>::operator*=(const T& s) {
  if (pinchlab::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= s;
  return *this;
}

template <class T>
Polynomial<T> Polynomial<T>::operator-() const {
  Polynomial out = *this;
  for (Term& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

template <class T>
Polynomial<T> Polynomial<T>::times(const Polynomial& other) const {
  if (n_ != other.n_) throw DomainError("polynomial dimension mismatch");
  Polynomial out(n_, degree_ + other.degree_);
  out.terms_.reserve(terms_.size() * other.terms_.size());
  for (const Term& a : terms_) {
    for (const Term& b : other.terms_) {
      out.terms_.push_back({a.mono * b.mono, a.coeff * b.coeff});
    }
  }
  out.canonicalize();
  return out;
}

template <class T>
Polynomial<T> Polynomial<T>::derivative(int i) const {
  check_variable(n_, i);
  if (degree_ == 0) return Polynomial(n_, 0);
  Polynomial out(n_, degree_ - 1);
  for (const Term& t : terms_) {
    const int e = t.mono.exponent(i);
    if (e == 0) continue;
    out.terms_.push_back({t.mono.divided_by_variable(i), t.coeff * T(e)});
  }
  out.canonicalize();
  return out;
}

template <class T>
Polynomial<T> Polynomial<T>::times_variable(int i) const {
  check_variable(n_, i);
  Polynomial out(n_, degree_ + 1);
  const Monomial xi = Monomial::variable(i);
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back({t.mono * xi, t.coeff});
  // Multiplication by a single variable preserves the ordering of distinct monomials
  // only up to carries between bytes, so re-sort.
  out.canonicalize();
  return out;
}

template <class T>
Polynomial<T> Polynomial<T>::times_norm_squared() const {
  return times(norm_squared(n_));
}

template <class T>
Polynomial<T> Polynomial<T>::laplacian() const {
  if (degree_ < 2) return Polynomial(n_, degree_ >= 2 ? degree_ - 2 : 0);
  Polynomial out(n_, degree_ - 2);
  for (const Term& t : terms_) {
    for (int i = 0; i < n_; ++i) {
      const int e = t.mono.exponent(i);
      if (e < 2) continue;
      out.terms_.push_back(
          {t.mono.divided_by_variable(i).divided_by_variable(i), t.coeff * T(e * (e - 1))});
    }
  }
  out.canonicalize();
  return out;
}

template <class T>
double Polynomial<T>::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DomainError("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const Term& t : terms_) {
    double v = to_double(t.coeff);
    for (int i = 0; i < n_; ++i) {
      for (int e = t.mono.exponent(i); e > 0; --e) v *= x[static_cast<std::size_t>(i)];
    }
    sum += v;
  }
  return sum;
}

template <class T>
bool Polynomial<T>::operator==(const Polynomial& other) const {
  if (n_ != other.n_) return false;
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].mono != other.terms_[i].mono || terms_[i].coeff != other.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

template <class T>
std::string Polynomial<T>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if constexpr (std::is_same_v<T, Rational>) {
      os << t.coeff.get_str();
    } else {
      os << t.coeff;
    }
    for (int i = 0; i < n_; ++i) {
      const int e = t.mono.exponent(i);
      if (e == 0) continue;
      os << "*x" << (i + 1);
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

Polynomial<double> to_double(const Polynomial<Rational>& p) {
  std::vector<Polynomial<double>::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.mono, t.coeff.get_d()});
  return Polynomial<double>::from_terms(p.dimension(), p.degree(), std::move(terms));
}

template class Polynomial<Rational>;
template class Polynomial<double>;

}  // namespace pinchlab
