#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace pinchlab {

using EuclideanVector = Eigen::VectorXd;

// <a,c> b - <b,c> a
EuclideanVector g_tensor(const EuclideanVector& a, const EuclideanVector& b, const EuclideanVector& c);
// <a,c><b,d> - <b,c><a,d>
double g_curvature(const EuclideanVector& a, const EuclideanVector& b, const EuclideanVector& c,
                   const EuclideanVector& d);

/// p-form over R^n with coefficients on increasing index subsets (bitmasks,
/// lexicographic order). T is double for numerics, an integer type for exact checks.
template <class T>
class BasicPForm {
 public:
  BasicPForm(int n, int p);
  static BasicPForm basis(int n, std::uint32_t mask);
  static BasicPForm from_vector(const EuclideanVector& v);

  int dimension() const noexcept { return n_; }
  int degree() const noexcept { return p_; }
  const std::vector<std::uint32_t>& subsets() const noexcept { return *subsets_; }
  const std::vector<T>& coefficients() const noexcept { return coeffs_; }
  T coefficient(std::uint32_t mask) const;
  void add(std::uint32_t mask, T value);

  BasicPForm wedge(const BasicPForm& other) const;
  /// Interior product with e_i.
  BasicPForm interior(int i) const;
  T inner(const BasicPForm& other) const;

  BasicPForm& operator+=(const BasicPForm& other);
  BasicPForm& operator*=(T s);
  bool operator==(const BasicPForm& other) const { return n_ == other.n_ && p_ == other.p_ && coeffs_ == other.coeffs_; }

 private:
  std::size_t position(std::uint32_t mask) const;

  int n_;
  int p_;
  const std::vector<std::uint32_t>* subsets_;
  std::vector<T> coeffs_;
};

using PForm = BasicPForm<double>;

/// Increasing p-subsets of {0..n-1} as bitmasks, lexicographic; memoized.
const std::vector<std::uint32_t>& form_subsets(int n, int p);

/// Wedge of the given vectors.
PForm pure_wedge(const std::vector<EuclideanVector>& vs);

/// Symmetric n x n matrix with trace pairing.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::MatrixXd m);
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double inner(const SymMatrix& other) const { return (m_ * other.m_).trace(); }

 private:
  Eigen::MatrixXd m_;
};

/// Algebraic (4,0) curvature tensor on R^n with pinching metadata.
class CurvatureTensor {
 public:
  CurvatureTensor(int n, double delta);
  static CurvatureTensor from_function(int n, double delta, const std::function<double(int, int, int, int)>& f);

  int dimension() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }

  double operator()(int a, int b, int c, int d) const { return values_[index(a, b, c, d)]; }
  double& at(int a, int b, int c, int d) { return values_[index(a, b, c, d)]; }

  double evaluate(const EuclideanVector& a, const EuclideanVector& b, const EuclideanVector& c,
                  const EuclideanVector& d) const;
  /// R(a,b,b,a) / (|a|^2|b|^2 - <a,b>^2); -1 for R = G.
  double sectional(const EuclideanVector& a, const EuclideanVector& b) const;
  /// Largest violation of the index symmetries and the first Bianchi identity.
  double symmetry_defect() const;

  /// Skew endomorphism c -> R(a,b)c with <R(a,b)c, d> = R(a,b,c,d).
  Eigen::MatrixXd endomorphism(const EuclideanVector& a, const EuclideanVector& b) const;

  CurvatureTensor operator-(const CurvatureTensor& other) const;
  CurvatureTensor operator*(double s) const;

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
  }
  int n_;
  double delta_;
  std::vector<double> values_;
};

/// R = G (constant curvature -1), delta = 1.
CurvatureTensor g_curvature_tensor(int n);
/// R_0 = R - (1+delta)/2 G.
CurvatureTensor r0_split(const CurvatureTensor& r);
/// Complex hyperbolic model on R^{2m}, sectional curvatures in [-1, -1/4].
CurvatureTensor ch_model(int m);
/// Block complex structure: J e_{2a} = e_{2a+1}, J e_{2a+1} = -e_{2a}.
Eigen::MatrixXd complex_structure(int n);

/// Derivation extension of a skew A to Lambda^p, in the basis form_subsets(n, p).
Eigen::MatrixXd extend_to_forms(const Eigen::MatrixXd& a, int p);
PForm apply_to_form(const Eigen::MatrixXd& a, const PForm& w);
/// C -> AC - CA.
SymMatrix extend_to_sym2(const Eigen::MatrixXd& a, const SymMatrix& c);
/// Matrix of C -> [A, C] in the orthonormal basis e_ii, (e_ij + e_ji)/sqrt 2 of Sym^2.
Eigen::MatrixXd sym2_commutator_matrix(const Eigen::MatrixXd& a);

/// Largest singular value by power iteration on M^T M (relative tolerance
/// 1e-10, at most 1e4 iterations; ConvergenceError otherwise).
double operator_norm(const Eigen::MatrixXd& m);

/// Orthonormal vectors from Gram-Schmidt on Gaussians; draws with a pivot
/// below 1e-8 are redrawn.
std::vector<EuclideanVector> random_frame(int n, int count, std::mt19937_64& rng);
EuclideanVector random_unit_vector(int n, std::mt19937_64& rng);
Eigen::MatrixXd random_skew(int n, std::mt19937_64& rng);

/// Exact check of sum_i e_i ^ iota_{e_i} = p id on a basis of Lambda^p R^n.
bool wedge_contract_identity_check(int p, int n);

struct FrameSearchResult {
  double max_random = 0.0;  // best over the random frames
  double max_refined = 0.0;  // after local ascent from the best frames
  std::int64_t frames = 0;
};

/// Maximizes |R(a,b,c,d)| over orthonormal 4-frames: random draws, then
/// hill-climbing from the best few.
FrameSearchResult max_over_frames(const CurvatureTensor& r, std::int64_t frames, std::uint64_t seed);

}  // namespace pinchlab
