#include "pinchlab/sharpness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "pinchlab/errors.hpp"
#include "pinchlab/harmonics.hpp"
#include "pinchlab/normal_subspace.hpp"
#include "pinchlab/sphere_integral.hpp"
#include "pinchlab/thresholds.hpp"

namespace pinchlab {

std::string to_string(Weights w) { return w == Weights::One ? "one" : "half"; }

double weight_value(Weights w) { return w == Weights::One ? 1.0 : 0.5; }

void SearchConfig::validate() const {
  if (n < 2 || n > kMaxVariables) throw DomainError("sharpness search requires 2 <= n <= 8");
  if (k < 1) throw DomainError("sharpness search requires k >= 1");
  if (restarts < 1 || iterations < 1 || mc_samples < 1) {
    throw DomainError("restarts, iterations and mc_samples must be >= 1");
  }
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

double cauchy_schwarz_constant(int n, int k) { return std::sqrt((n - 1.0) * k * (n + k - 2.0)); }

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd sphere_samples(int n, std::int64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd x(count, n);
  for (std::int64_t s = 0; s < count; ++s) {
    double r2 = 0.0;
    do {
      r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        x(s, i) = gauss(rng);
        r2 += x(s, i) * x(s, i);
      }
    } while (r2 == 0.0);
    x.row(s) /= std::sqrt(r2);
  }
  return x;
}

// Orthonormal harmonic basis Y_m / |Y_m| as coefficient matrices over monomials.
struct ScaledBasis {
  int n = 0;
  int k = 0;
  std::vector<Monomial> monos;
  std::vector<Monomial> dmonos;
  Eigen::MatrixXd coef;                // monos x d
  std::vector<Eigen::MatrixXd> dcoef;  // per variable: dmonos x d
  std::vector<RationalPolynomial> elements;
  std::vector<double> inv_norm;
};

ScaledBasis scaled_basis(int n, int k) {
  ScaledBasis b;
  b.n = n;
  b.k = k;
  const auto info = harmonic_basis_info(n, k);
  b.elements = info->elements;
  b.monos = monomials_of_degree(n, k);
  b.dmonos = monomials_of_degree(n, k - 1);
  const auto d = static_cast<Eigen::Index>(b.elements.size());
  b.coef = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b.monos.size()), d);
  b.dcoef.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b.dmonos.size()), d));
  std::unordered_map<std::uint64_t, Eigen::Index> pos;
  for (std::size_t m = 0; m < b.monos.size(); ++m) pos[b.monos[m].bits()] = static_cast<Eigen::Index>(m);
  for (std::size_t m = 0; m < b.dmonos.size(); ++m) pos[b.dmonos[m].bits()] = static_cast<Eigen::Index>(m);
  auto index_of = [&pos](const std::vector<Monomial>&, Monomial m) { return pos.at(m.bits()); };
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto& y = b.elements[static_cast<std::size_t>(j)];
    const double s = 1.0 / std::sqrt(info->norms2[static_cast<std::size_t>(j)].get_d());
    b.inv_norm.push_back(s);
    for (const auto& t : y.terms()) b.coef(index_of(b.monos, t.mono), j) = t.coeff.get_d() * s;
    for (int l = 0; l < n; ++l) {
      const RationalPolynomial dy = y.derivative(l);
      for (const auto& t : dy.terms()) {
        b.dcoef[static_cast<std::size_t>(l)](index_of(b.dmonos, t.mono), j) = t.coeff.get_d() * s;
      }
    }
  }
  return b;
}

// Monomials of degrees 0..k, each built from a parent of one degree less.
struct MonomialLadder {
  std::vector<std::vector<std::pair<int, int>>> steps;  // per degree: (parent index, variable)

  MonomialLadder(int n, int k) {
    std::vector<Monomial> prev{Monomial{}};
    for (int d = 1; d <= k; ++d) {
      const auto cur = monomials_of_degree(n, d);
      std::unordered_map<std::uint64_t, int> where;
      for (std::size_t m = 0; m < prev.size(); ++m) where[prev[m].bits()] = static_cast<int>(m);
      std::vector<std::pair<int, int>> step;
      for (const Monomial& m : cur) {
        int var = 0;
        while (m.exponent(var) == 0) ++var;
        step.emplace_back(where.at(m.divided_by_variable(var).bits()), var);
      }
      steps.push_back(std::move(step));
      prev = cur;
    }
  }

  // Fills top (degree k) and below (degree k-1) for a block of samples.
  void evaluate(const Eigen::Ref<const Eigen::MatrixXd>& x, Eigen::MatrixXd& top, Eigen::MatrixXd& below) const {
    Eigen::MatrixXd cur = Eigen::MatrixXd::Ones(x.rows(), 1);
    for (std::size_t d = 0; d < steps.size(); ++d) {
      Eigen::MatrixXd next(x.rows(), static_cast<Eigen::Index>(steps[d].size()));
      for (std::size_t m = 0; m < steps[d].size(); ++m) {
        const auto [parent, var] = steps[d][m];
        next.col(static_cast<Eigen::Index>(m)) = cur.col(parent).cwiseProduct(x.col(var));
      }
      if (d + 2 == steps.size()) below = next;
      cur = std::move(next);
    }
    if (steps.size() == 1) below = Eigen::MatrixXd::Ones(x.rows(), 1);
    top = std::move(cur);
  }
};

// F on a fixed sample set, with analytic gradient in the coefficient matrix.
// Samples are processed in blocks so memory stays bounded.
class Objective {
 public:
  Objective(const ScaledBasis& basis, Eigen::MatrixXd x, double weight, double epsilon)
      : n_(basis.n), k_(basis.k), weight_(weight), eps2_(epsilon * epsilon), x_(std::move(x)),
        ladder_(basis.n, basis.k), coef_(basis.coef), dcoef_(basis.dcoef) {}

  Eigen::Index samples() const { return x_.rows(); }

  // c: n x d. Returns the sample mean; fills grad (n x d) and per-sample values when asked.
  double evaluate(const RowMatrix& c, RowMatrix* grad, std::vector<double>* per_sample = nullptr) const {
    const Eigen::Index s_count = x_.rows();
    const Eigen::Index n = n_;
    // Field and partial derivatives as linear maps on monomial values.
    const Eigen::MatrixXd a = coef_ * c.transpose();
    Eigen::MatrixXd b(dcoef_[0].rows(), n * n);
    for (int l = 0; l < n_; ++l) b.middleCols(l * n, n) = dcoef_[static_cast<std::size_t>(l)] * c.transpose();
    Eigen::MatrixXd ga, gb;
    if (grad) {
      ga = Eigen::MatrixXd::Zero(a.rows(), n);
      gb = Eigen::MatrixXd::Zero(b.rows(), n * n);
    }
    if (per_sample) per_sample->assign(static_cast<std::size_t>(s_count), 0.0);
    Eigen::MatrixXd top, below;
    RowMatrix u, du, gu, gdu;
    std::vector<double> gv(static_cast<std::size_t>(n_));
    double total = 0.0;
    for (Eigen::Index start = 0; start < s_count; start += kBlock) {
      const Eigen::Index rows = std::min(kBlock, s_count - start);
      const auto x = x_.middleRows(start, rows);
      ladder_.evaluate(x, top, below);
      u.noalias() = top * a;
      du.noalias() = below * b;  // du(s, l n + i) = d_l u_i
      if (grad) {
        gu.setZero(rows, n);
        gdu.setZero(rows, n * n);
      }
      for (Eigen::Index s = 0; s < rows; ++s) {
        const double* us = u.row(s).data();
        const double* ds = du.row(s).data();
        double u2 = 0.0;
        for (int i = 0; i < n_; ++i) u2 += us[i] * us[i];
        double row = 0.0;
        for (int i = 0; i < n_; ++i) {
          const double ui = us[i];
          const double ai = std::sqrt(std::max(u2 - ui * ui, 0.0) + eps2_);
          double g2 = 0.0;
          for (int l = 0; l < n_; ++l) {
            const double g = ds[l * n_ + i] - k_ * x(s, l) * ui;
            gv[static_cast<std::size_t>(l)] = g;
            g2 += g * g;
          }
          const double bi = std::sqrt(g2 + eps2_);
          row += ai * bi;
          if (grad) {
            double* gus = gu.row(s).data();
            double* gds = gdu.row(s).data();
            const double ta = weight_ * bi / ai;
            for (int j = 0; j < n_; ++j) {
              if (j != i) gus[j] += ta * us[j];
            }
            const double tb = weight_ * ai / bi;
            for (int l = 0; l < n_; ++l) {
              const double g = tb * gv[static_cast<std::size_t>(l)];
              gds[l * n_ + i] += g;
              gus[i] -= k_ * x(s, l) * g;
            }
          }
        }
        row *= weight_;
        if (per_sample) (*per_sample)[static_cast<std::size_t>(start + s)] = row;
        total += row;
      }
      if (grad) {
        ga.noalias() += top.transpose() * gu;
        gb.noalias() += below.transpose() * gdu;
      }
    }
    const double inv = 1.0 / static_cast<double>(s_count);
    if (grad) {
      RowMatrix g = ga.transpose() * coef_;
      for (int l = 0; l < n_; ++l) {
        g.noalias() += gb.middleCols(l * n, n).transpose() * dcoef_[static_cast<std::size_t>(l)];
      }
      *grad = g * inv;
    }
    return total * inv;
  }

 private:
  static constexpr Eigen::Index kBlock = 4096;
  int n_;
  int k_;
  double weight_;
  double eps2_;
  Eigen::MatrixXd x_;
  MonomialLadder ladder_;
  Eigen::MatrixXd coef_;
  std::vector<Eigen::MatrixXd> dcoef_;
};

// Search coordinates q map to the coefficient matrix through an isometry P.
struct Parametrization {
  int n = 0;
  Eigen::Index d = 0;
  bool identity = true;
  Eigen::MatrixXd p;  // (n d) x m, orthonormal columns

  Eigen::Index dim() const { return identity ? n * d : p.cols(); }

  RowMatrix to_matrix(const Eigen::VectorXd& q) const {
    Eigen::VectorXd flat = identity ? q : Eigen::VectorXd(p * q);
    return Eigen::Map<const RowMatrix>(flat.data(), n, d);
  }

  Eigen::VectorXd pull_back(const RowMatrix& g) const {
    const Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
    return identity ? flat : Eigen::VectorXd(p.transpose() * flat);
  }
};

Parametrization make_parametrization(const ScaledBasis& basis, bool constrained) {
  Parametrization par;
  par.n = basis.n;
  par.d = static_cast<Eigen::Index>(basis.elements.size());
  if (!constrained) return par;
  par.identity = false;
  const auto fields = normal_subspace_basis(basis.n, basis.k, Bundle::form(1));
  if (fields->empty()) throw ZeroSubspaceError("constrained sharpness search: normal subspace is zero");
  Eigen::MatrixXd raw(par.n * par.d, static_cast<Eigen::Index>(fields->size()));
  for (std::size_t f = 0; f < fields->size(); ++f) {
    for (int i = 0; i < basis.n; ++i) {
      const auto& comp = (*fields)[f].component(static_cast<std::size_t>(i));
      for (Eigen::Index m = 0; m < par.d; ++m) {
        const Rational ip = sphere_mean_product(comp, basis.elements[static_cast<std::size_t>(m)]);
        raw(i * par.d + m, static_cast<Eigen::Index>(f)) = ip.get_d() * basis.inv_norm[static_cast<std::size_t>(m)];
      }
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  par.p = qr.householderQ() * Eigen::MatrixXd::Identity(raw.rows(), raw.cols());
  return par;
}

struct Ascent {
  Eigen::VectorXd q;
  double value = 0.0;
};

// Ascent of F(q)/|q|^2 on the unit sphere: limited-memory quasi-Newton
// directions in the tangent space, backtracking, renormalization each step.
Ascent ascend(const Objective& obj, const Parametrization& par, Eigen::VectorXd q, int iterations) {
  constexpr std::size_t kMemory = 8;
  q.normalize();
  RowMatrix g;
  double f = obj.evaluate(par.to_matrix(q), &g);
  auto tangent = [&](const RowMatrix& gm, const Eigen::VectorXd& at, double value) {
    Eigen::VectorXd t = par.pull_back(gm);
    t -= 2.0 * value * at;
    return t;
  };
  Eigen::VectorXd grad = tangent(g, q, f);
  std::vector<Eigen::VectorXd> ss, ys;
  std::vector<double> rho;
  double step0 = 0.5;
  // Stop once the last kWindow steps together gained less than kTolerance
  // relative; Monte-Carlo error is orders of magnitude larger.
  constexpr std::size_t kWindow = 10;
  constexpr double kTolerance = 1e-6;
  std::vector<double> recent;
  for (int it = 0; it < iterations; ++it) {
    if (grad.norm() < 1e-10) break;
    // Two-loop recursion on the ascent problem.
    Eigen::VectorXd d = grad;
    std::vector<double> alpha(ss.size());
    for (std::size_t j = ss.size(); j-- > 0;) {
      alpha[j] = rho[j] * ss[j].dot(d);
      d -= alpha[j] * ys[j];
    }
    if (!ss.empty()) d *= ss.back().dot(ys.back()) / ys.back().squaredNorm();
    for (std::size_t j = 0; j < ss.size(); ++j) d += (alpha[j] - rho[j] * ys[j].dot(d)) * ss[j];
    d -= d.dot(q) * q;
    double slope = d.dot(grad);
    double t = 1.0;
    if (ss.empty() || slope <= 0.0) {
      ss.clear();
      ys.clear();
      rho.clear();
      d = grad;
      slope = d.dot(grad);
      t = step0;
    }
    bool moved = false;
    Eigen::VectorXd cand;
    RowMatrix gc;
    double fc = f;
    for (int tries = 0; tries < 40; ++tries, t *= 0.5) {
      cand = q + t * d;
      cand.normalize();
      fc = obj.evaluate(par.to_matrix(cand), &gc);
      if (fc > f + 1e-4 * t * slope) {
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (ss.empty()) step0 = std::min(1.0, 2.0 * t);
    const Eigen::VectorXd gnew = tangent(gc, cand, fc);
    Eigen::VectorXd sv = cand - q;
    Eigen::VectorXd yv = grad - gnew;  // curvature pair of -F
    sv -= sv.dot(cand) * cand;
    yv -= yv.dot(cand) * cand;
    const double sy = sv.dot(yv);
    if (sy > 1e-16 * sv.norm() * yv.norm()) {
      ss.push_back(std::move(sv));
      ys.push_back(std::move(yv));
      rho.push_back(1.0 / sy);
      if (ss.size() > kMemory) {
        ss.erase(ss.begin());
        ys.erase(ys.begin());
        rho.erase(rho.begin());
      }
    }
    const double gain = fc - f;
    q = std::move(cand);
    f = fc;
    grad = gnew;
    recent.push_back(gain);
    if (recent.size() > kWindow) recent.erase(recent.begin());
    if (recent.size() == kWindow && std::accumulate(recent.begin(), recent.end(), 0.0) < kTolerance * std::abs(f)) break;
  }
  return {std::move(q), f};
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  std::uint64_t out = 0;
  std::vector<std::uint32_t> words(2);
  seq.generate(words.begin(), words.end());
  out = (std::uint64_t{words[0]} << 32) | words[1];
  return out;
}

constexpr std::uint64_t kScreenSalt = 0x5c7ee7ULL;
constexpr std::uint64_t kTrainSalt = 0x7a1aULL;
constexpr std::uint64_t kFreshSalt = 0xf7e54ULL;

}  // namespace

FValue f_functional(const HarmonicField<double>& u, Weights weights, std::int64_t mc_samples, std::uint64_t seed) {
  if (u.bundle().kind() != BundleKind::Form || u.bundle().p() != 1) {
    throw DomainError("f_functional needs a vector-valued (Form(1)) field");
  }
  if (mc_samples < 2) throw ConvergenceError("f_functional: Monte-Carlo needs at least two samples");
  const int n = u.dimension();
  const int k = u.k();
  const double w = weight_value(weights);
  std::vector<std::vector<RealPolynomial>> partial(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) partial[static_cast<std::size_t>(i)].push_back(u.component(static_cast<std::size_t>(i)).derivative(l));
  }
  std::vector<double> vals(static_cast<std::size_t>(n));
  auto integrand = [&](std::span<const double> x) {
    for (int i = 0; i < n; ++i) {
      vals[static_cast<std::size_t>(i)] = u.component(static_cast<std::size_t>(i)).evaluate(x);
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ui = vals[static_cast<std::size_t>(i)];
      // Summed directly: |u|^2 - u_i^2 leaves rounding residue when u = u_i e_i.
      double rest = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) rest += vals[static_cast<std::size_t>(j)] * vals[static_cast<std::size_t>(j)];
      }
      double g2 = 0.0;
      for (int l = 0; l < n; ++l) {
        const double g = partial[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].evaluate(x) -
                         k * x[static_cast<std::size_t>(l)] * ui;
        g2 += g * g;
      }
      sum += std::sqrt(rest) * std::sqrt(g2);
    }
    return w * sum;
  };
  const QuadratureResult q = monte_carlo_sphere_mean(n, integrand, mc_samples, seed);
  return {q.value, q.error_estimate};
}

FValue f_functional(const HarmonicField<Rational>& u, Weights weights, std::int64_t mc_samples, std::uint64_t seed) {
  return f_functional(to_double(u), weights, mc_samples, seed);
}

HarmonicField<double> field_from_coefficients(int n, int k, const std::vector<double>& coefficients) {
  const auto info = harmonic_basis_info(n, k);
  const std::size_t d = info->elements.size();
  if (coefficients.size() != static_cast<std::size_t>(n) * d) {
    throw DomainError("coefficient vector has the wrong length for (n, k)");
  }
  std::vector<RealPolynomial> comps;
  for (int i = 0; i < n; ++i) {
    RealPolynomial p(n, k);
    for (std::size_t m = 0; m < d; ++m) {
      const double c = coefficients[static_cast<std::size_t>(i) * d + m];
      if (c == 0.0) continue;
      p += to_double(info->elements[m]) * (c / std::sqrt(info->norms2[m].get_d()));
    }
    comps.push_back(std::move(p));
  }
  return HarmonicField<double>(n, k, Bundle::form(1), std::move(comps));
}

SearchResult sharpness_search(const SearchConfig& config) {
  config.validate();
  const int n = config.n;
  // Constant weights scale F uniformly: climb on w = 1, report w * F.
  const double w = weight_value(config.weights);
  const ScaledBasis basis = scaled_basis(n, config.k);
  const Parametrization par = make_parametrization(basis, config.constrained);

  // Every restart climbs on a small screening set. Survivors are refined on
  // sample sets of growing size (mc/16, mc/4, mc), the field keeping fewer
  // candidates at each stage; the winner is re-evaluated on independent samples.
  const std::int64_t screen_count =
      std::min<std::int64_t>(config.mc_samples, std::max<std::int64_t>(2000, 8 * par.dim()));
  SearchResult result;
  result.seed = config.seed;
  std::vector<Ascent> found;
  {
    const Objective screen(basis, sphere_samples(n, screen_count, mix(config.seed, kScreenSalt)), 1.0, config.epsilon);
    for (int r = 0; r < config.restarts; ++r) {
      std::mt19937_64 rng(config.seed ^ static_cast<std::uint64_t>(r));
      std::normal_distribution<double> gauss;
      Eigen::VectorXd q(par.dim());
      for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = gauss(rng);
      Ascent a = ascend(screen, par, std::move(q), config.iterations);
      result.restart_values.push_back(a.value);
      result.trace.push_back(result.trace.empty() ? a.value : std::max(result.trace.back(), a.value));
      found.push_back(std::move(a));
    }
  }
  std::vector<int> alive(found.size());
  std::iota(alive.begin(), alive.end(), 0);
  auto rank = [&] {
    std::stable_sort(alive.begin(), alive.end(), [&](int a, int b) {
      return found[static_cast<std::size_t>(a)].value > found[static_cast<std::size_t>(b)].value;
    });
  };
  rank();
  constexpr std::int64_t kStageDivisor[] = {16, 4, 1};
  constexpr std::size_t kStageKeep[] = {3, 2, 1};
  for (std::size_t stage = 0; stage < 3; ++stage) {
    const std::int64_t count = config.mc_samples / kStageDivisor[stage];
    if (count <= screen_count && stage < 2) continue;
    alive.resize(std::min(alive.size(), kStageKeep[stage]));
    const Objective train(basis, sphere_samples(n, count, mix(config.seed, kTrainSalt + stage)), 1.0, config.epsilon);
    for (int r : alive) {
      auto& a = found[static_cast<std::size_t>(r)];
      a = ascend(train, par, a.q, config.iterations);
    }
    rank();
  }
  const Ascent& best = found[static_cast<std::size_t>(alive.front())];
  result.best_restart = alive.front();
  result.train_value = best.value;

  const Objective fresh(basis, sphere_samples(n, config.mc_samples, mix(config.seed, kFreshSalt)), 1.0, config.epsilon);
  const RowMatrix c = par.to_matrix(best.q);
  std::vector<double> per_sample;
  result.c_estimate = fresh.evaluate(c, nullptr, &per_sample);
  if (per_sample.size() > 1) {
    double m2 = 0.0;
    for (double v : per_sample) m2 += (v - result.c_estimate) * (v - result.c_estimate);
    const double var = m2 / static_cast<double>(per_sample.size() - 1);
    result.stderr_ = std::sqrt(var / static_cast<double>(per_sample.size()));
  }
  result.c_estimate *= w;
  result.stderr_ *= w;
  result.train_value *= w;
  for (double& v : result.restart_values) v *= w;
  for (double& v : result.trace) v *= w;
  result.best_coefficients.assign(c.data(), c.data() + c.size());
  result.quotient = result.c_estimate / cauchy_schwarz_constant(n, config.k);
  if (config.k == 3 && config.weights == Weights::One && result.c_estimate > 0.0 &&
      result.c_estimate <= cauchy_schwarz_constant(n, 3)) {
    result.delta_new = delta_from_constant(n, result.c_estimate);
  } else {
    result.delta_new = std::nan("");
  }
  return result;
}

double delta_from_constant(int n, double c) {
  if (n < 3) throw DomainError("delta_from_constant requires n >= 3");
  if (!(c > 0.0) || c > cauchy_schwarz_constant(n, 3) * (1.0 + 1e-12)) {
    throw DomainError("delta_from_constant requires 0 < C <= sqrt(3(n^2-1))");
  }
  const int k = 3;
  const double kk = k * (n + k - 2.0);
  const double a = 1.0 / (2.0 * kk);
  const double r = (2.0 / 3.0) * c / (3.0 * (n + 1.0));
  const double d1 = (a + r) / (1.0 - a + r);
  const double g = (n + 2.0 * k - 2.0) / (2.0 * kk);
  const double h = (n + 2.0 * k - 2.0) / (n + 2.0 * k - 4.0);
  const double d2 = (g + h * (a + r)) / (1.0 - g + h * (1.0 - a + r));
  return std::max(d1, d2);
}

}  // namespace pinchlab
