#include "pinchlab/thresholds.hpp"

#include <algorithm>
#include <cmath>

#include "pinchlab/classify.hpp"
#include "pinchlab/errors.hpp"

namespace pinchlab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

void check_delta(double delta) { require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]"); }

double eigenvalue(int n, int k) { return static_cast<double>(k) * (n + k - 2); }

double c_ratio(int n, int k) {
  return eigenvalue(n, k) * (n + 2 * k - 4) / (static_cast<double>(n + k - 3) * (k - 1) * (n + 2 * k - 2));
}

// Root of an affine function of delta.
template <class F>
double affine_root(F f) {
  const double f0 = f(0.0);
  const double f1 = f(1.0);
  return -f0 / (f1 - f0);
}

}  // namespace

double coupling_r(int n, int p, int k) {
  require(n >= 2 && k >= 1 && p >= 0, "coupling_r requires n >= 2, k >= 1, p >= 0");
  return 2.0 * p / 3.0 * std::sqrt((n - 1.0) / eigenvalue(n, k));
}

double coupling_s(int n, int p, int k) { return (n + 2.0 * k - 2.0) * coupling_r(n, p, k); }

// The delta = 0 endpoint is evaluated for the root computation, so the
// constants accept delta in [0, 1] internally.
namespace {

double b_raw(int n, int k, double delta, int p) {
  const double kk = eigenvalue(n, k);
  return delta * kk - (1.0 + delta) * p / 2.0 - 2.0 * p / 3.0 * (1.0 - delta) * std::sqrt(kk * (n - 1.0));
}

double c_forms_raw(int n, int k, double delta, int p) {
  if (k == 1) return -(n - 2.0) * (1.0 + delta) / 2.0;
  return c_ratio(n, k) * b_raw(n, k - 1, delta, p - 1) - (n + 2.0 * k - 4.0) * (1.0 + delta) / 2.0;
}

double c_sym2_raw(int n, int k, double delta) {
  if (k == 1) return -(n - 2.0) * (1.0 + delta);
  return c_ratio(n, k) * b_raw(n, k - 1, delta, 1) - (n + 2.0 * k - 4.0) * (1.0 + delta);
}

double d_raw(int n, int k, double delta) {
  if (k == 1) return 0.0;
  return (n + 2.0 * k - 6.0) * c_ratio(n, k) * (1.0 + delta) / 2.0;
}

void check_nkp(int n, int k, int p) {
  require(n >= 3, "n must be at least 3");
  require(k >= 1, "k must be at least 1");
  require(p >= 0, "p must be non-negative");
}

}  // namespace

double b_forms(int n, int k, double delta, int p) {
  check_nkp(n, k, p);
  check_delta(delta);
  return b_raw(n, k, delta, p);
}

double b_sym2(int n, int k, double delta) { return b_forms(n, k, delta, 2); }

double c_forms(int n, int k, double delta, int p) {
  check_nkp(n, k, p);
  require(p >= 1, "C requires p >= 1");
  check_delta(delta);
  return c_forms_raw(n, k, delta, p);
}

double c_sym2(int n, int k, double delta) {
  check_nkp(n, k, 0);
  check_delta(delta);
  return c_sym2_raw(n, k, delta);
}

double d_constant(int n, int k, double delta) {
  check_nkp(n, k, 0);
  check_delta(delta);
  return d_raw(n, k, delta);
}

ThresholdBundle constants(int n, int k, int p, double delta) {
  check_nkp(n, k, p);
  check_delta(delta);
  ThresholdBundle t;
  t.n = n;
  t.k = k;
  t.p = p;
  t.delta = delta;
  t.r = coupling_r(n, p, k);
  t.s = coupling_s(n, p, k);
  t.b_forms = b_raw(n, k, delta, p);
  t.b_sym2 = b_raw(n, k, delta, 2);
  t.c_forms = p >= 1 ? c_forms_raw(n, k, delta, p) : 0.0;
  t.c_sym2 = c_sym2_raw(n, k, delta);
  t.d = d_raw(n, k, delta);
  return t;
}

double delta1(int n, int k, int p) {
  check_nkp(n, k, p);
  require(p >= 1, "delta1 requires p >= 1");
  const double a = p / (2.0 * eigenvalue(n, k));
  const double r = coupling_r(n, p, k);
  return (a + r) / (1.0 - a + r);
}

double delta2(int n, int k, int p) {
  check_nkp(n, k, p);
  require(k >= 2 && p >= 1, "delta2 requires k >= 2 and p >= 1");
  const double a = p / (2.0 * eigenvalue(n, k));
  const double r = coupling_r(n, p, k);
  const double lower = (p - 1.0) / (2.0 * (n + k - 3) * (k - 1));
  const double r_lower = coupling_r(n, p - 1, k - 1);
  const double g = (n + 2.0 * k - 2.0) / (2.0 * eigenvalue(n, k));
  const double h = (n + 2.0 * k - 2.0) / (n + 2.0 * k - 4.0);
  const double num = lower + r_lower + g + h * (a + r);
  const double den = 1.0 - lower + r_lower - g + h * (1.0 - a + r);
  return num / den;
}

double delta2_sym(int n, int k) {
  require(n >= 3, "n must be at least 3");
  require(k >= 4 && k % 2 == 0, "delta2_sym requires even k >= 4");
  const double lower = 1.0 / (2.0 * (k - 1) * (n + k - 3));
  const double r_lower = coupling_r(n, 1, k - 1);
  const double g = (n + 2.0 * k - 2.0) / eigenvalue(n, k);
  const double h = (n + 2.0 * k - 2.0) / (n + 2.0 * k - 4.0);
  const double a = 1.0 / eigenvalue(n, k);
  const double r = coupling_r(n, 2, k);
  const double e = (n + 2.0 * k - 6.0) / (2.0 * (k - 1) * (n + k - 3));
  const double num = lower + r_lower + g + h * (a + r) + e;
  const double den = 1.0 - lower + r_lower - g + h * (1.0 - a + r) - e;
  return num / den;
}

double delta2_sym_deg2(int n, int r) {
  require(n >= 3, "n must be at least 3");
  require(r >= 1 && r <= n - 1, "delta2_sym_deg2 requires 1 <= r <= n-1");
  const double a = 4.0 / 3.0 * std::sqrt(2.0 * n * (n - 1.0));
  const double b = static_cast<double>(n) / (n - r);
  return (a + b) / (2.0 * n + a - b);
}

double delta_lambda1(int n) {
  require(n >= 3, "n must be at least 3");
  const double nn = n;
  const double q = 2.0 / 3.0 * std::sqrt(3.0 * (nn * nn - 1.0));
  if (n <= 8) {
    return (q + 0.5 * (nn + 3.0)) / (3.0 * (nn + 1.0) + q - 0.5 + 0.5 * (nn + 2.0) * (5.0 * nn + 2.0) / (nn + 4.0));
  }
  return (q + 0.5) / (3.0 * (nn + 1.0) + q - 0.5);
}

double delta_sym2(int n) {
  require(n >= 3, "n must be at least 3");
  const double nn = n;
  const double c = 2.0 * (nn + 2.0) * (nn + 4.0) / (3.0 * (nn + 1.0) * (nn + 6.0));
  const double q = 4.0 / 3.0 * std::sqrt(3.0 * (nn * nn - 1.0));
  const double t = 8.0 / 3.0 * std::sqrt((nn - 1.0) * (nn + 2.0));
  return (nn + 5.0 + t + c * (nn + 3.0 + q)) / (3.0 * (nn + 1.0) + t + c * (5.0 * nn + 3.0 + q));
}

namespace via_root {

double delta1(int n, int k, int p) {
  check_nkp(n, k, p);
  return affine_root([&](double d) { return b_raw(n, k, d, p); });
}

double delta2(int n, int k, int p) {
  check_nkp(n, k, p);
  require(k >= 2 && p >= 1, "delta2 requires k >= 2 and p >= 1");
  return affine_root([&](double d) { return b_raw(n, k, d, p) + c_forms_raw(n, k, d, p); });
}

double delta2_sym(int n, int k) {
  require(k >= 4 && k % 2 == 0, "delta2_sym requires even k >= 4");
  return affine_root([&](double d) { return b_raw(n, k, d, 2) + c_sym2_raw(n, k, d) - d_raw(n, k, d); });
}

double delta2_sym_deg2(int n, int r) {
  require(r >= 1 && r <= n - 1, "delta2_sym_deg2 requires 1 <= r <= n-1");
  // B^{Sym2} at k = 2 with the rank-r projector term in place of (1+delta)p/2.
  const double kk = eigenvalue(n, 2);
  return affine_root([&](double d) {
    return d * kk - (1.0 + d) * n / (n - r) - 4.0 / 3.0 * (1.0 - d) * std::sqrt(kk * (n - 1.0));
  });
}

double delta_lambda1(int n) { return std::max(delta1(n, 3, 1), delta2(n, 3, 1)); }

double delta_sym2(int n) { return delta2_sym(n, 4); }

}  // namespace via_root

std::string to_string(Binding b) {
  switch (b) {
    case Binding::Delta1:
      return "delta1";
    case Binding::Delta2:
      return "delta2";
    case Binding::Delta2Sym:
      return "delta2_sym";
    case Binding::Delta2SymDeg2:
      return "delta2_sym_deg2";
    case Binding::None:
      return "none";
  }
  return "none";
}

ThresholdReport forms_report(int n, int k, int p, const std::string& label) {
  ThresholdReport r;
  r.n = n;
  r.label = label;
  r.delta1 = delta1(n, k, p);
  r.delta2 = delta2(n, k, p);
  r.composite = std::max(r.delta1, r.delta2);
  r.binding = r.delta1 >= r.delta2 ? Binding::Delta1 : Binding::Delta2;
  return r;
}

MasterThreshold delta_master(int n) {
  require(n >= 3, "delta_master requires n >= 3");
  MasterThreshold out;
  auto add = [&](ThresholdReport r) {
    if (out.cases.empty() || r.composite > out.delta) {
      out.delta = r.composite;
      out.label = r.label;
      out.binding = r.binding;
    }
    out.cases.push_back(std::move(r));
  };
  auto vector_field = [&] {
    ThresholdReport r;
    r.n = n;
    r.label = "odd_vector_field";
    r.composite = delta_lambda1(n);
    r.binding = n <= 8 ? Binding::Delta2 : Binding::Delta1;
    return r;
  };
  if (n % 2 == 1 && n != 7) {
    ThresholdReport r;
    r.n = n;
    r.label = "unconditional";
    out.cases.push_back(r);
    out.label = r.label;
    return out;
  }
  if (n == 7) {
    add(forms_report(7, 3, 2, "complex_structure_7"));
  } else if (n == 8) {
    add(forms_report(8, 3, 3, "g2_structure_8"));
    ThresholdReport r;
    r.n = 8;
    r.label = "even_projector";
    r.delta1 = delta1(8, 4, 2);
    r.delta2 = delta_sym2(8);
    const double deg2 = delta2_sym_deg2(8, std::min(radon_hurwitz(8) - 1, 3));
    r.composite = std::max({r.delta1, r.delta2, deg2});
    r.binding = r.composite == r.delta2 ? Binding::Delta2Sym
                                        : (r.composite == deg2 ? Binding::Delta2SymDeg2 : Binding::Delta1);
    add(r);
  } else if (n == 134) {
    add(forms_report(134, 3, 3, "lie_bracket_134"));
    add(vector_field());
  } else if (n == 4 || n % 4 == 2) {
    add(vector_field());
  } else {
    ThresholdReport r;
    r.n = n;
    r.label = "even_projector";
    r.delta2 = delta_sym2(n);
    r.composite = r.delta2;
    r.binding = Binding::Delta2Sym;
    add(r);
  }
  return out;
}

MonotonicityReport monotonicity_scan(const GridRange& g) {
  MonotonicityReport rep;
  auto record = [&](bool ok, const char* what, int n, int k, int p, double lhs, double rhs) {
    ++rep.checks;
    if (!ok) rep.violations.push_back({what, n, k, p, lhs, rhs});
  };
  for (int n = g.n_min; n <= g.n_max; ++n) {
    for (std::size_t pi = 0; pi < g.ps.size(); ++pi) {
      const int p = g.ps[pi];
      if (p > n) continue;
      for (int k = g.k_min; k <= g.k_max; ++k) {
        if (k + 1 <= g.k_max) {
          const double a1 = delta1(n, k, p), b1 = delta1(n, k + 1, p);
          record(b1 < a1, "delta1 not decreasing in k", n, k, p, a1, b1);
          const double a2 = delta2(n, k, p), b2 = delta2(n, k + 1, p);
          record(b2 < a2, "delta2 not decreasing in k", n, k, p, a2, b2);
        }
        if (pi + 1 < g.ps.size() && g.ps[pi + 1] > p && g.ps[pi + 1] <= n) {
          const int q = g.ps[pi + 1];
          const double a1 = delta1(n, k, p), b1 = delta1(n, k, q);
          record(b1 > a1, "delta1 not increasing in p", n, k, p, a1, b1);
          const double a2 = delta2(n, k, p), b2 = delta2(n, k, q);
          record(b2 > a2, "delta2 not increasing in p", n, k, p, a2, b2);
        }
      }
    }
    if (n >= 7) {
      const int k0 = std::max(4, g.k_min + (g.k_min % 2));
      for (int k = k0; k + 2 <= g.k_max; k += 2) {
        const double a = delta2_sym(n, k), b = delta2_sym(n, k + 2);
        record(b < a, "delta2_sym not decreasing in k", n, k, 2, a, b);
      }
    }
  }
  return rep;
}

double truncate_decimals(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // Guard against representation error just below a printed boundary.
  return std::trunc(x * scale * (1.0 + 1e-15)) / scale;
}

}  // namespace pinchlab
