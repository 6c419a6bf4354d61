#include "pinchlab/commands.hpp"

#include <chrono>
#include <cmath>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "pinchlab/classify.hpp"
#include "pinchlab/errors.hpp"
#include "pinchlab/harmonics.hpp"
#include "pinchlab/mode.hpp"
#include "pinchlab/multilinear.hpp"
#include "pinchlab/normal_subspace.hpp"
#include "pinchlab/pestov.hpp"
#include "pinchlab/report.hpp"
#include "pinchlab/sharpness.hpp"
#include "pinchlab/thresholds.hpp"

namespace pinchlab::cli {

namespace {

constexpr double kLitEven = 0.8649;
constexpr double kLit78 = 0.9805;
constexpr double kConjecture = 0.25;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void require_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw DomainError("--format must be csv or json");
}

// Prints or writes the report; CSV files written with --out get a sidecar manifest.
void finish(const Options& o, Manifest& m, const ordered_json& results, const std::string& csv, std::ostream& out) {
  if (o.format == "json") {
    const std::string doc = envelope(m, results);
    if (o.out.empty()) {
      out << doc;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!(f << doc)) throw std::runtime_error("cannot write " + o.out);
    }
    return;
  }
  if (o.out.empty()) {
    out << csv;
    return;
  }
  m.write(o.out, csv);
  const std::string sidecar = o.out + ".manifest.json";
  std::ofstream f(sidecar, std::ios::binary);
  if (!(f << envelope(m, results))) throw std::runtime_error("cannot write " + sidecar);
}

std::string literature_even(int n) { return n % 2 == 0 && n != 8 ? format_number(kLitEven) : ""; }
std::string literature_78(int n) { return n == 7 || n == 8 ? format_number(kLit78) : ""; }

double literature_bound(int n) {
  if (n == 7 || n == 8) return kLit78;
  if (n % 2 == 1) return 0.0;
  return kLitEven;
}

}  // namespace

int cmd_thresholds(const Options& o, std::ostream& out) {
  require_format(o);
  if (o.n_min < 3 || o.n_min > o.n_max) throw DomainError("need 3 <= n-min <= n-max");
  Manifest m("thresholds", {{"n_min", o.n_min}, {"n_max", o.n_max}, {"format", o.format}}, o.seed);
  Csv csv({"n", "case", "delta", "binding_branch", "lit_even", "lit_78", "conjecture"});
  ordered_json rows = ordered_json::array();
  for (int n = o.n_min; n <= o.n_max; ++n) {
    const MasterThreshold t = delta_master(n);
    const std::string binding = to_string(t.binding);
    csv.row({std::to_string(n), t.label, format_number(t.delta), binding, literature_even(n), literature_78(n),
             format_number(kConjecture)});
    ordered_json row{{"n", n},
                     {"case", t.label},
                     {"delta", t.delta},
                     {"delta_truncated", format_number(truncate_decimals(t.delta, 4))},
                     {"binding_branch", binding}};
    row["lit_even"] = literature_even(n).empty() ? ordered_json(nullptr) : ordered_json(kLitEven);
    row["lit_78"] = literature_78(n).empty() ? ordered_json(nullptr) : ordered_json(kLit78);
    row["conjecture"] = kConjecture;
    rows.push_back(row);
  }
  finish(o, m, rows, csv.str(), out);
  return kOk;
}

int cmd_figure(const Options& o, std::ostream& out) {
  constexpr int kFirst = 3;
  constexpr int kLast = 140;
  const std::string stem = o.out.empty() ? "figure" : o.out;
  struct Series {
    std::string name;
    std::string color;
    std::vector<std::pair<int, double>> points;
  };
  std::vector<Series> series{{"literature", "#2ca02c", {}}, {"new_bound", "#ff7f0e", {}}, {"conjecture", "#1f77b4", {}}};
  for (int n = kFirst; n <= kLast; ++n) {
    series[0].points.emplace_back(n, literature_bound(n));
    series[1].points.emplace_back(n, delta_master(n).delta);
    series[2].points.emplace_back(n, kConjecture);
  }
  Csv csv({"series", "n", "value"});
  for (const auto& s : series) {
    for (const auto& [n, v] : s.points) csv.row({s.name, std::to_string(n), format_number(v)});
  }

  constexpr double kWidth = 800, kHeight = 400, kMargin = 50;
  auto px = [&](int n) { return kMargin + (n - kFirst) * (kWidth - 2 * kMargin) / (kLast - kFirst); };
  auto py = [&](double v) { return kHeight - kMargin - v * (kHeight - 2 * kMargin); };
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<title>Pinching threshold against dimension</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\"" << kMargin << "\" y2=\"" << py(1)
      << "\" stroke=\"black\"/>\n";
  for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg << "<text x=\"" << kMargin - 8 << "\" y=\"" << py(v) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << v
        << "</text>\n";
  }
  for (int n : {kFirst, 50, 100, 134}) {
    svg << "<text x=\"" << px(n) << "\" y=\"" << py(0) + 16 << "\" font-size=\"11\" text-anchor=\"middle\">" << n
        << "</text>\n";
  }
  for (const auto& s : series) {
    svg << "<polyline id=\"" << s.name << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i) svg << ' ';
      svg << format_number(px(s.points[i].first)) << ',' << format_number(py(s.points[i].second));
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";

  Manifest m("figure", {{"out", stem}, {"n_first", kFirst}, {"n_last", kLast}}, o.seed);
  m.write(stem + ".csv", csv.str());
  m.write(stem + ".svg", svg.str());
  ordered_json results;
  for (const auto& s : series) results["series"].push_back({{"name", s.name}, {"points", s.points.size()}});
  out << envelope(m, results);
  return kOk;
}

namespace {

struct Check {
  std::string name;
  bool passed = true;
  ordered_json detail = ordered_json::object();
};

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}
  Check& add(std::string name) { return checks_.emplace_back(Check{std::move(name)}); }
  bool passed() const {
    for (const auto& c : checks_) {
      if (!c.passed) return false;
    }
    return true;
  }
  const std::vector<Check>& checks() const { return checks_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<Check> checks_;
};

void identities_suite(Suite& s, std::uint64_t seed, ArithmeticMode mode) {
  const bool exact = mode == ArithmeticMode::Exact;
  {
    Check& c = s.add("laplacian_eigenvalue");
    long fields = 0;
    for (int n = 3; n <= 6; ++n) {
      for (int k = 0; k <= 4; ++k) {
        for (const auto& y : harmonic_basis(n, k)) {
          const HarmonicField<Rational> u(n, k, Bundle::scalar(), {y});
          c.passed &= exact ? vertical_laplacian_eigencheck(u) : vertical_laplacian_eigencheck(to_double(u));
          ++fields;
        }
      }
    }
    c.detail["fields"] = fields;
  }
  {
    Check& c = s.add("gradient_norm");
    long fields = 0;
    for (const Bundle& b : {Bundle::scalar(), Bundle::form(1), Bundle::form(2), Bundle::sym2()}) {
      for (int n = 3; n <= 6; ++n) {
        for (int k = 1; k <= 4; ++k) {
          const auto u = random_harmonic_field(n, k, b, seed + static_cast<std::uint64_t>(fields));
          c.passed &= exact ? gradient_norm_identity(u) : gradient_norm_identity(to_double(u));
          ++fields;
        }
      }
    }
    c.detail["fields"] = fields;
  }
  auto g_term_check = [&](const std::string& name, const Bundle& b, bool sym) {
    Check& c = s.add(name);
    long samples = 0;
    for (int n = 4; n <= 6; ++n) {
      for (int k = 2; k <= 4; ++k) {
        const auto u = normal_subspace_sample(n, k, b, seed + static_cast<std::uint64_t>(samples));
        bool ok = false;
        if (exact) {
          const auto r = sym ? g_term_sym2(u) : g_term_forms(u);
          ok = r.match;
          if (samples == 0) c.detail["example"] = {{"n", n}, {"k", k}, {"lhs", rational_json(r.lhs)}, {"rhs", rational_json(r.rhs)}};
        } else {
          const auto ud = to_double(u);
          ok = (sym ? g_term_sym2_unchecked(ud) : g_term_forms_unchecked(ud)).match;
        }
        c.passed &= ok;
        ++samples;
      }
    }
    c.detail["samples"] = samples;
  };
  g_term_check("g_term_forms_p1", Bundle::form(1), false);
  g_term_check("g_term_forms_p2", Bundle::form(2), false);
  g_term_check("g_term_sym2", Bundle::sym2(), true);
  {
    Check& c = s.add("g_term_negative_control");
    const auto f = random_harmonic_field(4, 3, Bundle::form(1), seed);
    const auto q = random_harmonic_field(4, 3, Bundle::sym2(), seed);
    const bool forms_match = exact ? g_term_forms_unchecked(f).match : g_term_forms_unchecked(to_double(f)).match;
    const bool sym_match = exact ? g_term_sym2_unchecked(q).match : g_term_sym2_unchecked(to_double(q)).match;
    c.passed = !forms_match && !sym_match;
    c.detail["forms_identity_held"] = forms_match;
    c.detail["sym2_identity_held"] = sym_match;
  }
  {
    Check& c = s.add("wedge_contraction");
    for (int n = 2; n <= 6; ++n) {
      for (int p = 1; p <= n; ++p) c.passed &= wedge_contract_identity_check(p, n);
    }
  }
  {
    Check& c = s.add("rank1_fixture");
    const Rational r4 = rank1_fixture(2).ratio;
    const Rational r6 = rank1_fixture(3).ratio;
    c.passed = r4 == Rational(1, 12) && r6 == Rational(1, 30);
    c.detail["ratio_n4"] = rational_json(r4);
    c.detail["ratio_n6"] = rational_json(r6);
  }
  {
    Check& c = s.add("projector_relation");
    for (const auto& [n, k] : {std::pair{4, 2}, std::pair{4, 4}, std::pair{6, 2}}) {
      const ProjectorCheck p = projector_relation_check(n, k, seed, 50);
      c.passed &= p.holds;
      c.detail["max_residual"] = std::max(c.detail.value("max_residual", 0.0), p.max_residual);
    }
  }
  {
    Check& c = s.add("cauchy_schwarz_chain");
    for (int i = 0; i < 5; ++i) {
      const auto u = random_harmonic_field(4, 3, Bundle::form(1), seed + static_cast<std::uint64_t>(i));
      c.passed &= cauchy_schwarz_chain(u, 20000, seed + static_cast<std::uint64_t>(i)).within;
    }
  }
}

void curvature_suite(Suite& s, std::uint64_t seed) {
  const CurvatureTensor ch = ch_model(2);
  {
    Check& c = s.add("tensor_symmetries");
    double worst = 0.0;
    for (const CurvatureTensor& r : {ch, ch_model(3), g_curvature_tensor(5), r0_split(ch)}) {
      worst = std::max(worst, r.symmetry_defect());
    }
    c.passed = worst <= 1e-12;
    c.detail["max_defect"] = worst;
  }
  {
    Check& c = s.add("ch_pinching");
    std::mt19937_64 rng(seed);
    double lo = 0.0, hi = -1.0;
    for (int i = 0; i < 10000; ++i) {
      const auto f = random_frame(4, 2, rng);
      const double k = ch.sectional(f[0], f[1]);
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    c.passed = lo >= -1.0 - 1e-12 && hi <= -0.25 + 1e-12;
    c.detail["min_sectional"] = lo;
    c.detail["max_sectional"] = hi;
  }
  {
    Check& c = s.add("ch_sharpness");
    const FrameSearchResult r = max_over_frames(r0_split(ch), 100000, seed);
    const double bound = 2.0 * (1.0 - 0.25) / 3.0;
    c.passed = r.max_refined >= 0.49 && r.max_refined <= bound + 1e-9 && r.max_random <= bound + 1e-9;
    c.detail["max_random"] = r.max_random;
    c.detail["max_refined"] = r.max_refined;
    c.detail["bound"] = bound;
  }
}

void monotonicity_suite(Suite& s) {
  {
    Check& c = s.add("growth_grid");
    const MonotonicityReport r = monotonicity_scan(GridRange{});
    c.passed = r.ok();
    c.detail["checks"] = r.checks;
    c.detail["violations"] = r.violations.size();
  }
  {
    Check& c = s.add("threshold_sequences");
    for (int l = 2; l < 200; ++l) c.passed &= delta_lambda1(4 * l + 2) < delta_lambda1(4 * l + 6);
    for (int l = 3; l < 200; ++l) c.passed &= delta_sym2(4 * l) > delta_sym2(4 * l + 4);
  }
}

}  // namespace

int cmd_verify(const Options& o, std::ostream& out) {
  const std::vector<std::string> known{"identities", "curvature", "monotonicity", "all"};
  if (std::find(known.begin(), known.end(), o.suite) == known.end()) {
    throw DomainError("unknown suite '" + o.suite + "'");
  }
  const ArithmeticMode mode = arithmetic_mode(ArithmeticMode::Exact);
  const auto t0 = Clock::now();
  std::vector<Suite> suites;
  if (o.suite == "identities" || o.suite == "all") identities_suite(suites.emplace_back("identities"), o.seed, mode);
  if (o.suite == "curvature" || o.suite == "all") curvature_suite(suites.emplace_back("curvature"), o.seed);
  if (o.suite == "monotonicity" || o.suite == "all") monotonicity_suite(suites.emplace_back("monotonicity"));

  bool all = true;
  ordered_json results;
  results["mode"] = to_string(mode);
  for (const auto& s : suites) {
    ordered_json js{{"suite", s.name()}, {"passed", s.passed()}};
    for (const auto& c : s.checks()) js["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    results["suites"].push_back(js);
    all &= s.passed();
  }
  results["passed"] = all;
  Manifest m("verify", {{"suite", o.suite}, {"mode", to_string(mode)}}, o.seed);
  if (o.record_time) m.set_wall_clock(seconds_since(t0));
  if (o.format == "json" || !o.out.empty()) {
    const std::string doc = envelope(m, results);
    if (o.out.empty()) {
      out << doc;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!(f << doc)) throw std::runtime_error("cannot write " + o.out);
    }
  }
  if (o.format != "json") {
    for (const auto& s : suites) {
      for (const auto& c : s.checks()) out << (c.passed ? "PASS " : "FAIL ") << s.name() << '/' << c.name << ' ' << c.detail.dump() << '\n';
    }
    out << (all ? "all checks passed" : "verification FAILED") << '\n';
  }
  return all ? kOk : kVerificationFailed;
}

int cmd_sharpness(const Options& o, std::ostream& out) {
  require_format(o);
  SearchConfig c;
  c.n = o.n;
  c.restarts = o.restarts;
  c.iterations = o.iters;
  c.mc_samples = o.mc_samples;
  c.seed = o.seed;
  c.constrained = o.constrained;
  if (o.weights == "one") {
    c.weights = Weights::One;
  } else if (o.weights == "half") {
    c.weights = Weights::Half;
  } else {
    throw DomainError("--weights must be one or half");
  }
  c.validate();
  const auto t0 = Clock::now();
  const SearchResult r = sharpness_search(c);
  ordered_json config{{"n", c.n},           {"k", c.k},           {"restarts", c.restarts},
                      {"iterations", c.iterations}, {"mc_samples", c.mc_samples}, {"weights", to_string(c.weights)},
                      {"constrained", c.constrained}, {"epsilon", c.epsilon}};
  Manifest m("sharpness", config, c.seed);
  if (o.record_time) m.set_wall_clock(seconds_since(t0));
  Csv trace({"restart", "value", "best_so_far"});
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    trace.row({std::to_string(i), format_number(r.restart_values[i]), format_number(r.trace[i])});
  }
  if (!o.trace.empty()) m.write(o.trace, trace.str());
  ordered_json results{{"c_estimate", r.c_estimate},
                       {"stderr", r.stderr_},
                       {"train_value", r.train_value},
                       {"quotient", r.quotient},
                       {"cauchy_schwarz_bound", cauchy_schwarz_constant(c.n, c.k)},
                       {"delta_new", std::isnan(r.delta_new) ? ordered_json(nullptr) : ordered_json(r.delta_new)},
                       {"best_restart", r.best_restart},
                       {"seed", r.seed},
                       {"restart_values", r.restart_values},
                       {"trace", r.trace},
                       {"best_coefficients", r.best_coefficients}};
  const std::string doc = envelope(m, results);
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << doc)) throw std::runtime_error("cannot write " + o.out);
  }
  if (o.format == "json" && o.out.empty()) {
    out << doc;
  } else {
    out << "c_estimate " << format_number(r.c_estimate) << " +- " << format_number(r.stderr_) << '\n'
        << "quotient " << format_number(r.quotient) << '\n'
        << "delta_new " << (std::isnan(r.delta_new) ? std::string("n/a") : format_number(r.delta_new)) << '\n';
  }
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  require_format(o);
  const auto cases = structure_menu(o.n);
  ordered_json results{{"n", o.n}, {"radon_hurwitz", radon_hurwitz(o.n)}};
  results["cases"] = ordered_json::array();
  for (const auto& c : cases) {
    results["cases"].push_back({{"case", c.name()}, {"threshold", c.threshold}, {"binding_branch", to_string(c.binding)}});
  }
  if (o.format == "json") {
    Manifest m("classify", {{"n", o.n}}, o.seed);
    out << envelope(m, results);
    return kOk;
  }
  out << "n = " << o.n << ", rho(n) = " << radon_hurwitz(o.n) << '\n';
  for (const auto& c : cases) {
    out << "  " << c.name();
    if (c.kind != StructureKind::NoneOddDim) out << "  excluded for delta > " << format_number(c.threshold) << " (" << to_string(c.binding) << ')';
    out << '\n';
  }
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  require_format(o);
  const Verdict v = verdict(o.n, o.delta);
  const std::string word = v.ergodic ? "Ergodic" : "Inconclusive";
  ordered_json results{{"n", o.n}, {"delta", o.delta}, {"verdict", word}};
  results["cases"] = ordered_json::array();
  for (const auto& c : v.cases) {
    results["cases"].push_back({{"case", c.name()},
                                {"threshold", c.threshold},
                                {"excluded", c.kind == StructureKind::NoneOddDim || o.delta > c.threshold}});
  }
  results["note"] = v.note ? ordered_json(*v.note) : ordered_json(nullptr);
  if (o.format == "json") {
    Manifest m("eval", {{"n", o.n}, {"delta", o.delta}}, o.seed);
    out << envelope(m, results);
    return kOk;
  }
  out << word << '\n';
  for (const auto& c : v.cases) {
    if (c.kind == StructureKind::NoneOddDim) {
      out << "  " << c.name() << ": unconditional\n";
    } else {
      out << "  " << c.name() << ": threshold " << format_number(c.threshold)
          << (o.delta > c.threshold ? " (excluded)" : " (not excluded)") << '\n';
    }
  }
  if (v.note) out << "  note: " << *v.note << '\n';
  return kOk;
}

}  // namespace pinchlab::cli
