#include <CLI11.hpp>

#include <iostream>

#include "pinchlab/commands.hpp"
#include "pinchlab/errors.hpp"

using namespace pinchlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"pinchlab: pinching thresholds, fiber identities and sharpness experiments"};
  app.require_subcommand(1);
  Options o;

  auto fmt = [&](CLI::App* c) {
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--out", o.out, "output path");
    c->add_option("--seed", o.seed, "random seed");
  };

  auto* thresholds = app.add_subcommand("thresholds", "threshold table delta(n)");
  thresholds->add_option("--n-min", o.n_min)->default_val(4);
  thresholds->add_option("--n-max", o.n_max)->default_val(20);
  fmt(thresholds);

  auto* figure = app.add_subcommand("figure", "threshold-vs-dimension CSV and SVG (--out is a file stem)");
  figure->add_option("--out", o.out, "file stem (default: figure)");
  figure->add_option("--seed", o.seed);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", o.suite, "identities|curvature|monotonicity|all")->default_val("all");
  verify->add_flag("--record-time", o.record_time, "record wall-clock in the manifest");
  fmt(verify);
  verify->get_option("--format")->default_val("csv");

  auto* sharp = app.add_subcommand("sharpness", "search for the optimal constant of F(u)");
  sharp->add_option("--n", o.n)->default_val(4);
  sharp->add_option("--restarts", o.restarts)->default_val(20);
  sharp->add_option("--iters", o.iters)->default_val(150);
  sharp->add_option("--mc-samples", o.mc_samples)->default_val(200000);
  sharp->add_option("--weights", o.weights, "one or half")->default_val("one");
  sharp->add_flag("--constrained", o.constrained, "restrict to the iota_v degree-drop subspace");
  sharp->add_option("--trace", o.trace, "write the per-restart trace as CSV");
  sharp->add_flag("--record-time", o.record_time, "record wall-clock in the manifest");
  fmt(sharp);

  auto* classify = app.add_subcommand("classify", "possible invariant structures in dimension n");
  classify->add_option("--n", o.n)->required();
  fmt(classify);

  auto* eval = app.add_subcommand("eval", "ergodicity verdict for (n, delta)");
  eval->add_option("--n", o.n)->required();
  eval->add_option("--delta", o.delta)->required();
  fmt(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*thresholds) return cmd_thresholds(o, std::cout);
    if (*figure) return cmd_figure(o, std::cout);
    if (*verify) return cmd_verify(o, std::cout);
    if (*sharp) return cmd_sharpness(o, std::cout);
    if (*classify) return cmd_classify(o, std::cout);
    if (*eval) return cmd_eval(o, std::cout);
  } catch (const pinchlab::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}
