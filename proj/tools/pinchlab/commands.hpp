#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace pinchlab::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct Options {
  int n = 4;
  int n_min = 3;
  int n_max = 20;
  double delta = 0.3;
  std::uint64_t seed = 1;
  int restarts = 20;
  int iters = 150;
  std::int64_t mc_samples = 200000;
  std::string weights = "one";
  bool constrained = false;
  std::string format = "csv";
  std::string out;
  std::string suite = "all";
  std::string trace;
  bool record_time = false;
};

int cmd_thresholds(const Options& o, std::ostream& out);
int cmd_figure(const Options& o, std::ostream& out);
int cmd_verify(const Options& o, std::ostream& out);
int cmd_sharpness(const Options& o, std::ostream& out);
int cmd_classify(const Options& o, std::ostream& out);
int cmd_eval(const Options& o, std::ostream& out);

}  // namespace pinchlab::cli
