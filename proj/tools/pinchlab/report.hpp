#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pinchlab/rational.hpp"

namespace pinchlab::cli {

using nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes);

/// 12 significant digits, '.' separator, no grouping.
std::string format_number(double x);

/// {"num": "...", "den": "..."}
ordered_json rational_json(const Rational& q);

struct Artifact {
  std::string path;
  std::string sha256;
};

class Manifest {
 public:
  Manifest(std::string command, ordered_json config, std::uint64_t seed);

  /// Writes bytes to path and records its hash. Throws std::runtime_error on I/O failure.
  void write(const std::filesystem::path& path, const std::string& bytes);
  /// Wall-clock is only recorded on request so that reports stay byte-identical.
  void set_wall_clock(double seconds) { wall_clock_ = seconds; }

  ordered_json to_json() const;

 private:
  std::string command_;
  ordered_json config_;
  std::uint64_t seed_;
  std::vector<Artifact> outputs_;
  double wall_clock_ = -1.0;
};

/// {"manifest": ..., "results": ...} with two-space indentation and a trailing newline.
std::string envelope(const Manifest& manifest, const ordered_json& results);

/// Simple CSV builder with a header row.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  std::string str() const { return out_; }

 private:
  std::size_t width_;
  std::string out_;
};

}  // namespace pinchlab::cli
