#include "pinchlab/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pinchlab::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ordered_json rational_json(const Rational& q) {
  return ordered_json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Manifest::Manifest(std::string command, ordered_json config, std::uint64_t seed)
    : command_(std::move(command)), config_(std::move(config)), seed_(seed) {}

void Manifest::write(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << bytes;
  if (!f) throw std::runtime_error("write failed: " + path.string());
  outputs_.push_back({path.string(), sha256_hex(bytes)});
}

ordered_json Manifest::to_json() const {
  ordered_json m;
  m["command"] = command_;
  m["config"] = config_;
  m["seed"] = seed_;
  m["tool_version"] = PINCHLAB_VERSION;
  m["wall_clock_seconds"] = wall_clock_ < 0 ? ordered_json(nullptr) : ordered_json(wall_clock_);
  ordered_json outs = ordered_json::array();
  for (const auto& a : outputs_) outs.push_back({{"path", a.path}, {"sha256", a.sha256}});
  m["outputs"] = outs;
  return m;
}

std::string envelope(const Manifest& manifest, const ordered_json& results) {
  ordered_json doc;
  doc["manifest"] = manifest.to_json();
  doc["results"] = results;
  return doc.dump(2) + "\n";
}

Csv::Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }

void Csv::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
    if (quote) {
      out_ += '"';
      for (char c : cells[i]) {
        if (c == '"') out_ += '"';
        out_ += c;
      }
      out_ += '"';
    } else {
      out_ += cells[i];
    }
  }
  out_ += '\n';
}

}  // namespace pinchlab::cli
