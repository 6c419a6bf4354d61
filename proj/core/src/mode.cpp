#include "pinchlab/mode.hpp"

#include <cstdlib>

#include "pinchlab/errors.hpp"

namespace pinchlab {

std::string to_string(ArithmeticMode m) { return m == ArithmeticMode::Exact ? "exact" : "double"; }

std::optional<ArithmeticMode> parse_mode(std::string_view text) {
  if (text == "exact") return ArithmeticMode::Exact;
  if (text == "double") return ArithmeticMode::Double;
  return std::nullopt;
}

ArithmeticMode arithmetic_mode(ArithmeticMode fallback) {
  const char* env = std::getenv("PINCHLAB_MODE");
  if (env == nullptr || *env == '\0') return fallback;
  const auto m = parse_mode(env);
  if (!m) throw DomainError(std::string("PINCHLAB_MODE must be exact or double, got '") + env + "'");
  return *m;
}

}  // namespace pinchlab
