#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pinchlab {

enum class ArithmeticMode { Exact, Double };

std::string to_string(ArithmeticMode m);

/// "exact" or "double"; nullopt otherwise.
std::optional<ArithmeticMode> parse_mode(std::string_view text);

/// PINCHLAB_MODE if set, else the fallback. Throws DomainError on an unknown value.
ArithmeticMode arithmetic_mode(ArithmeticMode fallback = ArithmeticMode::Exact);

}  // namespace pinchlab
