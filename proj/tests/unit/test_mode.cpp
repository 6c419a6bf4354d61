#include <gtest/gtest.h>

#include <cstdlib>

#include "pinchlab/errors.hpp"
#include "pinchlab/mode.hpp"

using namespace pinchlab;

TEST(Mode, Parse) {
  EXPECT_EQ(parse_mode("exact"), ArithmeticMode::Exact);
  EXPECT_EQ(parse_mode("double"), ArithmeticMode::Double);
  EXPECT_FALSE(parse_mode("float").has_value());
  EXPECT_EQ(to_string(ArithmeticMode::Double), "double");
}

TEST(Mode, Environment) {
  ::unsetenv("PINCHLAB_MODE");
  EXPECT_EQ(arithmetic_mode(), ArithmeticMode::Exact);
  EXPECT_EQ(arithmetic_mode(ArithmeticMode::Double), ArithmeticMode::Double);
  ::setenv("PINCHLAB_MODE", "double", 1);
  EXPECT_EQ(arithmetic_mode(), ArithmeticMode::Double);
  ::setenv("PINCHLAB_MODE", "quad", 1);
  EXPECT_THROW(arithmetic_mode(), DomainError);
  ::unsetenv("PINCHLAB_MODE");
}
