#pragma once

#include <gmpxx.h>

#include <string>

namespace pinchlab {

/// Exact rational scalar. Canonical form is maintained by GMP after every
/// arithmetic operation.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// "p/q" or "p" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Returns true iff the value is exactly zero (rational) or bitwise zero (double).
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

}  // namespace pinchlab
