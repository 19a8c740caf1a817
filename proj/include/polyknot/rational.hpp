#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polyknot {

using Rational = mpq_class;

// Parses "a/b" or an integer, with optional sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

inline int sign_of(const Rational& q) { return sgn(q); }

}  // namespace polyknot
