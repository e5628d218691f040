#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace repzoo {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" with den > 0, always including the denominator.
std::string to_fraction_string(const Rational& x);

// Accepts "a" or "a/b". Throws ConfigError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

// Readable form: "3", "-1/2".
std::string to_display_string(const Rational& x);

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

Integer ipow(const Integer& base, unsigned exponent);

}  // namespace repzoo
