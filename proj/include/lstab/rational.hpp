#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lstab {

using Int = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;

// Always "p/q" in lowest terms with q > 0, including integers ("3/1").
std::string format_rational(const Rational& value);

// Accepts "p/q" or a bare integer "p"; throws Error(Parse) otherwise.
Rational parse_rational(std::string_view text);

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

} // namespace lstab
