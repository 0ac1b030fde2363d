#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace wcoj {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or an integer "p".  Throws InvalidInput.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when q = 1.
std::string format_rational(const Rational &r);

double to_double(const Rational &r);

}
