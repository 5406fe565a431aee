#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace aiet {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws InputError on anything else or q == 0.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise (lowest terms, sign on the numerator).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Least common multiple of all denominators.
BigInt common_denominator(const RationalVector& values);

}  // namespace aiet
