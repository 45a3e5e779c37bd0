#ifndef SUPERLIN_RATIONAL_HPP
#define SUPERLIN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace superlin {

// Exact arbitrary-precision rational scalar. Always stored normalized
// (lowest terms, positive denominator); that is guaranteed by the backend.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Renders "p" when the denominator is 1, otherwise "p/q".
std::string rational_to_string(const Rational& r);

// Accepts an optional sign, an integer, and an optional "/<positive int>".
// Rejects anything else (decimals, empty strings, zero denominators).
Rational rational_from_string(std::string_view text);

double to_double(const Rational& r);

} // namespace superlin

#endif
