#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace swapdist {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial_big(unsigned n);

// "num/den" in lowest terms, or just "num" when the denominator is 1.
std::string rational_str(const Rational& q);

double rational_double(const Rational& q);

}  // namespace swapdist
