#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace glab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// Numerator type for exact transition matrices over a common denominator.
using Exact = boost::multiprecision::int128_t;

inline std::string to_string(const BigInt& x) { return x.str(); }
std::string to_string(const Rational& x);
std::string to_string(const Exact& x);

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// 2^-e as an exact rational.
Rational inverse_power_of_two(unsigned e);

}  // namespace glab
