#ifndef THERMAL_RATIONAL_HPP
#define THERMAL_RATIONAL_HPP

#include <boost/rational.hpp>

#include <string>

namespace thermal {

// All temperatures, rates and budgets are exact rationals; the steady-state
// and threshold comparisons in this library must never see rounding.
using Rational = boost::rational<long long>;

// Largest integer <= r.
long long floor_to_int(const Rational& r);

// Smallest integer >= r.
long long ceil_to_int(const Rational& r);

// Accepts "p/q" or a plain integer, optionally signed.
Rational parse_rational(const std::string& text);

// Renders "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& r);

}  // namespace thermal

#endif
