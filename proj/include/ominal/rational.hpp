#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace ominal {

// Exact arithmetic only. cpp_rational keeps values in lowest terms with a
// positive denominator, which is exactly the normal form we rely on when
// hashing and comparing.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Point = std::vector<Rational>;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline int sign_of(const Rational& value) {
    if (value > 0) return 1;
    if (value < 0) return -1;
    return 0;
}

inline Rational rational_abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

inline const Rational& rational_min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string to_string(const Rational& value);
std::string to_string(const Point& point);

// Parses "p/q" or "p" with optional sign; throws std::invalid_argument on
// malformed input or zero denominator.
Rational parse_rational(const std::string& text);

} // namespace ominal
