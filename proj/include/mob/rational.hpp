#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mob {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Formats as "p" or "p/q".
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/q" and finite decimals such as "0.125" or "-3.5e-2".
std::optional<Rational> parse_rational(std::string_view text);

double to_double(const Rational& r);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// Integer part toward -infinity.
Integer floor(const Rational& r);

// Fits-in-int64 conversion; throws std::overflow_error otherwise.
std::int64_t to_int64(const Integer& i);

// Exact root: returns r^(1/k) when it is rational.
std::optional<Rational> exact_root(const Rational& r, unsigned k);

Rational pow(const Rational& base, std::int64_t exponent);

}  // namespace mob
