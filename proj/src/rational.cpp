#include "mob/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mob {

std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

std::optional<Integer> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  Integer v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Integer(-v) : v;
}

std::optional<Rational> parse_decimal(std::string_view s) {
  std::size_t epos = s.find_first_of("eE");
  std::string_view mant = s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string_view::npos) {
    auto e = parse_integer(s.substr(epos + 1));
    if (!e || abs(*e) > 4000) return std::nullopt;
    exp10 = static_cast<long>(*e);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '+' || mant[0] == '-')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::size_t dot = mant.find('.');
  std::string digits;
  if (dot == std::string_view::npos) {
    digits = std::string(mant);
  } else {
    digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty()) return std::nullopt;
  auto n = parse_integer(digits);
  if (!n || *n < 0) return std::nullopt;
  Rational v(*n);
  Rational ten(10);
  if (exp10 > 0) v *= pow(ten, exp10);
  if (exp10 < 0) v /= pow(ten, -exp10);
  return neg ? Rational(-v) : v;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto p = parse_integer(text.substr(0, slash));
    auto q = parse_integer(text.substr(slash + 1));
    if (!p || !q || *q == 0) return std::nullopt;
    return Rational(*p, *q);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  auto p = parse_integer(text);
  if (!p) return std::nullopt;
  return Rational(*p);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

Integer floor(const Rational& r) {
  Integer q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}

std::int64_t to_int64(const Integer& i) {
  if (i > std::numeric_limits<std::int64_t>::max() || i < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return i.convert_to<std::int64_t>();
}

namespace {

std::optional<Integer> exact_int_root(const Integer& v, unsigned k) {
  if (v < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_int_root(Integer(-v), k);
    if (!r) return std::nullopt;
    return Integer(-*r);
  }
  if (v < 2) return v;
  Integer r(static_cast<long long>(std::llround(std::pow(v.convert_to<double>(), 1.0 / k))));
  for (Integer c = r > 2 ? Integer(r - 2) : Integer(0); c <= r + 2; ++c) {
    if (boost::multiprecision::pow(c, k) == v) return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& r, unsigned k) {
  if (k == 0) return std::nullopt;
  if (k == 1) return r;
  auto p = exact_int_root(numerator(r), k);
  auto q = exact_int_root(denominator(r), k);
  if (!p || !q) return std::nullopt;
  return Rational(*p, *q);
}

Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result(1);
  Rational b = base;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

}  // namespace mob
