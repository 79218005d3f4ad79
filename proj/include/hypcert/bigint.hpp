#pragma once

// Arbitrary-precision integer and rational scalars plus the handful of exact
// integer primitives (floor division, integer square root, decimal rendering)
// that everything else in hypcert is built on.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

inline int sign_of(const BigInt& x) { return x.sign(); }
inline int sign_of(const Rational& x) { return x.sign(); }

inline bool is_integer(const Rational& x) { return denominator_of(x) == 1; }

/// Floor of a / b for b != 0 (cpp_int division truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

inline BigInt floor_of(const Rational& x) { return floor_div(numerator_of(x), denominator_of(x)); }
inline BigInt ceil_of(const Rational& x) { return ceil_div(numerator_of(x), denominator_of(x)); }

/// Largest m with m*m <= n. Newton iteration from an overestimate; the
/// iterates decrease monotonically until they reach the floor root.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  if (n < 2) return n;
  const auto bits = boost::multiprecision::msb(n) + 1;
  BigInt x = BigInt(1) << ((bits + 1) / 2);  // x*x >= n
  while (true) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

inline bool is_perfect_square(const BigInt& n, BigInt* root = nullptr) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = std::move(r);
  return true;
}

inline BigInt pow_int(BigInt base, unsigned exp) {
  BigInt acc = 1;
  while (exp) {
    if (exp & 1U) acc *= base;
    exp >>= 1U;
    if (exp) base *= base;
  }
  return acc;
}

inline BigInt parse_bigint(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (body.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : body) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer literal: " + std::string(s));
  }
  // cpp_int reads a leading 0 as an octal prefix
  while (body.size() > 1 && body.front() == '0') body.remove_prefix(1);
  const BigInt v{std::string(body)};
  return (!s.empty() && s.front() == '-') ? BigInt(-v) : v;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

/// Accepts "p/q" or a bare integer "p"; the result is canonical.
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(s));
  BigInt num = parse_bigint(s.substr(0, slash));
  BigInt den = parse_bigint(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  if (den < 0) return Rational(BigInt(-num), BigInt(-den));  // cpp_rational wants den > 0
  return Rational(num, den);
}

/// Canonical "num/den" print, always with the denominator.
inline std::string to_fraction_string(const Rational& x) {
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

/// Short print: "num" for integers, "num/den" otherwise.
inline std::string to_short_string(const Rational& x) {
  return is_integer(x) ? numerator_of(x).str() : to_fraction_string(x);
}

/// Renders floor(x * 10^digits) / 10^digits as a decimal string (truncation
/// toward -infinity, so the rendering never exceeds x).
inline std::string floor_decimal(const BigInt& scaled_floor, unsigned digits) {
  const bool neg = scaled_floor < 0;
  BigInt mag = neg ? BigInt(-scaled_floor) : scaled_floor;
  std::string s = mag.str();
  if (digits == 0) return (neg ? "-" : "") + s;
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

inline std::string to_decimal(const Rational& x, unsigned digits = 12) {
  return floor_decimal(floor_of(x * Rational(pow_int(10, digits))), digits);
}

}  // namespace hypcert
