#pragma once

// Rigorous enclosure of d = arccosh(sqrt(c)) for an exact c >= 1 in K.
//
// No floating point is involved.  exp(t) is bracketed by a truncated Taylor
// series with an explicit remainder bound, after halving the argument into
// [0, 1/2] and squaring back, with every intermediate rounded outward to a
// dyadic grid.  Bisection over dyadic candidates t then compares the bracket
// of cosh(t)^2 against c with exact sign tests, raising the precision until
// the comparison is decided.

#include "hypcert/quadratic_field.hpp"

#include <json.hpp>

#include <stdexcept>
#include <utility>

namespace hypcert {

struct DistanceInterval {
  Rational lo = 0;
  Rational hi = 0;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }

  friend bool operator==(const DistanceInterval&, const DistanceInterval&) = default;
};

/// [2 lo, 2 hi]: the length bound of the closed geodesic crossing both cut
/// hyperplanes twice.
inline DistanceInterval doubled(const DistanceInterval& d) { return {2 * d.lo, 2 * d.hi}; }

inline Rational default_interval_width() { return Rational(1, pow_int(10, 12)); }

namespace detail {

inline Rational round_down(const Rational& x, unsigned bits) {
  return Rational(floor_div(numerator_of(x) << bits, denominator_of(x)), BigInt(1) << bits);
}

inline Rational round_up(const Rational& x, unsigned bits) {
  return Rational(ceil_div(numerator_of(x) << bits, denominator_of(x)), BigInt(1) << bits);
}

struct Bracket {
  Rational lo;
  Rational hi;
};

/// exp(t) for rational t >= 0, both ends rounded outward to 2^-bits.
inline Bracket exp_bracket(const Rational& t, unsigned bits) {
  if (t < 0) throw std::domain_error("exp_bracket: negative argument");
  unsigned halvings = 0;
  Rational u = t;
  while (u > Rational(1, 2)) {
    u /= 2;
    ++halvings;
  }
  const unsigned work = bits + halvings + 8;
  const Rational tol(1, BigInt(1) << (work + 1));

  // sum_{j<=N} u^j / j!, stopping once the next term is below tol; the tail is
  // then at most twice that term because u / (j+1) <= 1/2.
  Rational sum = 1;
  Rational term = 1;
  unsigned j = 0;
  while (true) {
    ++j;
    term = term * u / j;
    if (term <= tol) break;
    sum += term;
  }
  Rational lo = round_down(sum, work);
  Rational hi = round_up(sum + 2 * term, work);
  for (unsigned i = 0; i < halvings; ++i) {
    lo = round_down(lo * lo, work);
    hi = round_up(hi * hi, work);
  }
  return {std::move(lo), std::move(hi)};
}

/// cosh(t)^2 for rational t >= 0.
inline Bracket cosh_sq_bracket(const Rational& t, unsigned bits) {
  Bracket e = exp_bracket(t, bits);
  if (e.lo < 1) e.lo = 1;  // exp(t) >= 1 for t >= 0
  // E + 1/E is increasing on [1, inf)
  Rational clo = round_down((e.lo + 1 / e.lo) / 2, bits + 4);
  Rational chi = round_up((e.hi + 1 / e.hi) / 2, bits + 4);
  return {clo * clo, chi * chi};
}

}  // namespace detail

/// Sign of cosh(t)^2 - c, decided exactly.
///
/// For rational t != 0 cosh(t) is transcendental while c is algebraic, so the
/// loop terminates; the precision cap only guards against misuse.
inline int compare_cosh_sq(const Rational& t, const QuadElem& c) {
  if (t < 0) throw std::domain_error("compare_cosh_sq: negative argument");
  if (t == 0) return sign(c.one() - c);
  for (unsigned bits = 64; bits <= (1U << 16); bits *= 2) {
    const auto b = detail::cosh_sq_bracket(t, bits);
    if (sign(c.lift(b.hi) - c) < 0) return -1;
    if (sign(c.lift(b.lo) - c) > 0) return 1;
  }
  throw std::runtime_error("compare_cosh_sq: precision cap reached");
}

/// Encloses arccosh(sqrt(cosh_sq)) in [lo, hi] with hi - lo <= width.
/// The endpoints are dyadic and the output is a deterministic function of the
/// inputs.
inline DistanceInterval distance_interval(const QuadElem& cosh_sq, const Rational& width = default_interval_width()) {
  if (width <= 0) throw std::invalid_argument("distance_interval: width must be positive");
  const int s1 = sign(cosh_sq - cosh_sq.one());
  if (s1 < 0) throw std::domain_error("distance_interval: cosh^2 < 1 (" + to_string(cosh_sq) + ")");
  if (s1 == 0) return {0, 0};

  Rational lo = 0;
  Rational hi = 1;
  while (compare_cosh_sq(hi, cosh_sq) < 0) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    const int c = compare_cosh_sq(mid, cosh_sq);
    if (c == 0) return {mid, mid};
    if (c < 0) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return {std::move(lo), std::move(hi)};
}

/// lo <= arccosh(sqrt c) <= hi, checked by back-substitution into cosh^2.
inline bool encloses(const DistanceInterval& d, const QuadElem& cosh_sq) {
  if (d.lo < 0 || d.hi < d.lo) return false;
  return compare_cosh_sq(d.lo, cosh_sq) <= 0 && compare_cosh_sq(d.hi, cosh_sq) >= 0;
}

inline void to_json(nlohmann::json& j, const DistanceInterval& d) {
  j = nlohmann::json{{"lo", to_fraction_string(d.lo)}, {"hi", to_fraction_string(d.hi)}};
}

inline void from_json(const nlohmann::json& j, DistanceInterval& d) {
  d.lo = parse_rational(j.at("lo").get<std::string>());
  d.hi = parse_rational(j.at("hi").get<std::string>());
}

}  // namespace hypcert
