#pragma once

// Exact arithmetic in Q and in real quadratic fields Q(sqrt d).
//
// An element a + b*sqrt(d) is stored over the basis (1, sqrt d) with rational
// coordinates, kept in lowest terms after every operation so that equality
// is structural.  Integrality (Z, Z[sqrt d], O_K) is a predicate on those
// coordinates, not a separate representation.
//
// Every comparison in this header is decided with rational arithmetic only.

#include "hypcert/bigint.hpp"

#include <json.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcert {

/// Q (d == 1) or Q(sqrt d) for a squarefree d >= 2.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rational() { return Field(); }

  static Field quadratic(std::int64_t d) {
    if (d < 2) throw std::invalid_argument("field discriminant must be >= 2, got " + std::to_string(d));
    for (std::int64_t p = 2; p * p <= d; ++p) {
      if (d % (p * p) == 0) throw std::invalid_argument("field d must be squarefree, got " + std::to_string(d));
    }
    Field f;
    f.d_ = d;
    return f;
  }

  constexpr bool is_rational() const { return d_ == 1; }
  constexpr std::int64_t d() const { return d_; }

  /// d == 1 mod 4, where O_K = Z[(1 + sqrt d)/2].
  constexpr bool half_integral_ring() const { return !is_rational() && d_ % 4 == 1; }

  std::string label() const { return is_rational() ? "Q" : "Q(sqrt" + std::to_string(d_) + ")"; }

  friend constexpr bool operator==(Field, Field) = default;
  friend constexpr auto operator<=>(Field, Field) = default;

 private:
  std::int64_t d_ = 1;
};

enum class Embedding { identity, conjugate };

enum class IntegralityClass { none = 0, Z = 1, Z_sqrt_d = 2, O_K = 3 };

inline std::string_view to_string(IntegralityClass c) {
  switch (c) {
    case IntegralityClass::Z: return "Z";
    case IntegralityClass::Z_sqrt_d: return "Z_sqrt_d";
    case IntegralityClass::O_K: return "O_K";
    case IntegralityClass::none: break;
  }
  return "none";
}

inline constexpr unsigned kMaxExponent = 10000;

class QuadElem {
 public:
  QuadElem() = default;
  explicit QuadElem(Field f, Rational a = 0, Rational b = 0) : field_(f), a_(std::move(a)), b_(std::move(b)) {
    if (field_.is_rational() && b_ != 0) throw std::invalid_argument("rational field element with nonzero sqrt part");
  }

  static QuadElem rational(Rational a) { return QuadElem(Field::rational(), std::move(a)); }

  Field field() const { return field_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational_value() const { return b_ == 0; }

  QuadElem conjugate() const { return QuadElem(field_, a_, -b_); }

  /// x * conjugate(x) = a^2 - d b^2.
  Rational norm() const { return a_ * a_ - Rational(field_.d()) * b_ * b_; }

  Rational trace() const { return 2 * a_; }

  QuadElem operator-() const { return QuadElem(field_, -a_, -b_); }

  QuadElem& operator+=(const QuadElem& y) {
    check_field(y);
    a_ += y.a_;
    b_ += y.b_;
    return *this;
  }
  QuadElem& operator-=(const QuadElem& y) {
    check_field(y);
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
  }
  QuadElem& operator*=(const QuadElem& y) {
    check_field(y);
    Rational a = a_ * y.a_ + Rational(field_.d()) * b_ * y.b_;
    Rational b = a_ * y.b_ + b_ * y.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadElem& operator/=(const QuadElem& y) {
    check_field(y);
    if (y.is_zero()) throw std::domain_error("QuadElem division by zero");
    Rational n = y.norm();
    *this *= y.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }
  QuadElem& operator*=(const Rational& s) {
    a_ *= s;
    b_ *= s;
    return *this;
  }

  friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
  friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
  friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
  friend QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }
  friend QuadElem operator*(QuadElem x, const Rational& s) { return x *= s; }
  friend QuadElem operator*(const Rational& s, QuadElem x) { return x *= s; }

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// The constant c in the same field as *this.
  QuadElem lift(Rational c) const { return QuadElem(field_, std::move(c)); }
  QuadElem one() const { return lift(1); }
  QuadElem zero() const { return lift(0); }

 private:
  void check_field(const QuadElem& y) const {
    if (field_ != y.field_) throw std::invalid_argument("mixed fields: " + field_.label() + " vs " + y.field_.label());
  }

  Field field_;
  Rational a_ = 0;
  Rational b_ = 0;
};

/// sqrt(d) in Q(sqrt d).
inline QuadElem sqrt_d(Field f) {
  if (f.is_rational()) throw std::invalid_argument("sqrt_d of the rational field");
  return QuadElem(f, 0, 1);
}

/// Exact sign of a + s*b*sqrt(d), s = +1 at the identity embedding and -1 at
/// the conjugate one.  When a and the radical part agree in sign the answer is
/// immediate; otherwise a^2 is compared with d*b^2.
inline int sign(const QuadElem& x, Embedding e = Embedding::identity) {
  const int sa = sign_of(x.a());
  const int sb = (e == Embedding::identity ? 1 : -1) * sign_of(x.b());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const Rational diff = x.a() * x.a() - Rational(x.field().d()) * x.b() * x.b();
  const int sd = sign_of(diff);
  if (sd > 0) return sa;
  if (sd < 0) return sb;
  return 0;  // unreachable for squarefree d >= 2
}

/// Exact three-way comparison of x and y at the given embedding.
inline int compare(const QuadElem& x, const QuadElem& y, Embedding e = Embedding::identity) {
  return sign(x - y, e);
}

inline bool is_totally_positive(const QuadElem& x) {
  return sign(x, Embedding::identity) > 0 && sign(x, Embedding::conjugate) > 0;
}

inline bool is_totally_nonnegative(const QuadElem& x) {
  return sign(x, Embedding::identity) >= 0 && sign(x, Embedding::conjugate) >= 0;
}

/// floor of the image at the identity embedding.
///
/// Writes x = (A + B sqrt d) / C with integers A, B and C > 0.  Since
/// isqrt(B^2 d) brackets |B| sqrt d within one unit and sqrt d is irrational,
/// A + B sqrt d lies in [N, N+1) for an integer N, and floor(y / C) only
/// depends on floor(y).
inline BigInt floor_at_identity(const QuadElem& x) {
  const BigInt da = denominator_of(x.a());
  const BigInt db = denominator_of(x.b());
  const BigInt c = boost::multiprecision::lcm(da, db);
  const BigInt a = numerator_of(x.a()) * (c / da);
  const BigInt b = numerator_of(x.b()) * (c / db);
  if (b == 0) return floor_div(a, c);
  const BigInt s = isqrt(b * b * x.field().d());
  const BigInt n = b > 0 ? BigInt(a + s) : BigInt(a - s - 1);
  return floor_div(n, c);
}

inline BigInt ceil_at_identity(const QuadElem& x) { return -floor_at_identity(-x); }

/// Smallest integer m >= 0 with m^2 >= x at the identity embedding.
inline BigInt sqrt_ceil_at_identity(const QuadElem& x) {
  if (sign(x) < 0) throw std::domain_error("sqrt_ceil_at_identity: negative input");
  const BigInt fl = floor_at_identity(x);
  const BigInt s = isqrt(fl);  // s^2 <= floor(x) <= x < (s+1)^2 unless x is integral
  const QuadElem s2 = x.lift(Rational(s * s));
  return sign(s2 - x) == 0 ? s : BigInt(s + 1);
}

/// Largest integer m >= 0 with m^2 <= x at the identity embedding.
inline BigInt sqrt_floor_at_identity(const QuadElem& x) {
  if (sign(x) < 0) throw std::domain_error("sqrt_floor_at_identity: negative input");
  return isqrt(floor_at_identity(x));
}

inline IntegralityClass classify_integrality(const QuadElem& x) {
  const bool a_int = is_integer(x.a());
  const bool b_int = is_integer(x.b());
  if (a_int && x.b() == 0) return IntegralityClass::Z;
  if (a_int && b_int) return IntegralityClass::Z_sqrt_d;
  if (x.field().half_integral_ring()) {
    const Rational a2 = 2 * x.a();
    const Rational b2 = 2 * x.b();
    if (is_integer(a2) && is_integer(b2)) {
      const bool odd_a = numerator_of(a2) % 2 != 0;
      const bool odd_b = numerator_of(b2) % 2 != 0;
      if (odd_a == odd_b) return IntegralityClass::O_K;
    }
  }
  return IntegralityClass::none;
}

inline bool is_algebraic_integer(const QuadElem& x) { return classify_integrality(x) != IntegralityClass::none; }

/// Square-and-multiply, capped at kMaxExponent.
inline QuadElem pow(const QuadElem& x, unsigned k) {
  if (k > kMaxExponent) throw std::out_of_range("exponent " + std::to_string(k) + " exceeds cap " + std::to_string(kMaxExponent));
  QuadElem acc = x.one();
  QuadElem base = x;
  while (k) {
    if (k & 1U) acc *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return acc;
}

/// Approximate value at an embedding; annotation use only.
inline long double approx(const QuadElem& x, Embedding e = Embedding::identity) {
  const long double a = x.a().convert_to<long double>();
  const long double b = x.b().convert_to<long double>();
  const long double r = std::sqrt(static_cast<long double>(x.field().d()));
  return e == Embedding::identity ? a + b * r : a - b * r;
}

/// floor(x * 10^digits) / 10^digits at the identity embedding, as text.
inline std::string to_decimal(const QuadElem& x, unsigned digits = 12) {
  return floor_decimal(floor_at_identity(x * Rational(pow_int(10, digits))), digits);
}

// ---------------------------------------------------------------------------
// Text form: "A", "Bsqrt5", "A+Bsqrt5", "A-sqrt5", with A, B rationals "p" or
// "p/q".  Used by the CLI and by the ambient-group key.

inline std::string to_string(const QuadElem& x) {
  if (x.field().is_rational() || x.b() == 0) return to_short_string(x.a());
  const std::string rad = "sqrt" + std::to_string(x.field().d());
  std::string coef;
  if (x.b() == 1) {
    coef = "";
  } else if (x.b() == -1) {
    coef = "-";
  } else {
    coef = to_short_string(x.b());
  }
  if (x.a() == 0) return coef + rad;
  std::string out = to_short_string(x.a());
  if (x.b() > 0) out += "+";
  return out + coef + rad;
}

inline std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << to_string(x); }

/// Parses the text form into field f.  A term containing "sqrtD" must use
/// D == f.d().
inline QuadElem parse_quad(std::string_view text, Field f) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty field element");
  Rational a = 0, b = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = pos + 1;
    while (next < s.size() && s[next] != '+' && s[next] != '-') ++next;
    std::string term = s.substr(pos, next - pos);
    pos = next;
    bool neg = false;
    if (term.front() == '+' || term.front() == '-') {
      neg = term.front() == '-';
      term.erase(0, 1);
    }
    if (term.empty()) throw std::invalid_argument("malformed field element: " + std::string(text));
    auto r = term.find("sqrt");
    if (r == std::string::npos) {
      Rational v = parse_rational(term);
      a += neg ? Rational(-v) : v;
      continue;
    }
    if (f.is_rational()) throw std::invalid_argument("radical term in a rational field element: " + std::string(text));
    const std::string coef = term.substr(0, r);
    std::string rad = term.substr(r + 4);
    if (!rad.empty() && rad.front() == '(' && rad.back() == ')') rad = rad.substr(1, rad.size() - 2);
    if (rad.empty() || parse_bigint(rad) != f.d()) {
      throw std::invalid_argument("radical does not match field " + f.label() + ": " + std::string(text));
    }
    if (!coef.empty() && coef.back() == '*') throw std::invalid_argument("use 'Bsqrt5', not 'B*sqrt5'");
    Rational v = coef.empty() ? Rational(1) : parse_rational(coef);
    b += neg ? Rational(-v) : v;
  }
  return QuadElem(f, a, b);
}

/// Infers the field from the text: the first "sqrtD" fixes d, otherwise Q.
inline QuadElem parse_quad(std::string_view text) {
  auto r = text.find("sqrt");
  if (r == std::string_view::npos) return parse_quad(text, Field::rational());
  std::size_t e = r + 4;
  if (e < text.size() && text[e] == '(') ++e;
  std::size_t s = e;
  while (e < text.size() && text[e] >= '0' && text[e] <= '9') ++e;
  if (s == e) throw std::invalid_argument("missing radicand in " + std::string(text));
  return parse_quad(text, Field::quadratic(std::stoll(std::string(text.substr(s, e - s)))));
}

// ---------------------------------------------------------------------------
// JSON: {"d": int|"rational", "a": "num/den", "b": "num/den"}

inline nlohmann::json field_to_json(Field f) {
  if (f.is_rational()) return "rational";
  return f.d();
}

inline Field field_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "rational") throw std::invalid_argument("unknown field tag " + j.dump());
    return Field::rational();
  }
  if (!j.is_number_integer()) throw std::invalid_argument("field must be an integer or \"rational\"");
  return Field::quadratic(j.get<std::int64_t>());
}

inline void to_json(nlohmann::json& j, const QuadElem& x) {
  j = nlohmann::json{{"d", field_to_json(x.field())},
                     {"a", to_fraction_string(x.a())},
                     {"b", to_fraction_string(x.b())}};
}

inline void from_json(const nlohmann::json& j, QuadElem& x) {
  x = QuadElem(field_from_json(j.at("d")), parse_rational(j.at("a").get<std::string>()),
               parse_rational(j.at("b").get<std::string>()));
}

}  // namespace hypcert
