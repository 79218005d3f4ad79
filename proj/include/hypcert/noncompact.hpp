#pragma once

// Cut-hyperplane data over Q for the standard form -x_0^2 + x_1^2 + ... + x_n^2.
//
// A positive target r is written r = b^2 - 2c - 1 with 0 <= c <= 2b; then
// w = (c+1, b, c, 0, ..., 0) has f(w) = r and w_1^2 = b^2 > r.

#include "hypcert/eq1.hpp"
#include "hypcert/lorentz.hpp"

#include <json.hpp>

#include <span>
#include <stdexcept>

namespace hypcert {

inline constexpr int kMinNoncompactDimension = 3;

struct Decomposition {
  BigInt r;
  BigInt b;
  BigInt c;

  /// r = b^2 - 2c - 1, b > 0, 0 <= c <= 2b
  bool valid() const { return b > 0 && c >= 0 && c <= 2 * b && r == b * b - 2 * c - 1; }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// The decomposition with minimal b.  b^2 - r - 1 >= 0 forces
/// b >= ceil(sqrt(r+1)); consecutive squares alternate parity, so at most one
/// step fixes the parity of b^2 - r - 1, and then (b-2)^2 <= r + 5 gives c <= 2b.
inline Decomposition decompose(const BigInt& r) {
  if (r < 1) throw std::domain_error("decompose: r must be >= 1");
  BigInt b = isqrt(r + 1);
  if (b * b < r + 1) ++b;
  if ((b * b - r - 1) % 2 != 0) ++b;
  Decomposition d{r, b, (b * b - r - 1) / 2};
  if (!d.valid()) throw std::logic_error("decompose: invariant violated for r = " + r.str());
  return d;
}

inline Vector noncompact_vector(const Decomposition& dec, int n) {
  if (n < kMinNoncompactDimension) throw std::invalid_argument("noncompact family needs n >= 3");
  Vector w(static_cast<std::size_t>(n) + 1, QuadElem::rational(0));
  w[0] = QuadElem::rational(Rational(dec.c + 1));
  w[1] = QuadElem::rational(Rational(dec.b));
  w[2] = QuadElem::rational(Rational(dec.c));
  return w;
}

/// w = (c+1, b, c, 0, ..., 0) with f(w) = r for the standard form in n+1 variables.
inline NormalVector build_w_noncompact(const Decomposition& dec, int n) {
  NormalVector w(LorentzForm::standard(n), noncompact_vector(dec, n));
  if (!(w.norm() == QuadElem::rational(Rational(dec.r)))) throw std::logic_error("build_w_noncompact: f(w) != r");
  return w;
}

/// Eq1 for w against R_0 = {x_1 = 0} of the form f.
inline Eq1Report check_eq1(const LorentzForm& f, std::span<const QuadElem> w) {
  return eq1_report(w[1], form_eval(f, w));
}

inline Eq1Report check_eq1(const NormalVector& w) { return eq1_report(w[1], w.norm()); }

inline void to_json(nlohmann::json& j, const Decomposition& d) {
  j = nlohmann::json{{"r", d.r.str()}, {"b", d.b.str()}, {"c", d.c.str()}};
}

inline void from_json(const nlohmann::json& j, Decomposition& d) {
  d.r = parse_bigint(j.at("r").get<std::string>());
  d.b = parse_bigint(j.at("b").get<std::string>());
  d.c = parse_bigint(j.at("c").get<std::string>());
}

}  // namespace hypcert
