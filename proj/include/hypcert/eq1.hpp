#pragma once

// The ultraparallelism test against R_0 = {x_1 = 0}: with v = (0,1,0,...,0),
// cosh^2 d(R_0, w^perp) = w_1^2 / f(w), and the pair is ultraparallel with a
// genuine hyperplane w^perp exactly when w_1^2 > f(w) > 0.

#include "hypcert/quadratic_field.hpp"

#include <json.hpp>

#include <stdexcept>

namespace hypcert {

struct Eq1Report {
  bool ultraparallel = false;  // w_1^2 > f(w)
  bool positive = false;       // f(w) > 0
  QuadElem ratio;              // w_1^2 / f(w)
  int ratio_minus_one_sign = 0;

  bool holds() const { return ultraparallel && positive; }

  friend bool operator==(const Eq1Report&, const Eq1Report&) = default;
};

/// Builds the report from w_1 and f(w); f(w) must be nonzero.
inline Eq1Report eq1_report(const QuadElem& w1, const QuadElem& fw) {
  if (fw.is_zero()) throw std::domain_error("Eq1: f(w) = 0, w^perp is not a hyperplane");
  const QuadElem w1sq = w1 * w1;
  Eq1Report r;
  r.ultraparallel = sign(w1sq - fw) > 0;
  r.positive = sign(fw) > 0;
  r.ratio = w1sq / fw;
  r.ratio_minus_one_sign = sign(r.ratio - r.ratio.one());
  return r;
}

inline void to_json(nlohmann::json& j, const Eq1Report& r) {
  j = nlohmann::json{{"ultraparallel", r.ultraparallel},
                     {"positive", r.positive},
                     {"ratio", r.ratio},
                     {"ratioMinusOneSign", r.ratio_minus_one_sign}};
}

inline void from_json(const nlohmann::json& j, Eq1Report& r) {
  r.ultraparallel = j.at("ultraparallel").get<bool>();
  r.positive = j.at("positive").get<bool>();
  r.ratio = j.at("ratio").get<QuadElem>();
  r.ratio_minus_one_sign = j.at("ratioMinusOneSign").get<int>();
}

}  // namespace hypcert
