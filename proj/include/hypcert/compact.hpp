#pragma once

// Cut-hyperplane data over K = Q(sqrt 5) for f = -sqrt5 x_0^2 + x_1^2 + ... + x_n^2.
//
// For rho in Z[sqrt5] with sigma(rho)^2 > rho > sigma(rho) > 1 and
// rho^k = u_k + v_k sqrt5:
//
//   alpha = ceil(x) + sqrt5,   x = sqrt(sigma(rho^k) / sqrt5)
//   beta  = floor(sqrt5 y) + y sqrt5,   y = floor(sqrt(u_k / 10))
//   eps   = rho^k + sqrt5 alpha^2 - beta^2
//
// so that once eps = gamma_1^2 + gamma_2^2 + gamma_3^2 in O_K, the vector
// w = (alpha, beta, gamma_1, gamma_2, gamma_3, 0, ..., 0) has f(w) = rho^k.

#include "hypcert/eq1.hpp"
#include "hypcert/lorentz.hpp"
#include "hypcert/three_squares.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace hypcert {

inline constexpr int kMinCompactDimension = 4;

inline Field sqrt5_field() { return Field::quadratic(5); }

struct RhoParameter {
  QuadElem rho;
  bool sigma_sq_gt_rho = false;    // sigma(rho)^2 > rho
  bool rho_gt_sigma = false;       // rho > sigma(rho)
  bool sigma_gt_one = false;       // sigma(rho) > 1
  bool validated = false;
};

/// The three sign conditions on rho, each one exact sign test.
inline RhoParameter validate_rho(const QuadElem& rho) {
  if (rho.field() != sqrt5_field()) throw std::invalid_argument("rho must lie in Q(sqrt5)");
  const auto cls = classify_integrality(rho);
  if (cls != IntegralityClass::Z && cls != IntegralityClass::Z_sqrt_d) {
    throw std::invalid_argument("rho must lie in Z[sqrt5], got " + to_string(rho));
  }
  const QuadElem s = rho.conjugate();
  RhoParameter r{rho};
  r.sigma_sq_gt_rho = sign(s * s - rho) > 0;
  r.rho_gt_sigma = sign(rho - s) > 0;
  r.sigma_gt_one = sign(s - s.one()) > 0;
  r.validated = r.sigma_sq_gt_rho && r.rho_gt_sigma && r.sigma_gt_one;
  return r;
}

enum class StepMode { analytic, explicit_witness };

inline std::string to_string(StepMode m) { return m == StepMode::analytic ? "analytic" : "explicit"; }

inline StepMode step_mode_from_string(const std::string& s) {
  if (s == "analytic") return StepMode::analytic;
  if (s == "explicit") return StepMode::explicit_witness;
  throw std::invalid_argument("unknown mode " + s);
}

struct CompactStep {
  unsigned k = 0;
  QuadElem rho_k;
  BigInt u;
  BigInt v;
  BigInt ceil_x;           // ceil(sqrt(sigma(rho^k)/sqrt5))
  BigInt y;                // largest y with 10 y^2 <= u
  BigInt floor_sqrt5_y;    // floor(sqrt5 y)
  QuadElem alpha;
  QuadElem beta;
  QuadElem epsilon;
  bool epsilon_totally_positive = false;
  std::string epsilon_over_beta;  // decimal of iota(eps)/iota(beta), or iota(eps) when beta = 0
  std::optional<Triple> gammas;
  StepMode mode = StepMode::analytic;

  friend bool operator==(const CompactStep&, const CompactStep&) = default;
};

inline std::string epsilon_scale_diagnostic(const QuadElem& eps, const QuadElem& beta) {
  return beta.is_zero() ? to_decimal(eps, 6) : to_decimal(eps / beta, 6);
}

inline CompactStep compute_step(const RhoParameter& rho, unsigned k) {
  if (!rho.validated) throw std::invalid_argument("compute_step: rho fails the sign conditions");
  if (k < 1) throw std::invalid_argument("compute_step: k must be >= 1");
  const Field f = rho.rho.field();
  const QuadElem r5 = sqrt_d(f);

  CompactStep s;
  s.k = k;
  s.rho_k = pow(rho.rho, k);
  s.u = numerator_of(s.rho_k.a());
  s.v = numerator_of(s.rho_k.b());

  // sigma(rho^k) / sqrt5 = (u - v sqrt5) / sqrt5 = -v + (u/5) sqrt5
  const QuadElem x_sq(f, Rational(-s.v), Rational(s.u, 5));
  s.ceil_x = sqrt_ceil_at_identity(x_sq);
  s.y = isqrt(s.u / 10);  // 10 y^2 <= u  <=>  y^2 <= floor(u/10)
  s.floor_sqrt5_y = isqrt(5 * s.y * s.y);

  s.alpha = QuadElem(f, Rational(s.ceil_x), 1);
  s.beta = QuadElem(f, Rational(s.floor_sqrt5_y), Rational(s.y));
  s.epsilon = s.rho_k + r5 * s.alpha * s.alpha - s.beta * s.beta;
  s.epsilon_totally_positive = is_totally_positive(s.epsilon);
  s.epsilon_over_beta = epsilon_scale_diagnostic(s.epsilon, s.beta);
  return s;
}

/// Attaches gamma's found by the three-squares search; returns false when the
/// budget ran out (the step stays analytic).
inline bool make_explicit(CompactStep& step, std::uint64_t budget = kDefaultThreeSquaresBudget) {
  if (!step.epsilon_totally_positive) return false;
  auto g = three_squares_decompose(step.epsilon, budget);
  if (!g) return false;
  step.gammas = std::move(g);
  step.mode = StepMode::explicit_witness;
  return true;
}

inline Vector compact_vector(const CompactStep& step, int n) {
  if (n < kMinCompactDimension) throw std::invalid_argument("compact family needs n >= 4");
  if (!step.gammas) throw std::invalid_argument("build_w_compact: step has no gamma triple");
  const Field f = step.alpha.field();
  Vector w(static_cast<std::size_t>(n) + 1, QuadElem(f));
  w[0] = step.alpha;
  w[1] = step.beta;
  for (std::size_t i = 0; i < 3; ++i) w[2 + i] = (*step.gammas)[i];
  return w;
}

/// w = (alpha, beta, gamma_1, gamma_2, gamma_3, 0, ..., 0); f(w) = rho^k.
inline NormalVector build_w_compact(const CompactStep& step, int n) {
  NormalVector w(LorentzForm::sqrt_weighted(step.alpha.field(), n), compact_vector(step, n));
  if (!(w.norm() == step.rho_k)) throw std::logic_error("build_w_compact: f(w) != rho^k");
  return w;
}

/// Eq1 from beta and rho^k alone: w_1^2 - f(w) = beta^2 - rho^k.
inline Eq1Report check_eq1_compact(const CompactStep& step) { return eq1_report(step.beta, step.rho_k); }

struct DecimalBracket {
  std::string lo;
  std::string hi;

  friend bool operator==(const DecimalBracket&, const DecimalBracket&) = default;
};

struct ConvergenceDiagnostics {
  Rational sqrt5v_over_u_squared;              // 5 v^2 / u^2
  DecimalBracket sqrt5v_over_u;                // sqrt5 v / u to 12 digits
  std::optional<QuadElem> alpha_sq_over_beta_sq;
  std::optional<std::string> alpha_sq_over_beta_sq_decimal;
  QuadElem sigma_rho_2k_over_u;                // sigma(rho)^(2k) / u
  std::string sigma_rho_2k_over_u_decimal;

  friend bool operator==(const ConvergenceDiagnostics&, const ConvergenceDiagnostics&) = default;
};

inline constexpr unsigned kDiagnosticDigits = 12;

/// [floor(sqrt(5 v^2) / u * 10^D), +1] / 10^D, for u > 0.
inline DecimalBracket sqrt5v_over_u_bracket(const BigInt& u, const BigInt& v) {
  const BigInt scale = pow_int(10, kDiagnosticDigits);
  const BigInt root = isqrt(5 * v * v * scale * scale);
  BigInt lo = floor_div(root, u);
  if (v < 0) lo = -lo - 1;
  return {floor_decimal(lo, kDiagnosticDigits), floor_decimal(lo + 1, kDiagnosticDigits)};
}

inline ConvergenceDiagnostics convergence_diagnostics(const RhoParameter& rho, const CompactStep& step) {
  if (!rho.validated) throw std::invalid_argument("convergence_diagnostics: rho fails the sign conditions");
  ConvergenceDiagnostics d;
  d.sqrt5v_over_u_squared = Rational(5 * step.v * step.v, step.u * step.u);
  d.sqrt5v_over_u = sqrt5v_over_u_bracket(step.u, step.v);
  if (!step.beta.is_zero()) {
    d.alpha_sq_over_beta_sq = step.alpha * step.alpha / (step.beta * step.beta);
    d.alpha_sq_over_beta_sq_decimal = to_decimal(*d.alpha_sq_over_beta_sq, kDiagnosticDigits);
  }
  const QuadElem sk = step.rho_k.conjugate();
  d.sigma_rho_2k_over_u = sk * sk * Rational(1, step.u);
  d.sigma_rho_2k_over_u_decimal = to_decimal(d.sigma_rho_2k_over_u, kDiagnosticDigits);
  return d;
}

inline ConvergenceDiagnostics convergence_diagnostics(const RhoParameter& rho, unsigned k) {
  return convergence_diagnostics(rho, compute_step(rho, k));
}

// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const CompactStep& s) {
  j = nlohmann::json{{"k", s.k},
                     {"rhoPower", s.rho_k},
                     {"u", s.u.str()},
                     {"v", s.v.str()},
                     {"ceilX", s.ceil_x.str()},
                     {"y", s.y.str()},
                     {"floorSqrt5Y", s.floor_sqrt5_y.str()},
                     {"alpha", s.alpha},
                     {"beta", s.beta},
                     {"epsilon", s.epsilon},
                     {"epsilonTotallyPositive", s.epsilon_totally_positive},
                     {"epsilonOverBeta", s.epsilon_over_beta},
                     {"gammas", nullptr},
                     {"mode", to_string(s.mode)}};
  if (s.gammas) j["gammas"] = *s.gammas;
}

inline void from_json(const nlohmann::json& j, CompactStep& s) {
  s.k = j.at("k").get<unsigned>();
  s.rho_k = j.at("rhoPower").get<QuadElem>();
  s.u = parse_bigint(j.at("u").get<std::string>());
  s.v = parse_bigint(j.at("v").get<std::string>());
  s.ceil_x = parse_bigint(j.at("ceilX").get<std::string>());
  s.y = parse_bigint(j.at("y").get<std::string>());
  s.floor_sqrt5_y = parse_bigint(j.at("floorSqrt5Y").get<std::string>());
  s.alpha = j.at("alpha").get<QuadElem>();
  s.beta = j.at("beta").get<QuadElem>();
  s.epsilon = j.at("epsilon").get<QuadElem>();
  s.epsilon_totally_positive = j.at("epsilonTotallyPositive").get<bool>();
  s.epsilon_over_beta = j.at("epsilonOverBeta").get<std::string>();
  s.gammas.reset();
  if (!j.at("gammas").is_null()) s.gammas = j.at("gammas").get<Triple>();
  s.mode = step_mode_from_string(j.at("mode").get<std::string>());
}

inline void to_json(nlohmann::json& j, const ConvergenceDiagnostics& d) {
  j = nlohmann::json{{"sqrt5VOverUSquared", to_fraction_string(d.sqrt5v_over_u_squared)},
                     {"sqrt5VOverU", {{"lo", d.sqrt5v_over_u.lo}, {"hi", d.sqrt5v_over_u.hi}}},
                     {"alphaSqOverBetaSq", nullptr},
                     {"alphaSqOverBetaSqDecimal", nullptr},
                     {"sigmaRho2kOverU", d.sigma_rho_2k_over_u},
                     {"sigmaRho2kOverUDecimal", d.sigma_rho_2k_over_u_decimal}};
  if (d.alpha_sq_over_beta_sq) {
    j["alphaSqOverBetaSq"] = *d.alpha_sq_over_beta_sq;
    j["alphaSqOverBetaSqDecimal"] = *d.alpha_sq_over_beta_sq_decimal;
  }
}

inline void from_json(const nlohmann::json& j, ConvergenceDiagnostics& d) {
  d.sqrt5v_over_u_squared = parse_rational(j.at("sqrt5VOverUSquared").get<std::string>());
  d.sqrt5v_over_u = {j.at("sqrt5VOverU").at("lo").get<std::string>(), j.at("sqrt5VOverU").at("hi").get<std::string>()};
  d.alpha_sq_over_beta_sq.reset();
  d.alpha_sq_over_beta_sq_decimal.reset();
  if (!j.at("alphaSqOverBetaSq").is_null()) {
    d.alpha_sq_over_beta_sq = j.at("alphaSqOverBetaSq").get<QuadElem>();
    d.alpha_sq_over_beta_sq_decimal = j.at("alphaSqOverBetaSqDecimal").get<std::string>();
  }
  d.sigma_rho_2k_over_u = j.at("sigmaRho2kOverU").get<QuadElem>();
  d.sigma_rho_2k_over_u_decimal = j.at("sigmaRho2kOverUDecimal").get<std::string>();
}

}  // namespace hypcert
