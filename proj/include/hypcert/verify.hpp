#pragma once

// Independent re-verification of a certificate body.
//
// Every check re-derives its claim from the certificate fields with the
// exact-arithmetic and form primitives; nothing produced during generation is
// trusted.  A check that throws is recorded as a failure carrying the
// exception text.  A skipped check (the gamma clause of an analytic compact
// step) is reported as such and does not fail the certificate.

#include "hypcert/certificate.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace hypcert {

enum class CheckStatus { pass, fail, skipped };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string witness;
};

struct VerificationReport {
  unsigned k = 0;
  std::string family;
  std::vector<CheckResult> checks;

  bool overall() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return !checks.empty();
  }
  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) out.push_back(c.name);
    return out;
  }
  bool skipped_any() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::skipped) return true;
    return false;
  }
};

namespace detail {

/// Thrown inside a check body to record a failure with a witness.
struct check_failure {
  std::string witness;
};

template <class... Parts>
[[noreturn]] void fail(const Parts&... parts) {
  std::ostringstream os;
  ((os << parts), ...);
  throw check_failure{os.str()};
}

inline std::string q(const QuadElem& x) { return to_string(x); }

class Checker {
 public:
  explicit Checker(VerificationReport& r) : report_(r) {}

  /// body returns the pass witness, or "" to mean skipped-with-reason via skip().
  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult res{name, CheckStatus::pass, {}};
    try {
      res.witness = body();
      if (skip_) {
        res.status = CheckStatus::skipped;
        skip_ = false;
      }
    } catch (const check_failure& f) {
      res.status = CheckStatus::fail;
      res.witness = f.witness;
    } catch (const std::exception& e) {
      res.status = CheckStatus::fail;
      res.witness = std::string("exception: ") + e.what();
    }
    report_.checks.push_back(std::move(res));
  }

  std::string skip(std::string why) {
    skip_ = true;
    return why;
  }

 private:
  VerificationReport& report_;
  bool skip_ = false;
};

inline void expect_quad(const char* what, const QuadElem& stated, const QuadElem& expected) {
  if (!(stated == expected)) fail(what, " = ", q(stated), ", expected ", q(expected));
}

inline void expect_int(const char* what, const BigInt& stated, const BigInt& expected) {
  if (stated != expected) fail(what, " = ", stated.str(), ", expected ", expected.str());
}

inline std::string interval_text(const DistanceInterval& d) {
  return "[" + to_fraction_string(d.lo) + ", " + to_fraction_string(d.hi) + "]";
}

inline void verify_noncompact(const FamilyCertificate& c, Checker& ck) {
  const auto& nc = *c.noncompact;
  const BigInt& r = nc.decomposition.r;
  const QuadElem target = QuadElem::rational(Rational(r));
  const int n = c.form.n();

  ck.run("family-form", [&]() -> std::string {
    if (n < kMinNoncompactDimension) fail("n = ", n, " < ", kMinNoncompactDimension);
    if (!(c.form == LorentzForm::standard(n))) fail("form is not -x0^2 + x1^2 + ... + xn^2 over Q");
    return "standard form over Q, n = " + std::to_string(n);
  });

  ck.run("target", [&]() -> std::string {
    if (r < 1) fail("r = ", r.str(), " is not positive");
    if (nc.prime) {
      if (!is_prime(*nc.prime)) fail("p = ", nc.prime->str(), " is not prime");
      expect_int("r", r, pow_int(*nc.prime, c.k));
      return "r = " + r.str() + " = " + nc.prime->str() + "^" + std::to_string(c.k);
    }
    return "r = " + r.str();
  });

  ck.run("decomposition", [&]() -> std::string {
    const auto& d = nc.decomposition;
    const BigInt lhs = d.b * d.b - 2 * d.c - 1;
    if (lhs != r) fail("b^2 - 2c - 1 = ", d.b.str(), "^2 - 2*", d.c.str(), " - 1 = ", lhs.str(), " != ", r.str());
    if (d.b <= 0 || d.c < 0 || d.c > 2 * d.b) fail("bounds 0 <= c <= 2b violated: b = ", d.b.str(), ", c = ", d.c.str());
    const Decomposition canon = decompose(r);
    if (!(canon == d)) fail("b = ", d.b.str(), " is not the minimal b = ", canon.b.str());
    return "r = " + d.b.str() + "^2 - 2*" + d.c.str() + " - 1";
  });

  ck.run("w-norm", [&]() -> std::string {
    if (!c.w) fail("w missing");
    const Vector expected = noncompact_vector(nc.decomposition, n);
    if (*c.w != expected) fail("w differs from (c+1, b, c, 0, ..., 0)");
    const QuadElem fw = form_eval(c.form, *c.w);
    expect_quad("f(w)", fw, target);
    return "f(w) = " + q(fw);
  });

  ck.run("factorization", [&]() -> std::string {
    const auto& fz = nc.factorization;
    expect_int("factorization.value", fz.value, r);
    expect_int("product of factors", fz.product(), fz.value);
    for (std::size_t i = 0; i < fz.factors.size(); ++i) {
      const auto& pp = fz.factors[i];
      if (pp.exponent < 1) fail("exponent of ", pp.prime.str(), " is ", pp.exponent);
      if (!is_prime(pp.prime)) fail(pp.prime.str(), " is not prime");
      if (i > 0 && !(fz.factors[i - 1].prime < pp.prime)) fail("factors not strictly increasing at ", pp.prime.str());
    }
    return "product = " + fz.product().str();
  });

  ck.run("smoothness", [&]() -> std::string {
    if (nc.prime) expect_int("T", nc.smoothness_bound, *nc.prime + 1);
    const bool smooth = is_T_smooth(r, nc.smoothness_bound);
    if (smooth != nc.smooth) fail("smooth flag ", nc.smooth, " but ", r.str(), " smooth wrt T = ", nc.smoothness_bound.str(), " is ", smooth);
    if (!smooth) fail(r.str(), " is not ", nc.smoothness_bound.str(), "-smooth");
    BigInt largest = 1;
    for (const auto& pp : nc.factorization.factors) largest = pp.prime;
    return "largest prime " + largest.str() + " < T = " + nc.smoothness_bound.str();
  });

  ck.run("trace-ring", [&]() -> std::string {
    std::vector<PrimeIdeal> primes;
    for (const auto& pp : nc.factorization.factors) {
      if (!fits_u64(pp.prime)) fail("prime ", pp.prime.str(), " too large for a prime ideal record");
      primes.push_back({pp.prime.convert_to<std::uint64_t>(), IdealKind::rational, std::nullopt});
    }
    const TraceRingBound expected(Field::rational(), primes);
    if (!(c.trace_ring_bound == expected)) fail("bound ", c.trace_ring_bound.label(), ", expected ", expected.label());
    return c.trace_ring_bound.label();
  });
}

inline void verify_compact(const FamilyCertificate& c, Checker& ck) {
  const auto& cp = *c.compact;
  const auto& s = cp.step;
  const Field f = sqrt5_field();
  const int n = c.form.n();
  const QuadElem r5 = sqrt_d(f);

  ck.run("family-form", [&]() -> std::string {
    if (n < kMinCompactDimension) fail("n = ", n, " < ", kMinCompactDimension);
    if (!(c.form == LorentzForm::sqrt_weighted(f, n))) fail("form is not -sqrt5 x0^2 + x1^2 + ... + xn^2");
    return "-sqrt5 x0^2 + sum xi^2, n = " + std::to_string(n);
  });

  ck.run("target", [&]() -> std::string {
    if (!(cp.rho.field() == f)) fail("rho not in Q(sqrt5)");
    const RhoParameter rp = validate_rho(cp.rho);
    if (!rp.validated) fail("rho = ", q(cp.rho), " fails sigma(rho)^2 > rho > sigma(rho) > 1 or is not in Z[sqrt5]");
    if (s.k != c.k) fail("step.k = ", s.k, " but k = ", c.k);
    if (c.k < 1) fail("k = 0");
    expect_quad("rho^k", s.rho_k, pow(cp.rho, c.k));
    return "rho^" + std::to_string(c.k) + " = " + q(s.rho_k);
  });

  ck.run("step-definitions", [&]() -> std::string {
    expect_quad("u + sqrt5 v", QuadElem(f, Rational(s.u), Rational(s.v)), s.rho_k);
    // x^2 = sigma(rho^k)/sqrt5 = -v + (u/5) sqrt5
    const QuadElem x2(f, Rational(-s.v), Rational(s.u, 5));
    const QuadElem cx(f, Rational(s.ceil_x), 0);
    const QuadElem cx1(f, Rational(s.ceil_x - 1), 0);
    if (s.ceil_x < 1 || compare(cx * cx, x2) < 0 || compare(cx1 * cx1, x2) >= 0) {
      fail("ceilX = ", s.ceil_x.str(), " is not ceil(sqrt(", q(x2), "))");
    }
    if (s.y < 0 || 10 * s.y * s.y > s.u || 10 * (s.y + 1) * (s.y + 1) <= s.u) {
      fail("y = ", s.y.str(), " is not the largest y with 10 y^2 <= u = ", s.u.str());
    }
    const BigInt& fy = s.floor_sqrt5_y;
    if (fy < 0 || fy * fy > 5 * s.y * s.y || (fy + 1) * (fy + 1) <= 5 * s.y * s.y) {
      fail("floorSqrt5Y = ", fy.str(), " is not floor(sqrt5 * ", s.y.str(), ")");
    }
    expect_quad("alpha", s.alpha, QuadElem(f, Rational(s.ceil_x), 1));
    expect_quad("beta", s.beta, QuadElem(f, Rational(fy), Rational(s.y)));
    return "alpha = " + q(s.alpha) + ", beta = " + q(s.beta);
  });

  ck.run("epsilon-identity", [&]() -> std::string {
    const QuadElem lhs = -r5 * s.alpha * s.alpha + s.beta * s.beta + s.epsilon;
    if (!(lhs == s.rho_k)) fail("-sqrt5 alpha^2 + beta^2 + eps = ", q(lhs), " != rho^k = ", q(s.rho_k));
    const bool tp = is_totally_positive(s.epsilon);
    if (tp != s.epsilon_totally_positive) fail("epsilonTotallyPositive = ", s.epsilon_totally_positive, " but eps = ", q(s.epsilon), " gives ", tp);
    if (!is_algebraic_integer(s.epsilon)) fail("eps = ", q(s.epsilon), " is not integral");
    return "eps = " + q(s.epsilon) + (tp ? " (totally positive)" : " (not totally positive)");
  });

  ck.run("three-squares", [&]() -> std::string {
    if (!s.gammas) {
      if (s.mode != StepMode::analytic) fail("mode explicit without gammas");
      if (c.w) fail("w present without gammas");
      if (cp.budget_exhausted != cp.search_budget.has_value()) fail("threeSquaresBudget must be present exactly when the budget flag is set");
      if (!cp.budget_exhausted) return ck.skip("analytic step: gamma clause unchecked");
      // the flag is a claim about a bounded search; rerun it
      if (!s.epsilon_totally_positive) fail("budget flag set but eps = ", q(s.epsilon), " is not totally positive");
      if (three_squares_decompose(s.epsilon, *cp.search_budget)) fail("budget flag set but a triple exists within ", *cp.search_budget, " candidates");
      return ck.skip("analytic step: search budget " + std::to_string(*cp.search_budget) + " exhausted, gamma clause unchecked");
    }
    if (s.mode != StepMode::explicit_witness) fail("gammas present in analytic mode");
    if (cp.budget_exhausted || cp.search_budget) fail("budget flag set on an explicit step");
    QuadElem sum = s.epsilon.zero();
    for (const auto& g : *s.gammas) {
      if (!is_algebraic_integer(g)) fail("gamma = ", q(g), " is not in O_K");
      sum = sum + g * g;
    }
    expect_quad("sum of gamma^2", sum, s.epsilon);
    return "sum gamma_i^2 = " + q(sum);
  });

  ck.run("w-norm", [&]() -> std::string {
    if (!c.w) return ck.skip("no w in analytic mode; f(w) = rho^k follows from the epsilon identity");
    if (*c.w != compact_vector(s, n)) fail("w differs from (alpha, beta, gamma_1, gamma_2, gamma_3, 0, ...)");
    const QuadElem fw = form_eval(c.form, *c.w);
    expect_quad("f(w)", fw, s.rho_k);
    return "f(w) = " + q(fw);
  });

  ck.run("trace-ring", [&]() -> std::string {
    const auto ideals = factor_principal_ideal(s.rho_k);
    if (cp.target_ideals != ideals) fail("targetIdeals differ from the factorization of (rho^k)");
    const TraceRingBound expected = trace_ring_bound_quadratic(s.rho_k);
    if (!(c.trace_ring_bound == expected)) fail("bound ", c.trace_ring_bound.label(), ", expected ", expected.label());
    return c.trace_ring_bound.label();
  });

  ck.run("diagnostics", [&]() -> std::string {
    const ConvergenceDiagnostics expected = convergence_diagnostics(validate_rho(cp.rho), s);
    if (!(cp.diagnostics == expected)) fail("convergence diagnostics differ from recomputation");
    const std::string eb = epsilon_scale_diagnostic(s.epsilon, s.beta);
    if (s.epsilon_over_beta != eb) fail("epsilonOverBeta = ", s.epsilon_over_beta, ", expected ", eb);
    return "sqrt5 v/u in [" + expected.sqrt5v_over_u.lo + ", " + expected.sqrt5v_over_u.hi + "]";
  });
}

}  // namespace detail

inline VerificationReport verify(const FamilyCertificate& c) {
  VerificationReport rep;
  rep.k = c.k;
  rep.family = to_string(c.family);
  detail::Checker ck(rep);
  using detail::fail;

  ck.run("schema", [&]() -> std::string {
    if (c.schema_version != kSchemaVersion) fail("schemaVersion ", c.schema_version);
    if ((c.family == FamilyCase::noncompact) != c.noncompact.has_value() || (c.family == FamilyCase::compact) != c.compact.has_value()) {
      fail("case does not match the family payload");
    }
    if (c.k < 1) fail("k = 0");
    if (c.interval_width <= 0) fail("intervalWidth = ", to_fraction_string(c.interval_width), " is not positive");
    return "schemaVersion " + std::to_string(c.schema_version);
  });
  if (rep.checks.back().status == CheckStatus::fail) return rep;

  ck.run("ambient-key", [&]() -> std::string {
    const std::string key = ambient_group_key(c.form);
    if (key != c.ambient_group_key) fail("ambientGroupKey = ", c.ambient_group_key, ", form gives ", key);
    return key;
  });

  if (c.noncompact) {
    detail::verify_noncompact(c, ck);
  } else {
    detail::verify_compact(c, ck);
  }

  // w_1 and f(w): from w when present, else beta and rho^k (analytic compact)
  auto w1_and_fw = [&]() -> std::pair<QuadElem, QuadElem> {
    if (c.w) return {(*c.w).at(1), form_eval(c.form, *c.w)};
    if (!c.compact) fail("w missing");
    return {c.compact->step.beta, c.compact->step.rho_k};
  };

  ck.run("eq1-signs", [&]() -> std::string {
    const auto [w1, fw] = w1_and_fw();
    if (!(fw == c.target())) fail("f(w) = ", detail::q(fw), " differs from target ", detail::q(c.target()));
    const Eq1Report expected = eq1_report(w1, fw);
    if (!(c.eq1 == expected)) {
      fail("stated eq1 {ultraparallel=", c.eq1.ultraparallel, ", positive=", c.eq1.positive, ", ratio=", detail::q(c.eq1.ratio),
           ", sign=", c.eq1.ratio_minus_one_sign, "} but w_1^2 = ", detail::q(w1 * w1), ", f(w) = ", detail::q(fw));
    }
    return std::string(expected.holds() ? "w_1^2 > f(w) > 0" : "Eq1 does not hold") + ", ratio = " + detail::q(expected.ratio);
  });

  ck.run("cosh-sq", [&]() -> std::string {
    if (!c.eq1.holds()) {
      if (c.cosh_sq || c.distance || c.systole_upper_bound) fail("distance data present although Eq1 fails");
      return std::string("no distance claimed (not ultraparallel)");
    }
    if (!c.cosh_sq) fail("coshSq missing although Eq1 holds");
    const auto [w1, fw] = w1_and_fw();
    detail::expect_quad("coshSq", *c.cosh_sq, w1 * w1 / fw);
    if (c.w) detail::expect_quad("cosh^2 from <v,w>^2/(f(v)f(w))", cosh_sq_distance(coordinate_normal(c.form), NormalVector(c.form, *c.w)), *c.cosh_sq);
    return "cosh^2 d = " + detail::q(*c.cosh_sq);
  });

  ck.run("distance-enclosure", [&]() -> std::string {
    if (!c.cosh_sq) {
      if (c.distance) fail("distance without coshSq");
      return std::string("no distance claimed");
    }
    if (!c.distance) fail("distance missing");
    const auto& d = *c.distance;
    if (d.width() > c.interval_width) fail("width ", to_fraction_string(d.width()), " exceeds ", to_fraction_string(c.interval_width));
    if (!encloses(d, *c.cosh_sq)) fail("cosh^2 of ", detail::interval_text(d), " does not bracket ", detail::q(*c.cosh_sq));
    return "cosh(lo)^2 <= " + detail::q(*c.cosh_sq) + " <= cosh(hi)^2";
  });

  ck.run("distance-canonical", [&]() -> std::string {
    if (!c.cosh_sq) return std::string("no distance claimed");
    const DistanceInterval canon = distance_interval(*c.cosh_sq, c.interval_width);
    if (!(canon == *c.distance)) fail("distance ", detail::interval_text(*c.distance), ", canonical bisection gives ", detail::interval_text(canon));
    return detail::interval_text(canon);
  });

  ck.run("systole", [&]() -> std::string {
    if (!c.distance) {
      if (c.systole_upper_bound) fail("systole bound without distance");
      return std::string("no systole bound claimed");
    }
    if (!c.systole_upper_bound) fail("systoleUpperBound missing");
    const DistanceInterval two = doubled(*c.distance);
    if (!(two == *c.systole_upper_bound)) fail("systoleUpperBound ", detail::interval_text(*c.systole_upper_bound), " != 2 * distance ", detail::interval_text(two));
    return "sys <= " + detail::interval_text(two);
  });

  return rep;
}

/// Parses and verifies one certificate object; parse errors become a failed
/// "schema" check.
inline VerificationReport verify_json(const nlohmann::json& j) {
  FamilyCertificate c;
  try {
    c = certificate_from_json(j);
  } catch (const std::exception& e) {
    VerificationReport rep;
    if (j.is_object() && j.contains("k") && j["k"].is_number_unsigned()) rep.k = j["k"].get<unsigned>();
    rep.checks.push_back({"schema", CheckStatus::fail, e.what()});
    return rep;
  }
  return verify(c);
}

}  // namespace hypcert
