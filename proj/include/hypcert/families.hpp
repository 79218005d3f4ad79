#pragma once

// Certificate generation for both families, and the pigeonhole grouping of a
// family by trace-ring bound.

#include "hypcert/certificate.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypcert {

/// One noncompact certificate for target r at index k.
inline FamilyCertificate noncompact_certificate(const BigInt& r, unsigned k, int n, const std::optional<BigInt>& prime,
                                                const BigInt& smoothness_bound, const Rational& width) {
  FamilyCertificate c;
  c.family = FamilyCase::noncompact;
  c.form = LorentzForm::standard(n);
  c.ambient_group_key = ambient_group_key(c.form);
  c.k = k;
  c.interval_width = width;

  NoncompactPart part;
  part.prime = prime;
  part.decomposition = decompose(r);
  const NormalVector w = build_w_noncompact(part.decomposition, n);
  c.w = w.components();
  c.eq1 = check_eq1(w);
  if (c.eq1.holds()) {
    c.cosh_sq = cosh_sq_distance(coordinate_normal(c.form), w);
    c.distance = distance_interval(*c.cosh_sq, width);
    c.systole_upper_bound = doubled(*c.distance);
  }
  part.factorization = factorize(r);
  part.smoothness_bound = smoothness_bound;
  part.smooth = is_T_smooth(r, smoothness_bound);
  c.trace_ring_bound = trace_ring_bound_rational(r);
  c.noncompact = std::move(part);
  return c;
}

/// Targets r_k = p^k, k = 1..kmax, recorded with smoothness bound T = p + 1.
inline std::vector<FamilyCertificate> gen_noncompact_family(const BigInt& p, unsigned kmax, int n = kMinNoncompactDimension,
                                                            const Rational& width = default_interval_width()) {
  if (kmax < 1) throw std::invalid_argument("gen_noncompact_family: kmax must be >= 1");
  if (n < kMinNoncompactDimension) throw std::invalid_argument("gen_noncompact_family: n must be >= 3");
  const auto targets = smooth_targets(p, kmax);
  std::vector<FamilyCertificate> out;
  out.reserve(targets.size());
  for (unsigned k = 1; k <= kmax; ++k) out.push_back(noncompact_certificate(targets[k - 1], k, n, p, p + 1, width));
  return out;
}

/// Arbitrary T-smooth targets; every target must pass the smoothness gate.
inline std::vector<FamilyCertificate> gen_noncompact_from_targets(const std::vector<BigInt>& targets, const BigInt& t,
                                                                  int n = kMinNoncompactDimension,
                                                                  const Rational& width = default_interval_width()) {
  if (targets.empty()) throw std::invalid_argument("gen_noncompact_from_targets: no targets");
  std::vector<FamilyCertificate> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 1) throw std::invalid_argument("target " + targets[i].str() + " is not positive");
    if (!is_T_smooth(targets[i], t)) throw std::invalid_argument("target " + targets[i].str() + " is not " + t.str() + "-smooth");
    out.push_back(noncompact_certificate(targets[i], static_cast<unsigned>(i + 1), n, std::nullopt, t, width));
  }
  return out;
}

struct CompactOptions {
  int n = kMinCompactDimension;
  StepMode mode = StepMode::analytic;
  std::uint64_t budget = kDefaultThreeSquaresBudget;
  Rational width = default_interval_width();
};

inline FamilyCertificate compact_certificate(const RhoParameter& rho, unsigned k, const CompactOptions& opt) {
  FamilyCertificate c;
  c.family = FamilyCase::compact;
  c.form = LorentzForm::sqrt_weighted(rho.rho.field(), opt.n);
  c.ambient_group_key = ambient_group_key(c.form);
  c.k = k;
  c.interval_width = opt.width;

  CompactPart part;
  part.rho = rho.rho;
  part.step = compute_step(rho, k);
  if (opt.mode == StepMode::explicit_witness) {
    part.budget_exhausted = part.step.epsilon_totally_positive && !make_explicit(part.step, opt.budget);
    if (part.budget_exhausted) part.search_budget = opt.budget;
  }
  std::optional<NormalVector> w;
  if (part.step.gammas) {
    w.emplace(build_w_compact(part.step, opt.n));
    c.w = w->components();
  }
  c.eq1 = check_eq1_compact(part.step);
  if (c.eq1.holds()) {
    c.cosh_sq = c.eq1.ratio;
    if (w && !(cosh_sq_distance(coordinate_normal(c.form), *w) == *c.cosh_sq)) {
      throw std::logic_error("compact_certificate: cosh^2 from w disagrees with beta^2 / rho^k");
    }
    c.distance = distance_interval(*c.cosh_sq, opt.width);
    c.systole_upper_bound = doubled(*c.distance);
  }
  part.target_ideals = factor_principal_ideal(part.step.rho_k);
  c.trace_ring_bound = trace_ring_bound_quadratic(part.step.rho_k);
  part.diagnostics = convergence_diagnostics(rho, part.step);
  c.compact = std::move(part);
  return c;
}

inline std::vector<FamilyCertificate> gen_compact_family(const QuadElem& rho, unsigned kmin, unsigned kmax,
                                                         const CompactOptions& opt = {}) {
  const RhoParameter param = validate_rho(rho);
  if (!param.validated) throw std::invalid_argument("rho = " + to_string(rho) + " fails sigma(rho)^2 > rho > sigma(rho) > 1");
  if (kmin < 1 || kmax < kmin) throw std::invalid_argument("gen_compact_family: need 1 <= kmin <= kmax");
  if (opt.n < kMinCompactDimension) throw std::invalid_argument("gen_compact_family: n must be >= 4");
  std::vector<FamilyCertificate> out;
  for (unsigned k = kmin; k <= kmax; ++k) out.push_back(compact_certificate(param, k, opt));
  return out;
}

/// Partition of certificate positions by trace-ring bound.  All certificates
/// must live in the same ambient group.
inline std::vector<BoundGroup> pigeonhole_groups(const std::vector<FamilyCertificate>& certs) {
  std::vector<TraceRingBound> bounds;
  bounds.reserve(certs.size());
  for (const auto& c : certs) {
    if (c.ambient_group_key != certs.front().ambient_group_key) {
      throw std::invalid_argument("pigeonhole_groups: mixed ambient groups (" + certs.front().ambient_group_key + " vs " +
                                  c.ambient_group_key + ")");
    }
    bounds.push_back(c.trace_ring_bound);
  }
  return group_by_bound(bounds);
}

}  // namespace hypcert
