#pragma once

// The per-index certificate record and its JSON form.
//
// A certificate is self-contained: it embeds the form, the family parameter
// (prime p or rho) and every derived quantity, so that verification needs
// nothing but the file.  Integers are decimal strings, rationals "num/den",
// and objects are written with sorted keys, which makes the serialization a
// deterministic function of the record.

#include "hypcert/compact.hpp"
#include "hypcert/distance.hpp"
#include "hypcert/eq1.hpp"
#include "hypcert/factor.hpp"
#include "hypcert/lorentz.hpp"
#include "hypcert/noncompact.hpp"
#include "hypcert/trace_ring.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypcert {

inline constexpr int kSchemaVersion = 1;

enum class FamilyCase { noncompact, compact };

inline std::string to_string(FamilyCase c) { return c == FamilyCase::noncompact ? "noncompact" : "compact"; }

struct NoncompactPart {
  std::optional<BigInt> prime;  // targets are prime^k when set
  Decomposition decomposition;  // decomposition.r is the target f(w)
  Factorization factorization;
  BigInt smoothness_bound;      // T
  bool smooth = false;
};

struct CompactPart {
  QuadElem rho;
  CompactStep step;
  ConvergenceDiagnostics diagnostics;
  std::vector<PrimeIdealFactor> target_ideals;  // factorization of (rho^k)
  bool budget_exhausted = false;             // explicit mode requested, search ran out
  std::optional<std::uint64_t> search_budget;  // recorded only when exhausted
};

struct FamilyCertificate {
  int schema_version = kSchemaVersion;
  FamilyCase family = FamilyCase::noncompact;
  std::string ambient_group_key;
  LorentzForm form = LorentzForm::standard(kMinNoncompactDimension);
  unsigned k = 0;
  std::optional<Vector> w;  // absent for analytic compact steps
  Eq1Report eq1;
  std::optional<QuadElem> cosh_sq;  // present iff eq1 holds
  std::optional<DistanceInterval> distance;
  std::optional<DistanceInterval> systole_upper_bound;
  Rational interval_width = default_interval_width();
  TraceRingBound trace_ring_bound;
  std::optional<NoncompactPart> noncompact;
  std::optional<CompactPart> compact;

  /// f(w) as claimed: r over Q, rho^k over K.
  QuadElem target() const {
    if (noncompact) return QuadElem::rational(Rational(noncompact->decomposition.r));
    return compact->step.rho_k;
  }
};

class schema_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
template <class T>
nlohmann::json optional_json(const std::optional<T>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}
}  // namespace detail

inline nlohmann::json to_json(const FamilyCertificate& c) {
  nlohmann::json j;
  j["schemaVersion"] = c.schema_version;
  j["case"] = to_string(c.family);
  j["ambientGroupKey"] = c.ambient_group_key;
  j["form"] = c.form;
  j["k"] = c.k;
  j["w"] = detail::optional_json(c.w);
  j["eq1"] = c.eq1;
  j["coshSq"] = detail::optional_json(c.cosh_sq);
  j["distance"] = detail::optional_json(c.distance);
  j["systoleUpperBound"] = detail::optional_json(c.systole_upper_bound);
  // the width only describes an interval; without one it would be an unchecked field
  j["intervalWidth"] = c.distance ? nlohmann::json(to_fraction_string(c.interval_width)) : nlohmann::json(nullptr);
  j["traceRingBound"] = c.trace_ring_bound;
  if (c.noncompact) {
    const auto& n = *c.noncompact;
    j["family"] = {{"prime", n.prime ? nlohmann::json(n.prime->str()) : nlohmann::json(nullptr)}};
    j["target"] = {{"r", n.decomposition.r.str()}};
    j["decomposition"] = n.decomposition;
    j["factorization"] = n.factorization;
    j["smoothness"] = {{"T", n.smoothness_bound.str()}, {"smooth", n.smooth}};
  }
  if (c.compact) {
    const auto& m = *c.compact;
    j["family"] = {{"rho", m.rho}};
    j["target"] = {{"rhoPower", m.step.rho_k}};
    j["step"] = m.step;
    j["diagnostics"] = m.diagnostics;
    j["targetIdeals"] = m.target_ideals;
    j["flags"] = {{"threeSquaresBudgetExhausted", m.budget_exhausted}};
    if (m.search_budget) j["flags"]["threeSquaresBudget"] = *m.search_budget;
  }
  return j;
}

inline FamilyCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw schema_error("certificate must be a JSON object");
  const int version = j.at("schemaVersion").get<int>();
  if (version != kSchemaVersion) throw schema_error("unknown schema version " + std::to_string(version));
  FamilyCertificate c;
  c.schema_version = version;
  const auto cs = j.at("case").get<std::string>();
  if (cs == "noncompact") {
    c.family = FamilyCase::noncompact;
  } else if (cs == "compact") {
    c.family = FamilyCase::compact;
  } else {
    throw schema_error("unknown case " + cs);
  }
  c.ambient_group_key = j.at("ambientGroupKey").get<std::string>();
  c.form = form_from_json(j.at("form"));
  c.k = j.at("k").get<unsigned>();
  c.w = detail::optional_from<Vector>(j, "w");
  c.eq1 = j.at("eq1").get<Eq1Report>();
  c.cosh_sq = detail::optional_from<QuadElem>(j, "coshSq");
  c.distance = detail::optional_from<DistanceInterval>(j, "distance");
  c.systole_upper_bound = detail::optional_from<DistanceInterval>(j, "systoleUpperBound");
  if (!j.at("intervalWidth").is_null()) c.interval_width = parse_rational(j.at("intervalWidth").get<std::string>());
  c.trace_ring_bound = j.at("traceRingBound").get<TraceRingBound>();
  if (c.family == FamilyCase::noncompact) {
    NoncompactPart n;
    const auto& p = j.at("family").at("prime");
    if (!p.is_null()) n.prime = parse_bigint(p.get<std::string>());
    n.decomposition = j.at("decomposition").get<Decomposition>();
    if (parse_bigint(j.at("target").at("r").get<std::string>()) != n.decomposition.r) {
      throw schema_error("target.r differs from decomposition.r");
    }
    n.factorization = j.at("factorization").get<Factorization>();
    n.smoothness_bound = parse_bigint(j.at("smoothness").at("T").get<std::string>());
    n.smooth = j.at("smoothness").at("smooth").get<bool>();
    c.noncompact = std::move(n);
  } else {
    CompactPart m;
    m.rho = j.at("family").at("rho").get<QuadElem>();
    m.step = j.at("step").get<CompactStep>();
    if (!(j.at("target").at("rhoPower").get<QuadElem>() == m.step.rho_k)) {
      throw schema_error("target.rhoPower differs from step.rhoPower");
    }
    m.diagnostics = j.at("diagnostics").get<ConvergenceDiagnostics>();
    for (const auto& x : j.at("targetIdeals")) {
      m.target_ideals.push_back({x.get<PrimeIdeal>(), x.at("exponent").get<unsigned>()});
    }
    m.budget_exhausted = j.at("flags").at("threeSquaresBudgetExhausted").get<bool>();
    if (j.at("flags").contains("threeSquaresBudget")) m.search_budget = j.at("flags").at("threeSquaresBudget").get<std::uint64_t>();
    c.compact = std::move(m);
  }
  return c;
}

/// Deterministic text form: sorted keys, two-space indent, trailing newline.
inline std::string dump_certificates(const std::vector<FamilyCertificate>& certs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : certs) arr.push_back(to_json(c));
  return nlohmann::json{{"schemaVersion", kSchemaVersion}, {"certificates", std::move(arr)}}.dump(2) + "\n";
}

/// Accepts the file form {"schemaVersion", "certificates": [...]}, a bare
/// array, or a single certificate object.
inline std::vector<nlohmann::json> certificate_documents(const nlohmann::json& doc) {
  if (doc.is_array()) return {doc.begin(), doc.end()};
  if (doc.is_object() && doc.contains("certificates")) {
    if (doc.at("schemaVersion").get<int>() != kSchemaVersion) throw schema_error("unknown schema version in file");
    const auto& a = doc.at("certificates");
    return {a.begin(), a.end()};
  }
  return {doc};
}

}  // namespace hypcert
