#pragma once

// Upper bounds for trace rings: localizations Z[1/N] and O_K[1/rho], kept as
// the set of inverted primes (prime ideals over K).  Only the radical matters,
// so exponents are dropped once a bound is formed.

#include "hypcert/factor.hpp"
#include "hypcert/quadratic_field.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypcert {

enum class IdealKind { rational, split, inert, ramified };

inline std::string to_string(IdealKind k) {
  switch (k) {
    case IdealKind::rational: return "rational";
    case IdealKind::split: return "split";
    case IdealKind::inert: return "inert";
    case IdealKind::ramified: return "ramified";
  }
  return "?";
}

inline IdealKind ideal_kind_from_string(const std::string& s) {
  if (s == "rational") return IdealKind::rational;
  if (s == "split") return IdealKind::split;
  if (s == "inert") return IdealKind::inert;
  if (s == "ramified") return IdealKind::ramified;
  throw std::invalid_argument("unknown prime kind " + s);
}

/// A prime of Z (kind == rational) or a prime ideal of O_K above p.
///
/// For a split odd p the branch is the residue r with r^2 = d (mod p) such
/// that the ideal is the kernel of a + b sqrt(d) -> a + b r (mod p).  For a
/// split p = 2 (d = 1 mod 8) the branch is the image of (1 + sqrt d)/2 in F_2.
struct PrimeIdeal {
  std::uint64_t p = 0;
  IdealKind kind = IdealKind::rational;
  std::optional<std::uint64_t> branch;

  /// Absolute norm: p^2 for inert primes, p otherwise.
  BigInt norm() const { return kind == IdealKind::inert ? BigInt(p) * p : BigInt(p); }

  friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
  friend bool operator<(const PrimeIdeal& x, const PrimeIdeal& y) {
    if (x.p != y.p) return x.p < y.p;
    return x.branch.value_or(0) < y.branch.value_or(0);
  }
};

struct PrimeIdealFactor {
  PrimeIdeal ideal;
  unsigned exponent = 0;

  friend bool operator==(const PrimeIdealFactor&, const PrimeIdealFactor&) = default;
};

namespace detail {

inline std::uint64_t mod_of(const BigInt& x, std::uint64_t p) {
  BigInt r = x % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

/// r with r^2 = a (mod p), p an odd prime and a a nonzero square (Tonelli-Shanks).
inline std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline std::uint64_t rational_mod(const Rational& x, std::uint64_t p) {
  const std::uint64_t num = mod_of(numerator_of(x), p);
  const std::uint64_t den = mod_of(denominator_of(x), p);
  if (den == 0) throw std::domain_error("denominator divisible by p");
  return mulmod(num, inverse_mod(den, p), p);
}

/// Image of x in O_K / P for the split prime P = (p, branch).
inline std::uint64_t reduce_at(const QuadElem& x, std::uint64_t p, std::uint64_t branch) {
  if (p == 2) {
    // x = A + B w with w = (1 + sqrt d)/2, B = 2b, A = a - b
    const BigInt big_b = numerator_of(2 * x.b());
    const BigInt big_a = numerator_of(x.a() - x.b());
    return (mod_of(big_a, 2) + mod_of(big_b, 2) * branch) % 2;
  }
  return (rational_mod(x.a(), p) + mulmod(rational_mod(x.b(), p), branch, p)) % p;
}

}  // namespace detail

/// Splitting type of p in O_K, p prime: the Kronecker symbol (disc | p).
inline IdealKind splitting_kind(Field f, std::uint64_t p) {
  const std::int64_t d = f.d();
  if (p == 2) {
    if (d % 4 != 1) return IdealKind::ramified;
    return d % 8 == 1 ? IdealKind::split : IdealKind::inert;
  }
  const std::uint64_t dm = detail::mod_of(BigInt(d), p);
  if (dm == 0) return IdealKind::ramified;
  return detail::powmod(dm, (p - 1) / 2, p) == 1 ? IdealKind::split : IdealKind::inert;
}

/// Prime-ideal factorization of the principal ideal (rho), rho in O_K nonzero.
///
/// |N(rho)| is factored over Z.  Above an inert p the exponent is v_p(N)/2,
/// above a ramified p it is v_p(N).  Above a split p with t = v_p(rho) in O_K
/// and e = v_p(N), the cofactor rho / p^t lies in at most one of the two
/// primes, which then carries the remaining e - 2t.
inline std::vector<PrimeIdealFactor> factor_principal_ideal(const QuadElem& rho) {
  if (rho.field().is_rational()) throw std::invalid_argument("factor_principal_ideal needs a quadratic field");
  if (!is_algebraic_integer(rho)) throw std::invalid_argument("factor_principal_ideal: " + to_string(rho) + " is not integral");
  if (rho.is_zero()) throw std::invalid_argument("factor_principal_ideal: zero element");
  const Field f = rho.field();
  const Rational nr = rho.norm();
  const BigInt n = numerator_of(nr < 0 ? Rational(-nr) : nr);
  const Factorization fac = factorize(n);

  std::vector<PrimeIdealFactor> out;
  for (const auto& pp : fac.factors) {
    if (!detail::fits_u64(pp.prime)) throw factorization_error("prime above 64 bits in N(rho)");
    const auto p = static_cast<std::uint64_t>(pp.prime);
    const IdealKind kind = splitting_kind(f, p);
    if (kind == IdealKind::inert) {
      out.push_back({{p, kind, std::nullopt}, pp.exponent / 2});
      continue;
    }
    if (kind == IdealKind::ramified) {
      out.push_back({{p, kind, std::nullopt}, pp.exponent});
      continue;
    }
    unsigned t = 0;
    QuadElem cof = rho;
    const Rational inv_p(1, BigInt(p));
    while (is_algebraic_integer(cof * inv_p)) {
      cof *= inv_p;
      ++t;
    }
    const unsigned rest = pp.exponent - 2 * t;
    std::uint64_t r1, r2;
    if (p == 2) {
      r1 = 0;
      r2 = 1;
    } else {
      const std::uint64_t r = detail::sqrt_mod(detail::mod_of(BigInt(f.d()), p), p);
      r1 = std::min(r, p - r);
      r2 = std::max(r, p - r);
    }
    unsigned e1 = t, e2 = t;
    if (rest > 0) {
      if (detail::reduce_at(cof, p, r1) == 0) {
        e1 += rest;
      } else {
        e2 += rest;
      }
    }
    if (e1 > 0) out.push_back({{p, kind, r1}, e1});
    if (e2 > 0) out.push_back({{p, kind, r2}, e2});
  }
  return out;
}

/// A localization of Z or O_K given by its inverted primes.
class TraceRingBound {
 public:
  TraceRingBound() = default;
  TraceRingBound(Field field, std::vector<PrimeIdeal> primes) : field_(field), primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  }

  Field field() const { return field_; }
  const std::vector<PrimeIdeal>& inverted() const { return primes_; }

  /// "Z[1/30]", "Z", "O_K[1/(31,sqrt5-25)]", "O_K[1/(2)(5,sqrt5)]".
  std::string label() const;

  friend bool operator==(const TraceRingBound&, const TraceRingBound&) = default;
  friend bool operator<(const TraceRingBound& x, const TraceRingBound& y) {
    if (x.field_ != y.field_) return x.field_ < y.field_;
    return std::lexicographical_compare(x.primes_.begin(), x.primes_.end(), y.primes_.begin(), y.primes_.end());
  }

 private:
  Field field_;
  std::vector<PrimeIdeal> primes_;
};

namespace detail {
inline std::string ideal_label(Field f, const PrimeIdeal& q) {
  const std::string p = std::to_string(q.p);
  const std::string rad = "sqrt" + std::to_string(f.d());
  switch (q.kind) {
    case IdealKind::rational:
    case IdealKind::inert: return "(" + p + ")";
    case IdealKind::ramified:
      if (q.p == 2 && f.d() % 4 == 3) return "(2,1+" + rad + ")";
      return "(" + p + "," + rad + ")";
    case IdealKind::split:
      if (q.p == 2) return "(2,(1+" + rad + ")/2-" + std::to_string(*q.branch) + ")";
      return "(" + p + "," + rad + "-" + std::to_string(*q.branch) + ")";
  }
  return "?";
}
}  // namespace detail

inline std::string TraceRingBound::label() const {
  if (field_.is_rational()) {
    if (primes_.empty()) return "Z";
    BigInt rad = 1;
    for (const auto& q : primes_) rad *= q.p;
    return "Z[1/" + rad.str() + "]";
  }
  if (primes_.empty()) return "O_K";
  std::string s = "O_K[1/";
  for (const auto& q : primes_) s += detail::ideal_label(field_, q);
  return s + "]";
}

/// Z[1/fw] = Z[1/p_1, ..., 1/p_r]
inline TraceRingBound trace_ring_bound_rational(const BigInt& fw) {
  const Factorization fac = factorize(fw);
  std::vector<PrimeIdeal> primes;
  for (const auto& pp : fac.factors) {
    if (!detail::fits_u64(pp.prime)) throw factorization_error("prime above 64 bits");
    primes.push_back({static_cast<std::uint64_t>(pp.prime), IdealKind::rational, std::nullopt});
  }
  return {Field::rational(), std::move(primes)};
}

/// O_K[1/rho]: invert every prime ideal dividing (rho).
inline TraceRingBound trace_ring_bound_quadratic(const QuadElem& rho) {
  std::vector<PrimeIdeal> primes;
  for (const auto& f : factor_principal_ideal(rho)) primes.push_back(f.ideal);
  return {rho.field(), std::move(primes)};
}

inline constexpr std::size_t kMaxLatticePrimes = 20;

/// Every localization between the base ring and `bound`, one per subset of the
/// inverted primes, in increasing subset-bitmask order.
inline std::vector<TraceRingBound> subring_lattice(const TraceRingBound& bound) {
  const auto& ps = bound.inverted();
  if (ps.size() > kMaxLatticePrimes) throw std::length_error("subring_lattice: too many inverted primes");
  std::vector<TraceRingBound> out;
  const std::uint64_t total = std::uint64_t(1) << ps.size();
  out.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<PrimeIdeal> sub;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (mask >> i & 1U) sub.push_back(ps[i]);
    }
    out.emplace_back(bound.field(), std::move(sub));
  }
  return out;
}

struct BoundGroup {
  TraceRingBound bound;
  std::vector<std::size_t> indices;
};

/// Partition of positions 0..n-1 by equal bound, classes ordered by bound.
inline std::vector<BoundGroup> group_by_bound(const std::vector<TraceRingBound>& bounds) {
  std::vector<BoundGroup> groups;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    auto it = std::lower_bound(groups.begin(), groups.end(), bounds[i],
                               [](const BoundGroup& g, const TraceRingBound& b) { return g.bound < b; });
    if (it == groups.end() || !(it->bound == bounds[i])) it = groups.insert(it, BoundGroup{bounds[i], {}});
    it->indices.push_back(i);
  }
  return groups;
}

inline void to_json(nlohmann::json& j, const PrimeIdeal& q) {
  j = nlohmann::json{{"p", q.p}, {"kind", to_string(q.kind)}, {"branch", nullptr}};
  if (q.branch) j["branch"] = *q.branch;
}

inline void from_json(const nlohmann::json& j, PrimeIdeal& q) {
  q.p = j.at("p").get<std::uint64_t>();
  q.kind = ideal_kind_from_string(j.at("kind").get<std::string>());
  q.branch.reset();
  if (!j.at("branch").is_null()) q.branch = j.at("branch").get<std::uint64_t>();
}

inline void to_json(nlohmann::json& j, const TraceRingBound& b) {
  j = nlohmann::json{{"field", field_to_json(b.field())}, {"inverted", b.inverted()}};
}

inline void from_json(const nlohmann::json& j, TraceRingBound& b) {
  b = TraceRingBound(field_from_json(j.at("field")), j.at("inverted").get<std::vector<PrimeIdeal>>());
}

inline void to_json(nlohmann::json& j, const PrimeIdealFactor& f) {
  j = f.ideal;
  j["exponent"] = f.exponent;
}

}  // namespace hypcert
