#pragma once

// Sums of three squares in O_K.
//
// Elements are handled as 2*gamma = p + q sqrt(d) with integers p, q, subject
// to the lattice condition of O_K (p = q mod 2 when d = 1 mod 4, both even
// otherwise; q = 0 over Q).  Squares are totally nonnegative, so each
// embedding of gamma is bounded by the square root of that embedding of eps.
// Candidates are enumerated up to sign, sorted by decreasing identity
// embedding, and searched as gamma_1 >= gamma_2 with the third square solved
// exactly from the remainder.

#include "hypcert/quadratic_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hypcert {

using Triple = std::array<QuadElem, 3>;

inline constexpr std::uint64_t kDefaultThreeSquaresBudget = 50'000'000;

namespace detail {

/// 2*gamma = p + q sqrt d
struct LatticePoint {
  BigInt p;
  BigInt q;
  BigInt sq0;  // 4*gamma^2 = sq0 + sq1 sqrt d
  BigInt sq1;
};

/// Sign of x + y sqrt(d) (identity) or x - y sqrt(d) (conjugate), integers.
inline int sign_pair(const BigInt& x, const BigInt& y, std::int64_t d, bool conjugate) {
  const int sa = x.sign();
  const int sb = conjugate ? -y.sign() : y.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const int sd = BigInt(x * x - d * y * y).sign();
  return sd > 0 ? sa : (sd < 0 ? sb : 0);
}

inline bool totally_nonneg_pair(const BigInt& x, const BigInt& y, std::int64_t d) {
  return sign_pair(x, y, d, false) >= 0 && sign_pair(x, y, d, true) >= 0;
}

inline bool in_ring(Field f, const BigInt& p, const BigInt& q) {
  if (f.is_rational()) return q == 0 && p % 2 == 0;
  if (f.half_integral_ring()) return (p - q) % 2 == 0;
  return p % 2 == 0 && q % 2 == 0;
}

/// gamma in O_K with 4 gamma^2 = x + y sqrt d, if any.  From
/// p^2 + d q^2 = x and 2pq = y, the numbers p^2 and d q^2 are the roots of
/// z^2 - x z + d y^2 / 4, whose discriminant x^2 - d y^2 must be a square.
inline std::optional<LatticePoint> square_root(Field f, const BigInt& x, const BigInt& y) {
  if (x < 0) return std::nullopt;
  if (f.is_rational()) {
    BigInt p;
    if (y != 0 || !is_perfect_square(x, &p) || !in_ring(f, p, 0)) return std::nullopt;
    return LatticePoint{p, 0, x, 0};
  }
  const std::int64_t d = f.d();
  BigInt s;
  if (!is_perfect_square(x * x - d * y * y, &s)) return std::nullopt;
  for (int choice = 0; choice < 2; ++choice) {
    const BigInt twice_p2 = choice == 0 ? BigInt(x + s) : BigInt(x - s);
    if (twice_p2 < 0 || twice_p2 % 2 != 0) continue;
    const BigInt p2 = twice_p2 / 2;
    const BigInt dq2 = x - p2;
    if (dq2 < 0 || dq2 % d != 0) continue;
    BigInt p, q;
    if (!is_perfect_square(p2, &p) || !is_perfect_square(dq2 / d, &q)) continue;
    if (p == 0) {
      if (y != 0) continue;
    } else if (y < 0) {
      q = -q;  // 2pq = y with p > 0
    }
    if (2 * p * q != y) continue;
    if (!in_ring(f, p, q)) continue;
    return LatticePoint{p, q, x, y};
  }
  return std::nullopt;
}

inline QuadElem to_elem(Field f, const LatticePoint& g) { return QuadElem(f, Rational(g.p, 2), Rational(g.q, 2)); }

/// Lattice points gamma != -gamma' canonical (identity embedding > 0, or
/// gamma = 0) with eps - gamma^2 totally nonnegative; sorted by decreasing
/// identity embedding.
inline std::vector<LatticePoint> square_candidates(Field f, const BigInt& e0, const BigInt& e1) {
  const std::int64_t d = f.d();
  const long double rd = std::sqrt(static_cast<long double>(d));
  // 4 eps = e0 + e1 sqrt d; bounds on 2*gamma at each embedding
  const long double id = e0.convert_to<long double>() + e1.convert_to<long double>() * rd;
  const long double cj = e0.convert_to<long double>() - e1.convert_to<long double>() * rd;
  const long double s = std::sqrt(std::max<long double>(id, 0));  // |iota(2 gamma)| <= s
  const long double t = std::sqrt(std::max<long double>(cj, 0));  // |sigma(2 gamma)| <= t
  if (!std::isfinite(s) || !std::isfinite(t) || s > 1e12L || t > 1e12L) {
    throw std::length_error("three_squares: search box too large");
  }
  std::vector<LatticePoint> out;
  auto consider = [&](long long pi, long long qi) {
    const BigInt p(pi), q(qi);
    if (!in_ring(f, p, q)) return;
    if (!(p == 0 && q == 0) && sign_pair(p, q, d, false) <= 0) return;
    const BigInt sq0 = p * p + d * q * q;
    const BigInt sq1 = f.is_rational() ? BigInt(0) : BigInt(2 * p * q);
    if (!totally_nonneg_pair(e0 - sq0, e1 - sq1, d)) return;
    out.push_back({p, q, sq0, sq1});
  };
  if (f.is_rational()) {
    for (long long p = 0; p <= static_cast<long long>(s) + 1; ++p) consider(p, 0);
  } else {
    // iota = p + q rd in [0, s], sigma = p - q rd in [-t, t]
    const long long qlo = static_cast<long long>(std::floor(-t / rd)) - 1;
    const long long qhi = static_cast<long long>(std::ceil((s + t) / rd)) + 1;
    for (long long q = qlo; q <= qhi; ++q) {
      const long double qr = q * rd;
      const long double plo = std::max(-qr, qr - t);
      const long double phi = std::min(s - qr, qr + t);
      if (plo > phi + 2) continue;
      for (long long p = static_cast<long long>(std::floor(plo)) - 1; p <= static_cast<long long>(std::ceil(phi)) + 1; ++p) {
        consider(p, q);
      }
    }
  }
  std::sort(out.begin(), out.end(), [d](const LatticePoint& x, const LatticePoint& y) {
    return sign_pair(x.p - y.p, x.q - y.q, d, false) > 0;
  });
  return out;
}

}  // namespace detail

/// gamma_1, gamma_2, gamma_3 in O_K with gamma_1^2 + gamma_2^2 + gamma_3^2 = eps,
/// or nullopt once `budget` (gamma_1, gamma_2) pairs have been tested.  A
/// nullopt is budget exhaustion, never a proof of nonexistence.
inline std::optional<Triple> three_squares_decompose(const QuadElem& eps, std::uint64_t budget = kDefaultThreeSquaresBudget,
                                                     std::uint64_t* tested_out = nullptr) {
  if (!is_algebraic_integer(eps)) throw std::invalid_argument("three_squares: " + to_string(eps) + " is not in O_K");
  if (!is_totally_nonnegative(eps)) throw std::invalid_argument("three_squares: " + to_string(eps) + " is not totally positive");
  const Field f = eps.field();
  const std::int64_t d = f.d();
  const BigInt e0 = numerator_of(4 * eps.a());
  const BigInt e1 = numerator_of(4 * eps.b());

  const auto cands = detail::square_candidates(f, e0, e1);
  std::uint64_t tested = 0;
  std::optional<Triple> found;
  for (std::size_t i = 0; i < cands.size() && !found; ++i) {
    const BigInt r0 = e0 - cands[i].sq0;
    const BigInt r1 = e1 - cands[i].sq1;
    for (std::size_t j = i; j < cands.size(); ++j) {
      const BigInt x = r0 - cands[j].sq0;
      const BigInt y = r1 - cands[j].sq1;
      if (!detail::totally_nonneg_pair(x, y, d)) continue;
      if (++tested > budget) {
        if (tested_out) *tested_out = tested - 1;
        return std::nullopt;
      }
      if (auto g3 = detail::square_root(f, x, y)) {
        found = Triple{detail::to_elem(f, cands[i]), detail::to_elem(f, cands[j]), detail::to_elem(f, *g3)};
        break;
      }
    }
  }
  if (tested_out) *tested_out = tested;
  if (!found) throw std::domain_error(to_string(eps) + " is not a sum of three squares in O_K (search space exhausted)");
  return found;
}

}  // namespace hypcert
