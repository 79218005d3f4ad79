#pragma once

// Integer factorization and smoothness.
//
// Trial division by the primes below 10^6, then perfect-power extraction and
// Pollard rho (Brent's cycle detection) on the cofactor.  Every prime factor
// above the trial bound must be certified by deterministic Miller-Rabin, which
// limits those factors to 64 bits; anything larger fails loudly.

#include "hypcert/bigint.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypcert {

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  BigInt value = 1;
  std::vector<PrimePower> factors;  // sorted by prime

  BigInt product() const {
    BigInt acc = 1;
    for (const auto& f : factors) acc *= pow_int(f.prime, f.exponent);
    return acc;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

class factorization_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kTrialDivisionBound = 1000000;

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialDivisionBound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialDivisionBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialDivisionBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

inline bool fits_u64(const BigInt& n) { return n >= 0 && n <= BigInt(std::numeric_limits<std::uint64_t>::max()); }

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all
/// n < 3.3 * 10^24, in particular for every 64-bit n.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Certified primality; throws for n beyond 64 bits.
inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (!detail::fits_u64(n)) throw factorization_error("primality of " + n.str() + " is beyond 64-bit certification");
  return is_prime_u64(static_cast<std::uint64_t>(n));
}

namespace detail {

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

/// A nontrivial factor of the odd composite n (Brent's variant, with the
/// polynomial constant taken from a fixed schedule 1, 2, 3, ...).
inline std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_u64(std::uint64_t n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[BigInt(n)];
    return;
  }
  const std::uint64_t g = pollard_brent(n);
  factor_u64(g, out);
  factor_u64(n / g, out);
}

/// n = root^k with k maximal, for n >= 2.
inline std::pair<BigInt, unsigned> perfect_power(const BigInt& n) {
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  for (unsigned k = bits; k >= 2; --k) {
    // integer k-th root by bisection on [1, 2^(bits/k + 1)]
    BigInt lo = 1, hi = BigInt(1) << (bits / k + 1);
    while (lo < hi) {
      BigInt mid = (lo + hi + 1) >> 1;
      if (pow_int(mid, k) <= n) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    if (lo > 1 && pow_int(lo, k) == n) return {lo, k};
  }
  return {n, 1};
}

inline void factor_large(const BigInt& n, unsigned mult, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    std::map<BigInt, unsigned> sub;
    factor_u64(static_cast<std::uint64_t>(n), sub);
    for (auto& [p, e] : sub) out[p] += e * mult;
    return;
  }
  auto [root, k] = perfect_power(n);
  if (k > 1) {
    factor_large(root, mult * k, out);
    return;
  }
  throw factorization_error("cofactor " + n.str() + " exceeds 64 bits and is not a perfect power; cannot certify its factors");
}

}  // namespace detail

/// Complete factorization of N >= 1, primes ascending.
inline Factorization factorize(const BigInt& n) {
  if (n < 1) throw std::domain_error("factorize: N must be >= 1, got " + n.str());
  std::map<BigInt, unsigned> found;
  BigInt m = n;
  for (std::uint32_t p : detail::small_primes()) {
    if (BigInt(p) * p > m) break;
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    found[BigInt(p)] = e;
  }
  if (m > 1) {
    const BigInt bound = BigInt(kTrialDivisionBound);
    if (m <= bound * bound) {
      ++found[m];  // no prime factor <= sqrt(m) remains
    } else {
      detail::factor_large(m, 1, found);
    }
  }
  Factorization f;
  f.value = n;
  for (auto& [p, e] : found) f.factors.push_back({p, e});
  return f;
}

/// All prime factors strictly less than T.
inline bool is_T_smooth(const BigInt& n, const BigInt& t) {
  if (t <= 1) throw std::domain_error("is_T_smooth: T must be > 1");
  const Factorization f = factorize(n);
  return std::all_of(f.factors.begin(), f.factors.end(), [&](const PrimePower& pp) { return pp.prime < t; });
}

/// [p, p^2, ..., p^kmax]
inline std::vector<BigInt> smooth_targets(const BigInt& p, unsigned kmax) {
  if (!is_prime(p)) throw std::invalid_argument("smooth_targets: " + p.str() + " is not prime");
  if (kmax < 1) throw std::invalid_argument("smooth_targets: kmax must be >= 1");
  std::vector<BigInt> out;
  BigInt acc = 1;
  for (unsigned k = 1; k <= kmax; ++k) {
    acc *= p;
    out.push_back(acc);
  }
  return out;
}

inline void to_json(nlohmann::json& j, const Factorization& f) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& pp : f.factors) factors.push_back({{"p", pp.prime.str()}, {"e", pp.exponent}});
  j = nlohmann::json{{"value", f.value.str()}, {"factors", std::move(factors)}};
}

inline void from_json(const nlohmann::json& j, Factorization& f) {
  f.value = parse_bigint(j.at("value").get<std::string>());
  f.factors.clear();
  for (const auto& x : j.at("factors")) f.factors.push_back({parse_bigint(x.at("p").get<std::string>()), x.at("e").get<unsigned>()});
}

}  // namespace hypcert
