#include "hypcert/factor.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace hypcert;

namespace {

std::vector<std::uint32_t> spf_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t j = i; j <= n; j += i)
      if (!spf[j]) spf[j] = i;
  }
  return spf;
}

}  // namespace

TEST(FactorTest, SmallValues) {
  EXPECT_TRUE(factorize(1).factors.empty());
  const auto f = factorize(360);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0], (PrimePower{2, 3}));
  EXPECT_EQ(f.factors[1], (PrimePower{3, 2}));
  EXPECT_EQ(f.factors[2], (PrimePower{5, 1}));
  EXPECT_EQ(f.product(), 360);
  EXPECT_THROW(factorize(0), std::domain_error);
  EXPECT_THROW(factorize(-5), std::domain_error);
}

TEST(FactorTest, ExhaustiveUpToOneMillion) {
  constexpr std::uint32_t N = 1000000;
  const auto spf = spf_sieve(N);
  for (std::uint32_t n = 2; n <= N; ++n) {
    std::vector<PrimePower> expected;
    std::uint32_t m = n;
    while (m > 1) {
      const std::uint32_t p = spf[m];
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      expected.push_back({p, e});
    }
    const auto f = factorize(n);
    ASSERT_EQ(f.factors, expected) << n;
  }
}

TEST(FactorTest, SmoothnessUpToOneHundredThousand) {
  constexpr std::uint32_t N = 100000;
  const auto spf = spf_sieve(N);
  std::vector<std::uint32_t> largest(N + 1, 1);
  for (std::uint32_t n = 2; n <= N; ++n) largest[n] = std::max(spf[n], largest[n / spf[n]]);
  for (std::uint32_t t : {2u, 3u, 5u, 8u, 30u, 101u}) {
    for (std::uint32_t n = 1; n <= N; ++n) {
      ASSERT_EQ(is_T_smooth(n, t), largest[n] < t) << n << " T=" << t;
    }
  }
  EXPECT_THROW(is_T_smooth(10, 1), std::domain_error);
}

TEST(FactorTest, LargeInputs) {
  const BigInt p1 = 1000003, p2 = 1000033;
  const auto f = factorize(p1 * p2);  // beyond trial division
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, p1);
  EXPECT_EQ(f.factors[1].prime, p2);

  const BigInt m61 = (BigInt(1) << 61) - 1;
  const auto g = factorize(m61 * 1024);
  ASSERT_EQ(g.factors.size(), 2u);
  EXPECT_EQ(g.factors[1], (PrimePower{m61, 1}));

  const auto h = factorize(pow_int(p1, 7));  // 140 bits, perfect power
  ASSERT_EQ(h.factors.size(), 1u);
  EXPECT_EQ(h.factors[0], (PrimePower{p1, 7}));

  const auto two = factorize(pow_int(BigInt(2), 40) * pow_int(BigInt(3), 30));
  EXPECT_EQ(two.factors.size(), 2u);
  EXPECT_EQ(two.product(), pow_int(BigInt(2), 40) * pow_int(BigInt(3), 30));

  // two primes above 2^30 with a 92-bit product: not certifiable, must fail loudly
  EXPECT_THROW(factorize(m61 * BigInt(2147483647)), factorization_error);
}

TEST(FactorTest, Primality) {
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime((BigInt(1) << 61) - 1));
  EXPECT_FALSE(is_prime(BigInt(3215031751)));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(BigInt("3825123056546413051")));
  EXPECT_TRUE(is_prime(BigInt("18446744073709551557")));  // largest 64-bit prime
}

TEST(FactorTest, SmoothTargetsAndJson) {
  const auto t = smooth_targets(2, 5);
  EXPECT_EQ(t, (std::vector<BigInt>{2, 4, 8, 16, 32}));
  EXPECT_THROW(smooth_targets(4, 3), std::invalid_argument);
  EXPECT_THROW(smooth_targets(2, 0), std::invalid_argument);
  const auto f = factorize(2 * 2 * 3 * 31);
  const nlohmann::json j = f;
  EXPECT_EQ(j.get<Factorization>(), f);
}
