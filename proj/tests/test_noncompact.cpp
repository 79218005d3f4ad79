#include "hypcert/families.hpp"

#include <gtest/gtest.h>

using namespace hypcert;

namespace {

/// Smallest b admitting 0 <= c <= 2b with r = b^2 - 2c - 1, by search.
Decomposition brute_decompose(long long r) {
  for (long long b = 1;; ++b) {
    const long long rest = b * b - r - 1;
    if (rest < 0 || rest % 2 != 0) continue;
    const long long c = rest / 2;
    if (c <= 2 * b) return {r, b, c};
  }
}

}  // namespace

TEST(DecomposeTest, Examples) {
  EXPECT_EQ(decompose(31), (Decomposition{31, 6, 2}));
  EXPECT_EQ(decompose(1), (Decomposition{1, 2, 1}));
  EXPECT_EQ(decompose(2), (Decomposition{2, 3, 3}));
  EXPECT_EQ(decompose(32), (Decomposition{32, 7, 8}));
  EXPECT_THROW(decompose(0), std::domain_error);
  EXPECT_THROW(decompose(-3), std::domain_error);
  const BigInt huge = pow_int(BigInt(2), 200) + 7;
  EXPECT_TRUE(decompose(huge).valid());
}

TEST(DecomposeTest, TotalAgainstBruteForce) {
  for (long long r = 1; r <= 100000; ++r) {
    const auto d = decompose(r);
    ASSERT_TRUE(d.valid()) << r;
    ASSERT_EQ(d, brute_decompose(r)) << r;
  }
}

TEST(NoncompactTest, VectorAndEq1) {
  const auto dec = decompose(31);
  const NormalVector w = build_w_noncompact(dec, 3);
  EXPECT_EQ(w.components(), (Vector{QuadElem::rational(3), QuadElem::rational(6), QuadElem::rational(2), QuadElem::rational(0)}));
  const auto e = check_eq1(w);
  EXPECT_TRUE(e.holds());
  EXPECT_EQ(e.ratio, QuadElem::rational(Rational(36, 31)));
  EXPECT_EQ(e.ratio_minus_one_sign, 1);
  const NormalVector w5 = build_w_noncompact(dec, 5);
  EXPECT_EQ(w5.components().size(), 6u);
  EXPECT_THROW(build_w_noncompact(dec, 2), std::invalid_argument);
}

TEST(NoncompactTest, FamilyP2) {
  const auto certs = gen_noncompact_family(2, 40);
  ASSERT_EQ(certs.size(), 40u);
  for (const auto& c : certs) {
    const BigInt r = pow_int(BigInt(2), c.k);
    EXPECT_EQ(c.target(), QuadElem::rational(Rational(r)));
    EXPECT_EQ(form_eval(c.form, *c.w), QuadElem::rational(Rational(r)));
    EXPECT_TRUE(c.eq1.holds()) << c.k;
    // ratio - 1 <= (4 ceil(sqrt(r+1)) + 6) / r
    BigInt s = isqrt(r + 1);
    if (s * s < r + 1) ++s;
    EXPECT_LE(c.eq1.ratio.a() - 1, Rational(4 * s + 6, r)) << c.k;
    EXPECT_EQ(c.trace_ring_bound.label(), "Z[1/2]");
    EXPECT_TRUE(c.noncompact->smooth);
    EXPECT_EQ(c.noncompact->smoothness_bound, 3);
    EXPECT_EQ(*c.systole_upper_bound, doubled(*c.distance));
  }
  EXPECT_EQ(certs[0].eq1.ratio, QuadElem::rational(Rational(9, 2)));
  EXPECT_EQ(certs[1].eq1.ratio, QuadElem::rational(Rational(9, 4)));
  EXPECT_EQ(certs[2].eq1.ratio, QuadElem::rational(Rational(9, 8)));
  const auto groups = pigeonhole_groups(certs);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].indices.size(), 40u);
}

TEST(NoncompactTest, RatioTendsToOne) {
  const auto certs = gen_noncompact_family(3, 30, 3, Rational(1, 1000));
  EXPECT_LT(certs.back().eq1.ratio.a() - 1, Rational(1, 10000));
  EXPECT_EQ(certs.back().trace_ring_bound.label(), "Z[1/3]");
  EXPECT_EQ(certs.back().noncompact->smoothness_bound, 4);
}

TEST(NoncompactTest, TargetsGate) {
  const auto certs = gen_noncompact_from_targets({30, 31, 64}, 32);
  ASSERT_EQ(certs.size(), 3u);
  EXPECT_EQ(certs[0].trace_ring_bound.label(), "Z[1/30]");
  EXPECT_EQ(certs[1].noncompact->decomposition, (Decomposition{31, 6, 2}));
  EXPECT_THROW(gen_noncompact_from_targets({37}, 32), std::invalid_argument);
  EXPECT_THROW(gen_noncompact_from_targets({}, 32), std::invalid_argument);
  EXPECT_THROW(gen_noncompact_family(2, 0), std::invalid_argument);
  EXPECT_THROW(gen_noncompact_family(4, 3), std::invalid_argument);
}
