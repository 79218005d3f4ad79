#include "hypcert/three_squares.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hypcert;

namespace {

const Field K = Field::quadratic(5);

QuadElem sum_sq(const Triple& t) { return t[0] * t[0] + t[1] * t[1] + t[2] * t[2]; }

}  // namespace

TEST(ThreeSquaresTest, Two) {
  const auto t = three_squares_decompose(QuadElem::rational(2));
  ASSERT_TRUE(t);
  EXPECT_EQ((*t)[0], QuadElem::rational(1));
  EXPECT_EQ((*t)[1], QuadElem::rational(1));
  EXPECT_EQ((*t)[2], QuadElem::rational(0));
}

TEST(ThreeSquaresTest, ThreePlusSqrt5) {
  const QuadElem eps(K, 3, 1);
  const auto t = three_squares_decompose(eps);
  ASSERT_TRUE(t);
  EXPECT_EQ(sum_sq(*t), eps);
  const QuadElem golden(K, Rational(1, 2), Rational(1, 2));
  int hits = 0;
  for (const auto& g : *t) hits += g == golden;
  EXPECT_EQ(hits, 2);
}

TEST(ThreeSquaresTest, TwentySixPlusTenSqrt5) {
  const QuadElem eps(K, 26, 10);
  const auto t = three_squares_decompose(eps);
  ASSERT_TRUE(t);
  EXPECT_EQ(sum_sq(*t), eps);
  for (const auto& g : *t) EXPECT_TRUE(is_algebraic_integer(g));
}

TEST(ThreeSquaresTest, RationalIntegers) {
  for (long long n = 1; n <= 300; ++n) {
    // Legendre: n is a sum of three squares iff n != 4^a (8b + 7)
    long long m = n;
    while (m % 4 == 0) m /= 4;
    const bool representable = m % 8 != 7;
    if (representable) {
      const auto t = three_squares_decompose(QuadElem::rational(n));
      ASSERT_TRUE(t) << n;
      EXPECT_EQ(sum_sq(*t), QuadElem::rational(n));
    } else {
      EXPECT_THROW(three_squares_decompose(QuadElem::rational(n)), std::domain_error) << n;
    }
  }
}

TEST(ThreeSquaresTest, RejectsBadInput) {
  EXPECT_THROW(three_squares_decompose(QuadElem(K, 2, 1)), std::invalid_argument);  // conjugate negative
  EXPECT_THROW(three_squares_decompose(QuadElem(K, Rational(1, 2), 0)), std::invalid_argument);
  EXPECT_THROW(three_squares_decompose(QuadElem::rational(-1)), std::invalid_argument);
}

TEST(ThreeSquaresTest, BudgetExhaustionIsNotFailure) {
  std::uint64_t tested = 0;
  const auto t = three_squares_decompose(QuadElem(K, 35, 10), 0, &tested);
  EXPECT_FALSE(t);
}

TEST(ThreeSquaresTest, OtherFields) {
  const Field Q2 = Field::quadratic(2);
  const QuadElem eps(Q2, 5, 2);  // 3+2sqrt2 + 2 = (1+sqrt2)^2 + 1 + 1
  const auto t = three_squares_decompose(eps);
  ASSERT_TRUE(t);
  EXPECT_EQ(sum_sq(*t), eps);
}

// 100 random totally positive eps in O_K with both embeddings <= 500.
TEST(ThreeSquaresProperty, RandomTotallyPositive) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pd(1, 1000), qd(-447, 447);
  const QuadElem cap(K, 500, 0);
  int done = 0;
  while (done < 100) {
    const int p = pd(rng), q = qd(rng);
    if ((p - q) % 2 != 0) continue;
    const QuadElem eps(K, Rational(p, 2), Rational(q, 2));
    if (!is_totally_positive(eps)) continue;
    if (compare(eps, cap) > 0 || compare(eps, cap, Embedding::conjugate) > 0) continue;
    const auto t = three_squares_decompose(eps);
    ASSERT_TRUE(t) << to_string(eps);
    ASSERT_EQ(sum_sq(*t), eps);
    for (const auto& g : *t) ASSERT_TRUE(is_algebraic_integer(g));
    ++done;
  }
}
