#include "hypcert/quadratic_field.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hypcert;

namespace {

const Field K = Field::quadratic(5);

QuadElem k(long long a, long long b) { return QuadElem(K, a, b); }

}  // namespace

TEST(BigIntTest, IsqrtFloorsExactly) {
  for (long long n = 0; n < 20000; ++n) {
    const BigInt r = isqrt(BigInt(n));
    EXPECT_LE(r * r, n);
    EXPECT_GT((r + 1) * (r + 1), n);
  }
  const BigInt big = pow_int(BigInt(10), 400) + 12345;
  const BigInt r = isqrt(big);
  EXPECT_LE(r * r, big);
  EXPECT_GT((r + 1) * (r + 1), big);
  EXPECT_EQ(isqrt(pow_int(BigInt(7), 300) * pow_int(BigInt(7), 300)), pow_int(BigInt(7), 300));
  EXPECT_THROW(isqrt(BigInt(-1)), std::domain_error);
}

TEST(BigIntTest, FloorCeilDivision) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(floor_of(Rational(-1, 3)), -1);
  EXPECT_EQ(ceil_of(Rational(-1, 3)), 0);
}

TEST(BigIntTest, ParseAndPrintRationals) {
  EXPECT_EQ(parse_rational("1/1000000"), Rational(1, 1000000));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("42"), Rational(42));
  EXPECT_EQ(to_fraction_string(Rational(5)), "5/1");
  EXPECT_EQ(to_short_string(Rational(-3, 2)), "-3/2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_bigint(""), std::invalid_argument);
  EXPECT_EQ(parse_bigint("010"), 10);  // decimal, not octal
  EXPECT_EQ(parse_bigint("-007"), -7);
  EXPECT_EQ(parse_rational("1/-2"), Rational(-1, 2));
  EXPECT_THROW(parse_bigint("0x10"), std::invalid_argument);
}

TEST(BigIntTest, DecimalRenderingTruncatesDown) {
  EXPECT_EQ(to_decimal(Rational(2, 3), 4), "0.6666");
  EXPECT_EQ(to_decimal(Rational(-2, 3), 4), "-0.6667");
  EXPECT_EQ(to_decimal(Rational(5), 2), "5.00");
}

TEST(FieldTest, RejectsNonSquarefree) {
  EXPECT_THROW(Field::quadratic(4), std::invalid_argument);
  EXPECT_THROW(Field::quadratic(12), std::invalid_argument);
  EXPECT_NO_THROW(Field::quadratic(2));
  EXPECT_TRUE(K.half_integral_ring());
  EXPECT_FALSE(Field::quadratic(2).half_integral_ring());
}

TEST(QuadElemTest, ArithmeticAndConjugate) {
  const QuadElem rho = k(6, 1);
  EXPECT_EQ(rho * rho, k(41, 12));
  EXPECT_EQ(rho.conjugate(), k(6, -1));
  EXPECT_EQ(rho.norm(), Rational(31));
  EXPECT_EQ(rho / rho, k(1, 0));
  EXPECT_EQ(pow(rho, 3), k(306, 113));
  EXPECT_THROW(rho / k(0, 0), std::domain_error);
  EXPECT_THROW(rho + QuadElem(Field::quadratic(2), 1, 1), std::invalid_argument);
}

TEST(QuadElemTest, Signs) {
  EXPECT_EQ(sign(k(-2, 1)), 1);   // sqrt5 > 2
  EXPECT_EQ(sign(k(-3, 1)), -1);  // sqrt5 < 3
  EXPECT_EQ(sign(k(2, 1), Embedding::conjugate), -1);
  EXPECT_TRUE(is_totally_positive(k(26, 10)));
  EXPECT_FALSE(is_totally_positive(k(2, 1)));
  EXPECT_EQ(compare(k(4, 2) * k(4, 2), k(41, 12)), 1);  // beta^2 > rho^2 at k = 2
}

TEST(QuadElemTest, FloorAndSqrtAtIdentity) {
  EXPECT_EQ(floor_at_identity(k(0, 1)), 2);
  EXPECT_EQ(floor_at_identity(k(0, -1)), -3);
  EXPECT_EQ(floor_at_identity(QuadElem(K, Rational(1, 2), Rational(1, 2))), 1);  // golden ratio
  EXPECT_EQ(ceil_at_identity(k(0, 1)), 3);
  EXPECT_EQ(sqrt_ceil_at_identity(k(9, 0)), 3);
  EXPECT_EQ(sqrt_ceil_at_identity(k(0, 2)), 3);  // 2 sqrt5 ~ 4.47
  EXPECT_EQ(sqrt_floor_at_identity(k(0, 2)), 2);
}

TEST(QuadElemTest, Integrality) {
  EXPECT_EQ(classify_integrality(k(3, 0)), IntegralityClass::Z);
  EXPECT_EQ(classify_integrality(k(3, 1)), IntegralityClass::Z_sqrt_d);
  EXPECT_EQ(classify_integrality(QuadElem(K, Rational(1, 2), Rational(1, 2))), IntegralityClass::O_K);
  EXPECT_EQ(classify_integrality(QuadElem(K, Rational(1, 2), 0)), IntegralityClass::none);
  EXPECT_EQ(classify_integrality(QuadElem(Field::quadratic(3), Rational(1, 2), Rational(1, 2))), IntegralityClass::none);
  EXPECT_EQ(classify_integrality(QuadElem(K, Rational(-3, 2), Rational(-1, 2))), IntegralityClass::O_K);
}

TEST(QuadElemTest, TextRoundTrip) {
  EXPECT_EQ(to_string(k(6, 1)), "6+sqrt5");
  EXPECT_EQ(to_string(k(0, -1)), "-sqrt5");
  EXPECT_EQ(to_string(QuadElem(K, Rational(1, 2), Rational(-1, 2))), "1/2-1/2sqrt5");
  for (const char* s : {"6+sqrt5", "-3-2sqrt5", "1/2+1/2sqrt5", "7", "-sqrt5", "+4-sqrt5"}) {
    const QuadElem x = parse_quad(s, K);
    EXPECT_EQ(parse_quad(to_string(x), K), x) << s;
  }
  EXPECT_EQ(parse_quad("6+sqrt5"), k(6, 1));
  EXPECT_THROW(parse_quad("6+sqrt2", K), std::invalid_argument);
  EXPECT_THROW(parse_quad("", K), std::invalid_argument);
  EXPECT_THROW(parse_quad("sqrt5", Field::rational()), std::invalid_argument);
}

TEST(QuadElemTest, JsonRoundTrip) {
  const QuadElem x(K, Rational(-7, 3), Rational(5, 2));
  const nlohmann::json j = x;
  EXPECT_EQ(j.get<QuadElem>(), x);
  const QuadElem q = QuadElem::rational(Rational(9, 4));
  EXPECT_EQ(nlohmann::json(q).get<QuadElem>(), q);
}

// Adversarial signs: L_n - F_n sqrt5 = 2 psi^n has 200-digit coordinates but
// absolute value about 10^-200; its sign is (-1)^n exactly.
TEST(QuadElemProperty, TwoHundredDigitSigns) {
  BigInt f0 = 0, f1 = 1, l0 = 2, l1 = 1;
  for (unsigned n = 1; n <= 1000; ++n) {
    // (f1, l1) = (F_n, L_n)
    if (n >= 950) {
      ASSERT_GE(f1.str().size(), 198u);
      const QuadElem x(K, Rational(l1), Rational(-f1));
      const int expected = n % 2 == 0 ? 1 : -1;
      EXPECT_EQ(sign(x), expected) << n;
      EXPECT_EQ(sign(x, Embedding::conjugate), 1);
      EXPECT_EQ(sign(x + x.lift(Rational(1, pow_int(BigInt(10), 150)))), 1) << n;
    }
    BigInt f2 = f0 + f1, l2 = l0 + l1;
    f0 = f1;
    f1 = f2;
    l0 = l1;
    l1 = l2;
  }
}

// Exact arithmetic shadowed by long double on small random elements.
TEST(QuadElemProperty, ShadowAgainstFloatingPoint) {
  std::mt19937_64 rng(20240901);
  std::uniform_int_distribution<int> num(-200, 200);
  std::uniform_int_distribution<int> den(1, 12);
  auto draw = [&] { return QuadElem(K, Rational(num(rng), den(rng)), Rational(num(rng), den(rng))); };
  for (int i = 0; i < 10000; ++i) {
    const QuadElem x = draw();
    const QuadElem y = draw();
    const long double ax = approx(x), ay = approx(y);
    const long double prod = approx(x * y);
    EXPECT_NEAR(prod, ax * ay, 1e-9L * (1 + std::fabs(ax * ay)));
    EXPECT_NEAR(approx(x + y), ax + ay, 1e-9L * (1 + std::fabs(ax) + std::fabs(ay)));
    if (std::fabs(ax) > 1e-9L) {
      EXPECT_EQ(sign(x), ax > 0 ? 1 : -1);
    }
    const long double cx = approx(x, Embedding::conjugate);
    if (std::fabs(cx) > 1e-9L) {
      EXPECT_EQ(sign(x, Embedding::conjugate), cx > 0 ? 1 : -1);
    }
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    EXPECT_EQ((x * y).conjugate(), x.conjugate() * y.conjugate());
    if (!y.is_zero()) {
      EXPECT_EQ((x / y) * y, x);
    }
    if (std::fabs(ax) > 1e-6L) {
      EXPECT_EQ(floor_at_identity(x), BigInt(static_cast<long long>(std::floor(ax))));
    }
  }
}
