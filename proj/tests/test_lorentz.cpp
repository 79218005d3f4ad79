#include "hypcert/lorentz.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hypcert;

namespace {

QuadElem r(long long a, long long b = 1) { return QuadElem::rational(Rational(a, b)); }

Vector rv(std::initializer_list<long long> xs) {
  Vector v;
  for (auto x : xs) v.push_back(r(x));
  return v;
}

/// <v,w>^2 - f(v) f(w) over Q with plain rationals, no library geometry.
Rational brute_discriminant(const std::vector<Rational>& c, const std::vector<Rational>& v, const std::vector<Rational>& w) {
  Rational ip = 0, fv = 0, fw = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    ip += c[i] * v[i] * w[i];
    fv += c[i] * v[i] * v[i];
    fw += c[i] * w[i] * w[i];
  }
  return ip * ip - fv * fw;
}

}  // namespace

TEST(LorentzFormTest, SignatureValidation) {
  EXPECT_NO_THROW(LorentzForm::standard(3));
  EXPECT_THROW(LorentzForm(Field::rational(), {r(1), r(1), r(1)}), std::invalid_argument);
  EXPECT_THROW(LorentzForm(Field::rational(), {r(-1), r(-1), r(1)}), std::invalid_argument);
  EXPECT_THROW(LorentzForm(Field::rational(), {r(-1), r(0), r(1)}), std::invalid_argument);
  EXPECT_THROW(LorentzForm(Field::rational(), {r(-1), r(1)}), std::invalid_argument);
  const auto f = LorentzForm::sqrt_weighted(Field::quadratic(5), 4);
  EXPECT_EQ(f.dimension(), 5u);
}

TEST(LorentzFormTest, EvaluationAndNormalVectors) {
  const auto f = LorentzForm::standard(3);
  EXPECT_EQ(form_eval(f, rv({3, 6, 2, 0})), r(31));
  EXPECT_EQ(inner_product(f, rv({1, 0, 0, 0}), rv({1, 0, 0, 0})), r(-1));
  EXPECT_THROW(NormalVector(f, rv({1, 0, 0, 0})), std::invalid_argument);
  EXPECT_THROW(NormalVector(f, rv({1, 1, 0, 0})), std::invalid_argument);
  EXPECT_THROW(form_eval(f, rv({1, 1, 0})), std::invalid_argument);
}

TEST(LorentzFormTest, ClassifyPairConvention) {
  const auto f = LorentzForm::standard(3);
  const NormalVector e1 = coordinate_normal(f);
  EXPECT_EQ(classify_pair(e1, NormalVector(f, rv({3, 6, 2, 0}))), PairClass::Ultraparallel);
  EXPECT_EQ(classify_pair(e1, NormalVector(f, rv({1, 1, 1, 0}))), PairClass::AsymptoticallyParallel);
  EXPECT_EQ(classify_pair(e1, NormalVector(f, rv({0, 0, 1, 0}))), PairClass::Incident);
  EXPECT_EQ(cosh_sq_distance(e1, NormalVector(f, rv({3, 6, 2, 0}))), r(36, 31));
  EXPECT_THROW(cosh_sq_distance(e1, NormalVector(f, rv({0, 0, 1, 0}))), std::domain_error);
}

TEST(LorentzFormTest, CoshSqScaleInvariant) {
  const auto f = LorentzForm::standard(4);
  const NormalVector v(f, rv({1, 3, 0, 1, 2}));
  const NormalVector w(f, rv({2, 1, 4, 0, 1}));
  for (long long l : {2, 3, -5}) {
    Vector sv, sw;
    for (const auto& x : v.components()) sv.push_back(x * r(l));
    for (const auto& x : w.components()) sw.push_back(x * r(7 * l, l * l));
    EXPECT_EQ(cosh_sq_ratio(NormalVector(f, sv), NormalVector(f, sw)), cosh_sq_ratio(v, w));
  }
}

TEST(LorentzFormTest, CompactnessVerdicts) {
  const auto nc = classify_compactness(LorentzForm::standard(3));
  ASSERT_EQ(nc.kind, CompactnessKind::NoncompactWitness);
  EXPECT_TRUE(form_eval(LorentzForm::standard(3), *nc.witness).is_zero());
  EXPECT_EQ(classify_compactness(LorentzForm::sqrt_weighted(Field::quadratic(5), 4)).kind, CompactnessKind::CompactByDefiniteness);
  // -3 x0^2 + x1^2 + x2^2 is anisotropic over Q (3 is not a sum of two squares), so the scan finds nothing
  EXPECT_EQ(classify_compactness(LorentzForm(Field::rational(), {r(-3), r(1), r(1)}), 6).kind, CompactnessKind::Unknown);
}

TEST(LorentzFormTest, AmbientKeyAndJson) {
  EXPECT_EQ(ambient_group_key(LorentzForm::standard(3)), "Q|3|-1,1,1,1");
  const auto g = LorentzForm::sqrt_weighted(Field::quadratic(5), 4);
  EXPECT_EQ(ambient_group_key(g), "Q(sqrt5)|4|-sqrt5,1,1,1,1");
  const nlohmann::json j = g;
  EXPECT_EQ(form_from_json(j), g);
  nlohmann::json bad = j;
  bad["n"] = 5;
  EXPECT_THROW(form_from_json(bad), std::invalid_argument);
}

// 10^3 random rational pairs in dimensions 3..5 against the brute-force sign.
TEST(LorentzFormProperty, ClassifyMatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), dim(3, 5), coef(1, 3);
  int counts[3] = {0, 0, 0};
  for (int t = 0; t < 1000; ++t) {
    const int n = dim(rng);
    std::vector<Rational> c(n + 1);
    Vector cq;
    for (int i = 0; i <= n; ++i) {
      c[i] = Rational(i == 0 ? -coef(rng) : coef(rng), den(rng));
      cq.push_back(QuadElem::rational(c[i]));
    }
    const LorentzForm f(Field::rational(), cq);
    auto draw = [&](std::vector<Rational>& out) {
      while (true) {
        out.assign(n + 1, 0);
        Rational fv = 0;
        for (int i = 0; i <= n; ++i) {
          out[i] = Rational(num(rng), den(rng));
          fv += c[i] * out[i] * out[i];
        }
        if (fv > 0) return;
      }
    };
    std::vector<Rational> a, b;
    draw(a);
    draw(b);
    Vector av, bv;
    for (int i = 0; i <= n; ++i) {
      av.push_back(QuadElem::rational(a[i]));
      bv.push_back(QuadElem::rational(b[i]));
    }
    const NormalVector v(f, av), w(f, bv);
    const Rational disc = brute_discriminant(c, a, b);
    const PairClass expected = disc > 0 ? PairClass::Ultraparallel : disc == 0 ? PairClass::AsymptoticallyParallel : PairClass::Incident;
    ASSERT_EQ(classify_pair(v, w), expected) << t;
    ++counts[static_cast<int>(expected)];
    if (expected == PairClass::Ultraparallel) {
      Rational ip = 0, fa = 0, fb = 0;
      for (int i = 0; i <= n; ++i) {
        ip += c[i] * a[i] * b[i];
        fa += c[i] * a[i] * a[i];
        fb += c[i] * b[i] * b[i];
      }
      ASSERT_EQ(cosh_sq_distance(v, w), QuadElem::rational(ip * ip / (fa * fb)));
    }
  }
  EXPECT_GT(counts[0], 0);
  EXPECT_GT(counts[2], 0);
}
