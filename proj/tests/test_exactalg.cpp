#include "wlreg/exactalg.hpp"
#include "wlreg/poly.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wlreg;

namespace {

RegValue random_regvalue(std::mt19937& rng) {
  std::uniform_int_distribution<int> terms(0, 3), bp(-2, 3), dp(0, 2), num(-9, 9), den(1, 7);
  RegValue v;
  int n = terms(rng);
  for (int k = 0; k < n; ++k) v += RegValue::term(bp(rng), dp(rng), Rational(num(rng), den(rng)));
  return v;
}

}  // namespace

TEST(Rational, NormalizesAndParses) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("1/-2"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("-7/180"), Rational(-7, 180));
  EXPECT_EQ(Rational::parse("12"), Rational(12));
  EXPECT_EQ(Rational(-7, 180).str(), "-7/180");
  EXPECT_EQ(Rational(5).str(), "5");
  EXPECT_THROW(Rational(1, 0), std::exception);
  EXPECT_THROW(Rational::parse("1/x"), std::exception);
}

TEST(Rational, ArbitraryPrecision) {
  Rational big(1);
  for (int k = 0; k < 40; ++k) big *= Rational(1000003);
  Rational back = big / Rational(1000003).pow(40);
  EXPECT_EQ(back, Rational(1));
  EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
}

TEST(RegValue, AddExamples) {
  EXPECT_EQ(add(RegValue::beta(1, Rational(1, 24)), RegValue::beta(1, Rational(-1, 8))), RegValue::beta(1, Rational(-1, 12)));
  EXPECT_EQ(add(RegValue(), RegValue::term(2, 1, Rational(1, 6))), RegValue::term(2, 1, Rational(1, 6)));
  EXPECT_TRUE(add(RegValue::beta(1, Rational(1, 24)), RegValue::beta(1, Rational(-1, 24))).is_zero());
}

TEST(RegValue, MulExamples) {
  EXPECT_EQ(mul(RegValue::beta(1, Rational(1, 12)), RegValue::beta(1, Rational(1, 12))), RegValue::beta(2, Rational(1, 144)));
  EXPECT_EQ(mul(RegValue::delta0(), RegValue::beta(2, Rational(1, 6))), RegValue::term(2, 1, Rational(1, 6)));
  EXPECT_TRUE(mul(RegValue(), RegValue::beta(3, 5)).is_zero());
}

TEST(RegValue, AssertEqualExamples) {
  EXPECT_TRUE(assert_equal(RegValue::beta(1, Rational(1, 24)), RegValue::beta(1, Rational(1, 24))));
  EXPECT_FALSE(assert_equal(RegValue::beta(1, Rational(1, 24)), RegValue::beta(1, Rational(1, 12))));
  EXPECT_TRUE(assert_equal(RegValue(), RegValue()));
}

TEST(RegValue, RingAxiomsOnRandomValues) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    RegValue a = random_regvalue(rng), b = random_regvalue(rng), c = random_regvalue(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + RegValue(), a);
    EXPECT_EQ(a * RegValue(1), a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(RegValue, GradesAndText) {
  RegValue v = RegValue::beta(2, Rational(-1, 72)) + RegValue::term(3, 1, Rational(1, 30));
  EXPECT_EQ(v.grade(0), RegValue::beta(2, Rational(-1, 72)));
  EXPECT_EQ(v.grade(1), RegValue::term(3, 1, Rational(1, 30)));
  EXPECT_EQ(v.max_delta0_power(), 1);
  EXPECT_EQ(v.str(), "-1/72 * beta^2 + 1/30 * beta^3 * delta0");
  EXPECT_EQ(RegValue::beta(1, Rational(1, 24)).str(), "1/24 * beta");
  EXPECT_EQ(RegValue().str(), "0");
  EXPECT_EQ(RegValue::beta(3, 6).divided_by_monomial(RegValue::beta(1, 2)), RegValue::beta(2, 3));
  EXPECT_DOUBLE_EQ(v.evaluate(2.0, 10.0), -4.0 / 72 + 8.0 * 10 / 30);
}

TEST(RegValue, DenominatorsStayExact) {
  RegValue v = RegValue::beta(2, Rational(1, 1080)) - RegValue::beta(2, Rational(1, 432));
  EXPECT_EQ(v, RegValue::beta(2, Rational(-1, 720)));
  EXPECT_EQ(Rational(1, 2160) * Rational(2160), Rational(1));
}

TEST(Poly, CalculusIdentities) {
  Poly t = Poly::variable(2, 0), s = Poly::variable(2, 1);
  Poly p = t * t * s + Poly::constant(2, 3, 1) * s;  // t^2 s + 3 beta s
  EXPECT_EQ(p.derivative(0), Rational(2) * t * s);
  EXPECT_EQ(p.substitute_var(1, 0), t * t * t + Poly::constant(2, 3, 1) * t);
  EXPECT_EQ(p.at_endpoint(1, false), Poly(2));
  // int_0^beta int_0^beta t^a s^b = beta^(a+b+2)/((a+1)(b+1))
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      Poly m = t.pow(a) * s.pow(b);
      RegValue full = m.integrate(0).integrate(1).to_regvalue();
      EXPECT_EQ(full, RegValue::beta(a + b + 2, Rational(1, (a + 1) * (b + 1))));
    }
}

TEST(Poly, RemapAndEvaluate) {
  Poly t = Poly::variable(1, 0);
  Poly q = (t * t - Poly::constant(1, 1, 1) * t).remap({2}, 3);
  EXPECT_EQ(q.degree_in(2), 2);
  EXPECT_EQ(q.degree_in(0), 0);
  EXPECT_DOUBLE_EQ(q.evaluate({0.0, 0.0, 0.5}, 2.0), 0.25 - 1.0);
}
