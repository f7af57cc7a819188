#include <gtest/gtest.h>

#include "gdseries/algnum.hpp"
#include "gdseries/marked.hpp"

using namespace gdseries;

namespace {

FieldPtr f24() { return make_field(2); }
FieldPtr f4() { return make_field(2, 4); }
FieldPtr f2() { return make_field(2, 2); }

AlgNum t(FieldPtr f, long k = 1) { return AlgNum::root_power(f, k); }

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_EQ(to_string(frac(-3072, 3)), "-1024");
  EXPECT_EQ(to_string(frac(1, -3)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(frac(1, 0), Error);
}

TEST(Rational, Combinatorics) {
  EXPECT_EQ(choose2(5), 10);
  EXPECT_EQ(factorial(6), 720);
  EXPECT_EQ(binomial(6, 2), 15);
  EXPECT_EQ(falling(10, 3), 720);
  EXPECT_EQ(rpow(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_NEAR(log2_abs(rpow(2, 4000) * 3), 4000 + std::log2(3.0), 1e-9);
}

TEST(Field, RejectsAlphaAtMostOne) {
  EXPECT_THROW(make_field(1), Error);
  EXPECT_THROW(make_field(Rational(1, 2)), Error);
  EXPECT_EQ(make_field(2), make_field(2));
}

TEST(AlgPow, Examples) {
  EXPECT_EQ(alg_pow(f4(), Rational(3, 2)), AlgNum(2) * t(f4(), 2));
  EXPECT_EQ(alg_pow(f4(), 0), AlgNum(1));
  AlgNum q = alg_pow(f4(), Rational(-1, 4));
  EXPECT_EQ(q, t(f4(), 3) * AlgNum(Rational(1, 2)));
  EXPECT_TRUE((q * t(f4())).is_one());
}

TEST(AlgPow, DenominatorMustDivideD) {
  try {
    alg_pow(f4(), Rational(1, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ExponentDenominatorMismatch);
  }
  EXPECT_NO_THROW(alg_pow(f24(), Rational(5, 8)));
}

TEST(AlgArith, Examples) {
  AlgNum one(1);
  EXPECT_EQ((one + t(f2())) * (one - t(f2())), AlgNum(-1));
  AlgNum a = AlgNum(3) + t(f24(), 5);
  EXPECT_EQ(a + AlgNum(), a);
  AlgNum p = alg_pow(f24(), Rational(3, 2));
  EXPECT_EQ(p * p, AlgNum(8));
  EXPECT_TRUE((p * p).is_rational());
}

TEST(AlgArith, FieldsMustAgree) {
  EXPECT_THROW(t(f4()) + t(make_field(3, 4)), Error);
  EXPECT_NO_THROW(t(f4()) + AlgNum(5));
}

TEST(AlgInvert, Examples) {
  EXPECT_EQ(AlgNum(2).inverse(), AlgNum(Rational(1, 2)));
  EXPECT_EQ(t(f4()).inverse(), t(f4(), 3) * AlgNum(Rational(1, 2)));
  AlgNum x = AlgNum(1) + t(f4()) + AlgNum(3) * t(f4(), 3);
  EXPECT_TRUE((x * x.inverse()).is_one());
  EXPECT_THROW(AlgNum().inverse(), Error);
}

TEST(AlgNum, RationalEmbeddingIsARingMap) {
  Rational a(5, 7), b(-3, 11);
  EXPECT_EQ(AlgNum(a) * AlgNum(b), AlgNum(Rational(a * b)));
  EXPECT_EQ(AlgNum(a) + AlgNum(b), AlgNum(Rational(a + b)));
  AlgNum x(f24(), a);
  for (int i = 1; i < 24; ++i) EXPECT_EQ(x.component(i), 0);
}

TEST(AlgNum, ToDouble) { EXPECT_NEAR(alg_pow(f24(), Rational(1, 2)).to_double(), std::sqrt(2.0), 1e-12); }

TEST(Marked, Arith) {
  VarsPtr v = make_vars({"t", "u"});
  auto tm = MarkedScalar::variable(v, "t");
  auto u = MarkedScalar::variable(v, "u");
  EXPECT_EQ(tm * tm, MarkedScalar::monomial(v, mono_make({2, 0}), AlgNum(1)));
  EXPECT_EQ((MarkedScalar(1) + u) * (MarkedScalar(1) - u), MarkedScalar(1) - u * u);
}

TEST(Marked, Extract) {
  VarsPtr v = make_vars({"u"});
  auto u = MarkedScalar::variable(v, "u");
  EXPECT_EQ((MarkedScalar(3) + MarkedScalar(2) * u).extract({1}), AlgNum(2));
  EXPECT_TRUE(u.extract({4}).is_zero());
  MarkedScalar p(1);
  for (int i = 0; i < 5; ++i) p *= MarkedScalar(1) + u;
  EXPECT_EQ(p.extract({2}), AlgNum(10));
}

TEST(Marked, VariableSetsMustAgree) {
  auto a = MarkedScalar::variable(make_vars({"s"}), "s");
  auto b = MarkedScalar::variable(make_vars({"t"}), "t");
  EXPECT_THROW(a + b, Error);
  EXPECT_NO_THROW(a + MarkedScalar(1));
}

TEST(Marked, SliceAndSubstitute) {
  VarsPtr v = make_vars({"s", "t"});
  auto s = MarkedScalar::variable(v, "s");
  auto tm = MarkedScalar::variable(v, "t");
  MarkedScalar x = MarkedScalar(3) * s * tm + s * s + MarkedScalar(7);
  EXPECT_EQ(x.degree(0), 2);
  EXPECT_EQ(x.substitute(1, AlgNum(2)), MarkedScalar(6) * s + s * s + MarkedScalar(7));
  EXPECT_EQ(x.slice(0, 1), MarkedScalar(3) * tm);
}
