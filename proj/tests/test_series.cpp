#include <gtest/gtest.h>

#include "gdseries/families.hpp"

using namespace gdseries;

namespace {

FieldPtr F() { return make_field(2); }

Egf fam(const char* name, int order) {
  static Evaluator ev(F());
  return ev.eval(build_family(name, F()).formula, order);
}

Egf ez(int order) { return exp_linear(AlgNum(1), order); }

// small fixed series with zero constant term
Egf sample(int order) {
  return Egf::generate(order, [](int n) {
    if (n == 0) return MarkedScalar();
    return MarkedScalar(frac((n * 7) % 5 - 2, n + 1));
  });
}

void expect_series_eq(const Egf& a, const Egf& b, int order) {
  for (int n = 0; n <= order; ++n) EXPECT_EQ(a[n], b[n]) << "coefficient " << n;
}

}  // namespace

TEST(EgfRing, ExpTimesExp) {
  Egf p = ez(8) * ez(8);
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(p[n], MarkedScalar(frac(ipow(2, n), factorial(n))));
}

TEST(EgfRing, AdditiveIdentity) {
  Egf a = sample(6);
  expect_series_eq(a + Egf(6), a, 6);
}

TEST(EgfRing, GraphsTimesOneMinusIrreducibleTournaments) {
  Egf p = fam("g", 8) * (constant_series(8, MarkedScalar(1)) - fam("it", 8));
  EXPECT_EQ(p[0], MarkedScalar(1));
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(p[n].is_zero()) << n;
}

TEST(EgfCompose, ExpOfZ) {
  Egf z = Egf::generate(6, [](int n) { return MarkedScalar(n == 1 ? 1 : 0); });
  Egf e = exp(z);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(e[n], MarkedScalar(frac(1, factorial(n))));
}

TEST(EgfCompose, LogOfGraphsIsConnectedGraphs) {
  Egf cg = log(fam("g", 5));
  std::vector<long> want{0, 1, 1, 4, 38, 728};
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(cg.with_kind(Kind::Exponential).count(n), MarkedScalar(want[n])) << n;
}

TEST(EgfCompose, GeometricOfRobinInverseIt) {
  Egf a = robin(fam("it", 4), -1, F());
  std::vector<MarkedScalar> geo(5, MarkedScalar(1));
  Egf ssd = compose(geo, a);
  std::vector<long> want{1, 1, 2, 22, 1688};
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(ssd.with_kind(Kind::Exponential).count(n), MarkedScalar(want[n])) << n;
}

TEST(EgfCompose, RejectsNonzeroConstant) {
  std::vector<MarkedScalar> f{1, 1};
  try {
    compose(f, ez(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonzeroConstantTerm);
  }
}

TEST(EgfExpLog, RoundTrip) {
  Egf a = sample(8);
  expect_series_eq(log(exp(a)), a, 8);
}

TEST(EgfExpLog, ExpOfScdIsSsd) { expect_series_eq(exp(fam("scd", 8)), fam("ssd", 8), 8); }

TEST(EgfExpLog, HalfPowers) {
  Egf ssd = fam("ssd", 8), scd = fam("scd", 8);
  Egf h = pow(ssd, Rational(-1, 2));
  expect_series_eq(h, exp(scale(scd, MarkedScalar(Rational(-1, 2)))), 8);
  expect_series_eq(h * h, inverse(ssd), 8);
  expect_series_eq(pow(ssd, 3), ssd * ssd * ssd, 8);
}

TEST(EgfExpLog, ConstantTermChecks) {
  EXPECT_THROW(log(sample(4)), Error);
  EXPECT_THROW(exp(constant_series(4, MarkedScalar(1))), Error);
  EXPECT_THROW(pow(sample(4), Rational(1, 2)), Error);
}

TEST(EgfHadamard, Examples) {
  Egf a = sample(6);
  expect_series_eq(hadamard(a, ez(6)), a, 6);
  Egf h = hadamard(fam("it", 5), fam("g", 5)).with_kind(Kind::Exponential);
  EXPECT_EQ(h.count(1, F()), MarkedScalar(1));
  EXPECT_EQ(h.count(3, F()), MarkedScalar(16));
  EXPECT_EQ(h.count(4, F()), MarkedScalar(1536));
  expect_series_eq(hadamard(fam("g", 6), robin(ez(6), 1, F())), ez(6), 6);
}

TEST(EgfRobin, Examples) {
  expect_series_eq(robin(fam("d", 6), 2, F()), ez(6), 6);
  Egf a = sample(6);
  expect_series_eq(robin(robin(a, 1, F()), -1, F()), a, 6);
  Egf dag = inverse(robin(exp_linear(AlgNum(-1), 4), 1, F())).with_kind(Kind::Graphic);
  std::vector<long> want{1, 1, 3, 25, 543};
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(dag.count(n, F()), MarkedScalar(want[n]));
}

TEST(EgfScaleZ, Examples) {
  Egf a = sample(6);
  expect_series_eq(scale_z(a, AlgNum(1)), a, 6);
  Egf scd = fam("scd", 6), s2 = scale_z(scd, AlgNum(2));
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(s2[n], scd[n] * AlgNum(Rational(ipow(2, n))));
  AlgNum c = alg_pow(F(), 3), ci = alg_pow(F(), -3);
  expect_series_eq(scale_z(scale_z(a, c), ci), a, 6);
}

TEST(EgfCalculus, Examples) {
  Egf a = sample(6);
  expect_series_eq(derivative(antiderivative(a)), a, 6);
  expect_series_eq(derivative(ez(7)), ez(6), 6);
  Egf g = derivative(fam("g", 7));
  for (int n = 0; n <= 6; ++n)
    EXPECT_EQ(g[n] * AlgNum(Rational(factorial(n))), MarkedScalar(Rational(ipow(2, choose2(n + 1)))));
}

TEST(EgfTruncate, ErrorWhenOrderIsTooHigh) { EXPECT_THROW(sample(4).truncate(6), Error); }

TEST(Grade, Examples) {
  EXPECT_EQ(infer_grade(atom(1)), 1);
  EXPECT_EQ(infer_grade(robin(atom(2), 2)), 0);
  EXPECT_EQ(infer_grade(robin(build_family("it", F()).formula, -1)), 2);
  EXPECT_EQ(infer_grade(build_family("scd", F()).formula), 2);
  EXPECT_EQ(infer_grade(build_family("sat", F()).formula), 1);
}

TEST(Grade, OutsideTheClosure) {
  Expr bad = robin(exp_linear_expr(1), -1);
  EXPECT_THROW(infer_grade(bad), Error);
}

TEST(Evaluator, CachesAndTruncates) {
  Evaluator ev(F());
  Expr e = build_family("ssd", F()).formula;
  Egf big = ev.eval(e, 8);
  Egf small = ev.eval(e, 4);
  expect_series_eq(small, big, 4);
  EXPECT_EQ(small.order(), 4);
}

TEST(AnalyticFn, DerivativeOfCustomSeries) {
  AnalyticFn f = AnalyticFn::from_coeffs({MarkedScalar(0), MarkedScalar(3), MarkedScalar(5)});
  AnalyticFn d = f.derivative();
  Egf z = Egf::generate(4, [](int n) { return MarkedScalar(n == 1 ? 1 : 0); });
  Egf v = d.apply(z);
  EXPECT_EQ(v[0], MarkedScalar(3));
  EXPECT_EQ(v[1], MarkedScalar(10));
}
