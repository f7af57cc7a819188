#include <gtest/gtest.h>

#include "gdseries/asymptotics.hpp"
#include "gdseries/golden.hpp"

using namespace gdseries;

namespace {

FieldPtr F() { return make_field(2); }

Evaluator& ev() {
  static Evaluator e(F());
  return e;
}

CoeffGf table(const char* name, int beta, int z) {
  Transfer tr(ev());
  return tr(build_family(name, F()).formula, beta, z);
}

AlgNum q(const std::string& s) { return AlgNum(parse_rational(s)); }

}  // namespace

TEST(Transfer, ConnectedGraphs) {
  CoeffGf c = table("cg", 1, 7);
  EXPECT_EQ(c.get(0, 0).as_constant(), AlgNum(1));
  EXPECT_EQ(c.get(1, 1).as_constant(), AlgNum(-2));
  EXPECT_TRUE(c.get(2, 2).is_zero());
  EXPECT_EQ(c.get(3, 3).as_constant(), q("-64/3"));
  for (const auto& [k, v] : c.table()) EXPECT_EQ(k.first, k.second) << "off-diagonal entry";
  auto it = build_family("it", F());
  auto its = integer_counts(it, 7, ev());
  for (int m = 1; m <= 7; ++m)
    EXPECT_EQ(c.get(m, m).as_constant(),
              AlgNum(Rational(-its[m] * ipow(2, choose2(m + 1))) / Rational(factorial(m))));
}

TEST(Transfer, IrreducibleTournaments) {
  CoeffGf c = table("it", 1, 4);
  std::vector<std::string> want{"1", "-4", "8", "-128/3", "-4096/3"};
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(c.get(m, m).as_constant(), q(want[m])) << m;
}

TEST(Transfer, StronglyConnectedDigraphs) {
  CoeffGf c = table("scd", 2, 6);
  EXPECT_EQ(c.get(1, 1).as_constant(), AlgNum(-4));
  EXPECT_EQ(c.get(2, 1).as_constant(), AlgNum(4));
  EXPECT_EQ(c.get(2, 2).as_constant(), AlgNum(8));
  EXPECT_EQ(c.get(3, 2).as_constant(), AlgNum(-32));
  EXPECT_EQ(c.get(3, 3).as_constant(), q("-128/3"));
  EXPECT_EQ(coeffgf_extract(c, 0, 0), AlgNum(1));
  EXPECT_EQ(coeffgf_extract(c, 6, 6), q("-4984930304/45"));
  for (int m = 0; m <= 6; ++m)
    for (int l = 0; l <= 6; ++l) EXPECT_EQ(coeffgf_extract(c, m, l), AlgNum(scd_closed_form(m, l, ev())));
}

TEST(Transfer, GraphsAreExact) {
  CoeffGf c = table("g", 1, 5);
  ASSERT_EQ(c.table().size(), 1u);
  EXPECT_EQ(c.get(0, 0).as_constant(), AlgNum(1));
}

TEST(Transfer, RingInclusionGivesZero) {
  EXPECT_TRUE(table("cg", 2, 6).is_zero());
  EXPECT_TRUE(table("it", 2, 6).is_zero());
  EXPECT_TRUE(table("sat", 2, 6).is_zero());
}

TEST(Transfer, GradeTooHigh) {
  try {
    table("scd", 1, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GradeTooHigh);
  }
}

TEST(Transfer, HadamardIsNotTransferable) {
  Transfer tr(ev());
  Expr g = build_family("g", F()).formula;
  EXPECT_THROW(tr(hadamard(g, g), 1, 4), Error);
}

TEST(Transfer, RootDegreeMustFitBeta) {
  FieldPtr f = make_field(2, 2);
  Evaluator e(f);
  Transfer tr(e);
  EXPECT_THROW(tr(build_family("cscc", f).formula, 4, 4), Error);
  EXPECT_THROW(check_basis(make_field(2, 1), 2), Error);
}

TEST(BasisChange, CommutativeDiagram) {
  Transfer tr(ev());
  Expr it = build_family("it", F()).formula;
  CoeffGf lhs = basis_change(tr(it, 1, 8), 2);
  CoeffGf rhs = tr(robin(it, -1), 2, 8);
  EXPECT_EQ(lhs, rhs);
  CoeffGf c = table("scd", 2, 6);
  EXPECT_EQ(basis_change(basis_change(c, 4), 2), c);
}

TEST(LeadingTerm, DagPairsDiagonal) {
  Transfer tr(ev());
  auto spec = build_family("dhat_t", F());
  CoeffGf c = tr(spec.formula, 1, 5);
  auto d2 = dag2_counts_double_sum(2, 5);
  for (int m = 0; m <= 5; ++m) {
    AlgNum diag = c.get(m, m).extract({m + 1});
    EXPECT_EQ(diag, AlgNum(Rational(rpow(2, m) * d2[m] / Rational(factorial(m))))) << m;
  }
  EXPECT_EQ(c.get(2, 2).extract({3}), AlgNum(20));
}

TEST(PartialSum, GraphsSingleTerm) {
  CoeffGf c = table("g", 1, 0);
  for (long n : {3L, 10L, 17L}) {
    auto est = partial_sum(c, n, 0);
    EXPECT_EQ(est.value, AlgNum(Rational(ipow(2, choose2(n)))));
  }
}

TEST(PartialSum, ConnectedGraphsFirstTerms) {
  CoeffGf c = table("cg", 1, 3);
  auto e0 = partial_sum(c, 10, 0);
  EXPECT_EQ(e0.value, AlgNum(Rational(ipow(2, 45))));
  auto e1 = partial_sum(c, 10, 1);
  // 1 - it_1 C(10,1) 2^1 / 2^10, scaled by 2^45
  Rational want = rpow(2, 45) * (1 - frac(10 * 2, 1024));
  EXPECT_EQ(e1.value, AlgNum(want));
}

TEST(PartialSum, EmptyTable) {
  CoeffGf c(F(), 2, 4);
  EXPECT_TRUE(partial_sum(c, 12, 4).value.is_zero());
}

TEST(ErrorProfile, ShrinksWithTerms) {
  auto spec = build_family("cg", F());
  auto p = error_profile(spec, 1, {20, 30}, {0, 1, 3}, ev());
  EXPECT_LT(p.at(20, 1).log2, p.at(20, 0).log2);
  EXPECT_LT(p.at(20, 3).log2, p.at(20, 1).log2);
  EXPECT_LT(p.at(30, 1).log2, p.at(20, 1).log2);
  // it_2 = 0 so cutting at M = 2 changes nothing
  auto p2 = error_profile(spec, 1, {20}, {1, 2}, ev());
  EXPECT_EQ(p2.at(20, 1).rel_error, p2.at(20, 2).rel_error);
}

TEST(Wright, MatchesFixtures) {
  CoeffGf c = table("scd", 2, 6);
  auto ws = wright_polynomials(c, 6);
  const auto& want = golden::wright;
  ASSERT_EQ(want.size(), 7u);
  for (int m = 0; m <= 6; ++m) {
    auto exp = golden::expand(want[m]);
    for (size_t d = 0; d < std::max(exp.size(), ws[m].coeffs.size()); ++d) {
      Rational a = d < exp.size() ? exp[d] : Rational(0);
      AlgNum b = d < ws[m].coeffs.size() ? ws[m].coeffs[d] : AlgNum();
      EXPECT_EQ(AlgNum(a), b) << "w_" << m << " degree " << d;
    }
  }
  // -(1024/15) n(n-1)(n-2)(3392n^2 - 23724n + 40659) at n = 7
  Rational w5 = Rational(-1024, 15) * 7 * 6 * 5 * (3392 * 49 - 23724 * 7 + 40659);
  EXPECT_EQ(ws[5](7), AlgNum(w5));
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(scd_closed_form(1, 1, ev()), -4);
  EXPECT_EQ(scd_closed_form(0, 0, ev()), 1);
  EXPECT_EQ(scd_closed_form(4, 2, ev()), 64);
  EXPECT_EQ(scd_closed_form(4, 1, ev()), 0);
}

TEST(SatCorrection, TwoPaths) {
  Transfer tr(ev());
  CoeffGf c = tr(build_family("sat", F()).formula, 1, 8);
  EXPECT_EQ(sat_correction(0, ev()), 0);
  EXPECT_EQ(sat_correction_from_table(c, 0), 0);
  for (int m = 1; m <= 8; ++m) EXPECT_EQ(sat_correction(m, ev()), sat_correction_from_table(c, m)) << m;
}

TEST(SccLeading, SmallM) {
  auto l0 = scc_count_leading(0);
  EXPECT_EQ(l0.constant, 1);
  EXPECT_EQ(l0(50), 1);
  auto l1 = scc_count_leading(1);
  EXPECT_EQ(l1.dag2, 2);
  EXPECT_EQ(l1(10), frac(4 * 10, 1024));
  auto l2 = scc_count_leading(2);
  EXPECT_EQ(l2.dag2, 10);
  EXPECT_EQ(l2.diagonal, 20);
}
