#include <gtest/gtest.h>

#include "gdseries/calibration.hpp"
#include "gdseries/families.hpp"
#include "gdseries/oracle.hpp"

using namespace gdseries;

namespace {

FieldPtr F() { return make_field(2); }

std::vector<Integer> counts(const char* name, int n) {
  Evaluator ev(F());
  return integer_counts(build_family(name, F()), n, ev);
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Families, CatalogCounts) {
  EXPECT_EQ(counts("it", 6), ints({0, 1, 0, 2, 24, 544, 22320}));
  EXPECT_EQ(counts("cg", 5), ints({0, 1, 1, 4, 38, 728}));
  EXPECT_EQ(counts("ssd", 5), ints({1, 1, 2, 22, 1688, 573496}));
  EXPECT_EQ(counts("g", 4), ints({1, 1, 2, 8, 64}));
  EXPECT_EQ(counts("t", 4), ints({1, 1, 2, 8, 64}));
  EXPECT_EQ(counts("d", 3), ints({1, 1, 4, 64}));
  EXPECT_EQ(counts("scd", 5), ints({0, 1, 1, 18, 1606, 565080}));
  EXPECT_EQ(counts("dag", 4), ints({1, 1, 3, 25, 543}));
  EXPECT_EQ(counts("sat", 4), ints({1, 1, 15, 2397, 3049713}));
}

// the double sum gives 122 at n = 3
TEST(Families, DagPairsMatchDoubleSum) {
  auto d2 = counts("dag2", 5);
  EXPECT_EQ(d2[0], 1);
  EXPECT_EQ(d2[1], 2);
  EXPECT_EQ(d2[2], 10);
  EXPECT_EQ(d2[3], 122);
  auto ds = dag2_counts_double_sum(2, 5);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(Rational(d2[n]), ds[n]) << n;
}

TEST(Families, DagRecurrence) {
  auto rec = dag_counts_recurrence(2, 6);
  auto ser = counts("dag", 6);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(Rational(ser[n]), rec[n]);
}

TEST(Families, OtherAlpha) {
  FieldPtr f = make_field(3);
  Evaluator ev(f);
  auto g = integer_counts(build_family("g", f), 4, ev);
  EXPECT_EQ(g, ints({1, 1, 3, 27, 729}));
  auto dag = family_counts(build_family("dag", f), 5, ev);
  auto rec = dag_counts_recurrence(3, 5);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(dag[n], MarkedScalar(rec[n]));
}

TEST(Families, Errors) {
  try {
    build_family("nope", F());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownFamily);
  }
  try {
    build_family("sat", make_field(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedAlpha);
  }
}

TEST(Families, MarksRestrictToUnmarkedCounts) {
  Evaluator ev(F());
  auto tt = family_counts(restrict_marks(build_family("ssd_t", F()), {}), 5, ev);
  auto plain = family_counts(build_family("ssd", F()), 5, ev);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(tt[n].as_constant(), plain[n].as_constant());
  EXPECT_THROW(restrict_marks(build_family("ssd_t", F()), {"q"}), Error);
}

TEST(Families, ComponentMarks) {
  Evaluator ev(F());
  auto spec = build_family("g_t", F());
  auto c = family_counts(spec, 4, ev);
  EXPECT_EQ(c[4].extract({1}), AlgNum(38));
  EXPECT_EQ(c[4].extract({2}), AlgNum(19));
  EXPECT_EQ(c[4].extract({3}), AlgNum(6));
  EXPECT_EQ(c[4].extract({4}), AlgNum(1));
}

TEST(Families, WrightEtaRecurrence) {
  Evaluator ev(F());
  auto r = wright_recurrence_eta(8, ev);
  ASSERT_EQ(r.eta.size(), 9u);
  EXPECT_EQ(r.scd[3], 18);
}

TEST(Oracle, Graphs) {
  auto g3 = oracle::enumerate_graphs(3);
  EXPECT_EQ(g3.connected, 4u);
  EXPECT_EQ(g3.total, 8u);
  EXPECT_EQ(oracle::enumerate_graphs(1).connected, 1u);
  auto g4 = oracle::enumerate_graphs(4);
  EXPECT_EQ(g4.connected, 38u);
  EXPECT_EQ(g4.by_components.at({1}), 38u);
  EXPECT_EQ(g4.by_components.at({2}), 19u);
  EXPECT_EQ(g4.by_components.at({3}), 6u);
  EXPECT_EQ(g4.by_components.at({4}), 1u);
  EXPECT_EQ(g4.total, 64u);
}

TEST(Oracle, Digraphs) {
  auto d2 = oracle::enumerate_digraphs(2);
  EXPECT_EQ(d2.total, 4u);
  EXPECT_EQ(d2.strongly_connected, 1u);
  EXPECT_EQ(d2.dag, 3u);
  auto d1 = oracle::enumerate_digraphs(1);
  EXPECT_EQ(d1.total, 1u);
  EXPECT_EQ(d1.strongly_connected, 1u);
  EXPECT_EQ(d1.semi_strong, 1u);
  EXPECT_EQ(d1.dag, 1u);
  auto d4 = oracle::enumerate_digraphs(4);
  EXPECT_EQ(d4.strongly_connected, 1606u);
  EXPECT_EQ(d4.semi_strong, 1688u);
  EXPECT_EQ(d4.dag, 543u);
}

TEST(Oracle, Tournaments) {
  auto t3 = oracle::enumerate_tournaments(3);
  EXPECT_EQ(t3.irreducible, 2u);
  EXPECT_EQ(t3.total, 8u);
  EXPECT_EQ(oracle::enumerate_tournaments(2).irreducible, 0u);
  auto t4 = oracle::enumerate_tournaments(4);
  EXPECT_EQ(t4.irreducible, 24u);
  EXPECT_EQ(t4.by_parts.at({2}), 16u);
}

TEST(Oracle, TwoCnf) {
  auto c1 = oracle::enumerate_2cnf(1, oracle::Universe::Full);
  EXPECT_EQ(c1.satisfiable, 1u);
  auto c2 = oracle::enumerate_2cnf(2, oracle::Universe::Full);
  EXPECT_EQ(c2.total, 16u);
  EXPECT_EQ(c2.satisfiable, 15u);
  auto c3 = oracle::enumerate_2cnf(3, oracle::Universe::Full);
  EXPECT_EQ(c3.satisfiable, 2397u);
}

TEST(Oracle, SizeLimits) {
  try {
    oracle::enumerate_digraphs(7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SizeLimit);
  }
  EXPECT_THROW(oracle::enumerate_graphs(7), Error);
  EXPECT_THROW(oracle::enumerate_2cnf(4, oracle::Universe::Full), Error);
}

TEST(Calibration, PicksOneUniverse) {
  auto rep = calibrate_sat_model(3);
  EXPECT_EQ(rep.chosen, oracle::Universe::Full);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.rows[2].series, 2397);
}
