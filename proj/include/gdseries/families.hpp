#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "expr.hpp"

namespace gdseries {

struct FamilySpec {
  std::string name;
  FieldPtr field = nullptr;
  VarsPtr vars = nullptr;
  Expr formula;
  Kind kind = Kind::Exponential;
  int grade = 0;  // declared growth grade
  std::string description;
};

namespace detail {

struct FamilyEntry {
  std::string description;
  Kind kind;
  int grade;
  bool alpha_two_only;
  std::vector<std::string> marks;
};

inline const std::map<std::string, FamilyEntry>& family_table() {
  static const std::map<std::string, FamilyEntry> t = {
      {"g", {"labeled graphs", Kind::Exponential, 1, false, {}}},
      {"t", {"labeled tournaments", Kind::Exponential, 1, false, {}}},
      {"d", {"labeled digraphs", Kind::Exponential, 2, false, {}}},
      {"cg", {"connected graphs", Kind::Exponential, 1, false, {}}},
      {"it", {"irreducible tournaments", Kind::Exponential, 1, false, {}}},
      {"scd", {"strongly connected digraphs", Kind::Exponential, 2, false, {}}},
      {"ssd", {"semi-strong digraphs", Kind::Exponential, 2, false, {}}},
      {"dag", {"directed acyclic graphs", Kind::Graphic, 0, false, {}}},
      {"dag2", {"DAG pairs, sum C(n,k) alpha^(k(n-k)) dag_k dag_(n-k)", Kind::Graphic, 0, false, {}}},
      {"ssd_t", {"semi-strong digraphs, t marks components", Kind::Exponential, 2, false, {"t"}}},
      {"dhat_t", {"digraphs, t marks strongly connected components", Kind::Graphic, 1, false, {"t"}}},
      {"dhat_st", {"digraphs, s marks source-like and t all components", Kind::Graphic, 1, false, {"s", "t"}}},
      {"d_uvyt",
       {"digraphs, u purely source-like, v purely sink-like, y isolated, t all components", Kind::Exponential, 2,
        false, {"u", "v", "y", "t"}}},
      {"sat", {"satisfiable 2-CNF formulas", Kind::Implication, 1, true, {}}},
      {"cscc", {"strongly connected implication digraphs", Kind::Exponential, 4, true, {}}},
      {"cnf_st",
       {"2-CNF formulas, s marks contradictory components, t pairs of ordinary components", Kind::Implication, 2,
        true, {"s", "t"}}},
      {"g_t", {"graphs, t marks connected components", Kind::Exponential, 1, false, {"t"}}},
      {"t_t", {"tournaments, t marks irreducible parts", Kind::Exponential, 1, false, {"t"}}},
  };
  return t;
}

// Shared unmarked building blocks.
struct Base {
  Expr G = atom(1);
  Expr D = atom(2);
  Expr CG = gdseries::log(G);
  Expr IT = scalar(MarkedScalar(1)) - inverse(G);
  Expr RIT = robin(IT, -1);
  Expr SCD = compose(AnalyticFn::neg_log1m(), RIT);
  Expr SSD = compose(AnalyticFn::geometric(), RIT);
  Expr DAG = inverse(robin(exp_linear_expr(-1), 1));
  Expr DAG2 = pow(DAG, 2);
  Expr SAT = G * robin(compose(AnalyticFn::exp(MarkedScalar(frac(-1, 2))), SCD), 2);
  Expr CSCC = MarkedScalar(frac(1, 2)) * scale_z(SCD, AlgNum(2)) +
              gdseries::log(robin(D * (scalar(MarkedScalar(1)) - scale_z(IT, AlgNum(2))), -2));
};

inline const Base& base() {
  static const Base b;
  return b;
}

inline Expr dhat_t(VarsPtr v) {
  MarkedScalar t = MarkedScalar::variable(v, "t");
  return inverse(robin(compose(AnalyticFn::exp(-t), base().SCD), 1));
}

inline Expr build_formula(const std::string& name, VarsPtr v) {
  const Base& b = base();
  auto mark = [&](const char* n) { return MarkedScalar::variable(v, n); };
  const MarkedScalar one(1);
  if (name == "g" || name == "t") return b.G;
  if (name == "d") return b.D;
  if (name == "cg") return b.CG;
  if (name == "it") return b.IT;
  if (name == "scd") return b.SCD;
  if (name == "ssd") return b.SSD;
  if (name == "dag") return b.DAG;
  if (name == "dag2") return b.DAG2;
  if (name == "sat") return b.SAT;
  if (name == "cscc") return b.CSCC;
  if (name == "ssd_t") return compose(AnalyticFn::exp(mark("t")), b.SCD);
  if (name == "dhat_t") return dhat_t(v);
  if (name == "dhat_st") {
    MarkedScalar s = mark("s"), t = mark("t");
    return robin(compose(AnalyticFn::exp((s - one) * t), b.SCD), 1) * dhat_t(v);
  }
  if (name == "d_uvyt") {
    MarkedScalar u = mark("u"), w = mark("v"), y = mark("y"), t = mark("t");
    auto typed = [&](const MarkedScalar& x) { return robin(compose(AnalyticFn::exp((x - one) * t), b.SCD), 1); };
    Expr inner = typed(u) * typed(w) * dhat_t(v);
    return compose(AnalyticFn::exp((y - u - w + one) * t), b.SCD) * robin(inner, -1);
  }
  if (name == "cnf_st") {
    MarkedScalar s = mark("s"), t = mark("t");
    Expr e = s * scale_z(b.CSCC, AlgNum(frac(1, 2))) + (t * AlgNum(frac(-1, 2))) * b.SCD;
    return dhat_t(v) * robin(gdseries::exp(e), 2);
  }
  if (name == "g_t") return compose(AnalyticFn::exp(mark("t")), b.CG);
  if (name == "t_t") return compose(AnalyticFn::geometric(mark("t")), b.IT);
  fail(Errc::UnknownFamily, name);
}

}  // namespace detail

inline std::vector<std::string> family_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : detail::family_table()) out.push_back(k);
  return out;
}

inline FamilySpec build_family(const std::string& name, FieldPtr f) {
  const auto& table = detail::family_table();
  auto it = table.find(name);
  if (it == table.end()) fail(Errc::UnknownFamily, "no family named '" + name + "'");
  const auto& e = it->second;
  if (e.alpha_two_only && f->alpha != 2)
    fail(Errc::UnsupportedAlpha, name + " is defined only for alpha = 2, got " + to_string(f->alpha));
  static std::mutex mu;
  static std::map<std::string, Expr> built;
  VarsPtr vars = make_vars(e.marks);
  Expr formula;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto b = built.find(name);
    if (b == built.end()) b = built.emplace(name, detail::build_formula(name, vars)).first;
    formula = b->second;
  }
  return FamilySpec{name, f, vars, formula, e.kind, e.grade, e.description};
}

// Sets every mark outside keep to 1.
inline FamilySpec restrict_marks(const FamilySpec& spec, const std::vector<std::string>& keep) {
  if (!spec.vars) return spec;
  FamilySpec out = spec;
  for (const auto& k : keep)
    if (spec.vars->index_of(k) < 0) fail(Errc::VariableSetMismatch, spec.name + " has no mark '" + k + "'");
  for (int i = 0; i < spec.vars->size(); ++i) {
    const auto& nm = spec.vars->names[static_cast<size_t>(i)];
    if (std::find(keep.begin(), keep.end(), nm) == keep.end()) out.formula = substitute_mark(out.formula, i, AlgNum(1));
  }
  return out;
}

inline std::vector<MarkedScalar> family_counts(const FamilySpec& spec, int n_max, Evaluator& ev) {
  Egf s = ev.eval(spec.formula, n_max).with_kind(spec.kind);
  std::vector<MarkedScalar> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(s.count(n, spec.field));
  return out;
}

inline std::vector<MarkedScalar> family_counts(const FamilySpec& spec, int n_max) {
  Evaluator ev(spec.field);
  return family_counts(spec, n_max, ev);
}

// Unmarked integer counts; throws if a count is not an integer.
inline std::vector<Integer> integer_counts(const FamilySpec& spec, int n_max, Evaluator& ev) {
  std::vector<Integer> out;
  for (const auto& c : family_counts(spec, n_max, ev)) {
    const Rational& r = c.as_constant().rational();
    if (r.get_den() != 1) fail(Errc::InvalidArgument, spec.name + " count " + to_string(r) + " is not an integer");
    out.push_back(r.get_num());
  }
  return out;
}

// dag_n = sum_{k>=1} (-1)^(k+1) C(n,k) alpha^(k(n-k)) dag_(n-k)
inline std::vector<Rational> dag_counts_recurrence(const Rational& alpha, int n_max) {
  std::vector<Rational> dag(static_cast<size_t>(n_max + 1));
  dag[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    Rational s;
    for (int k = 1; k <= n; ++k) {
      Rational term = Rational(binomial(n, k)) * rpow(alpha, static_cast<long>(k) * (n - k)) * dag[static_cast<size_t>(n - k)];
      s += (k % 2) ? term : Rational(-term);
    }
    dag[static_cast<size_t>(n)] = s;
  }
  return dag;
}

// dag2_n = sum_k C(n,k) alpha^(k(n-k)) dag_k dag_(n-k)
inline std::vector<Rational> dag2_counts_double_sum(const Rational& alpha, int n_max) {
  auto dag = dag_counts_recurrence(alpha, n_max);
  std::vector<Rational> out;
  for (int n = 0; n <= n_max; ++n) {
    Rational s;
    for (int k = 0; k <= n; ++k)
      s += Rational(binomial(n, k)) * rpow(alpha, static_cast<long>(k) * (n - k)) * dag[static_cast<size_t>(k)] *
           dag[static_cast<size_t>(n - k)];
    out.push_back(s);
  }
  return out;
}

struct EtaCheck {
  std::vector<Integer> eta;
  std::vector<Integer> scd;
};

// eta_n = 2^C(n,2) it_n and scd_n = eta_n + sum_{t=1}^{n-1} C(n-1,t-1) scd_t eta_(n-t)
inline EtaCheck wright_recurrence_eta(int n_max, Evaluator& ev) {
  if (ev.field()->alpha != 2) fail(Errc::UnsupportedAlpha, "the eta recurrence is stated for alpha = 2");
  auto it = integer_counts(build_family("it", ev.field()), n_max, ev);
  auto scd = integer_counts(build_family("scd", ev.field()), n_max, ev);
  EtaCheck out;
  for (int n = 0; n <= n_max; ++n) out.eta.push_back(ipow(2, static_cast<unsigned long>(choose2(n))) * it[static_cast<size_t>(n)]);
  for (int n = 1; n <= n_max; ++n) {
    Integer rhs = out.eta[static_cast<size_t>(n)];
    for (int t = 1; t < n; ++t) rhs += binomial(n - 1, t - 1) * scd[static_cast<size_t>(t)] * out.eta[static_cast<size_t>(n - t)];
    if (rhs != scd[static_cast<size_t>(n)])
      fail(Errc::RecurrenceMismatch, "n = " + std::to_string(n) + ": recurrence gives " + rhs.get_str() +
                                         ", series gives " + scd[static_cast<size_t>(n)].get_str());
  }
  out.scd = scd;
  return out;
}

}  // namespace gdseries
