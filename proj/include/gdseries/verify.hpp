#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "calibration.hpp"
#include "golden.hpp"
#include "io.hpp"

namespace gdseries::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = true;
  std::string detail;  // counterexample on failure
  double seconds = 0;
};

struct Report {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  // fn returns an empty string on success, otherwise the counterexample
  void run(const std::string& suite, const std::string& name, const std::function<std::string()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r{suite, name, true, "", 0};
    try {
      r.detail = fn();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks.push_back(r);
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& c : checks) {
      json j{{"suite", c.suite}, {"check", c.name}, {"pass", c.pass}};
      if (!c.pass) j["counterexample"] = c.detail;
      arr.push_back(j);
    }
    return arr;
  }
};

// first differing entry, or "" when equal to the common z-order
inline std::string table_diff(const CoeffGf& a, const CoeffGf& b) {
  int z = std::min(a.z_order(), b.z_order());
  CoeffGf x = a.truncate(z), y = b.truncate(z);
  std::map<CoeffGf::Key, int> keys;
  for (const auto& [k, v] : x.table()) keys[k] = 1;
  for (const auto& [k, v] : y.table()) keys[k] = 1;
  for (const auto& [k, _] : keys) {
    MarkedScalar u = x.get(k.first, k.second), w = y.get(k.first, k.second);
    if (u != w)
      return "(m,l) = (" + std::to_string(k.first) + "," + std::to_string(k.second) + "): " + u.str() + " vs " + w.str();
  }
  return "";
}

inline std::string zero_diff(const CoeffGf& a) {
  if (a.is_zero()) return "";
  const auto& [k, v] = *a.table().begin();
  return "nonzero entry (m,l) = (" + std::to_string(k.first) + "," + std::to_string(k.second) + "): " + v.str();
}

inline std::string expect_eq(const std::string& what, const std::string& got, const std::string& want) {
  return got == want ? "" : what + ": got " + got + ", expected " + want;
}

// histogram keys mapped onto mark exponents; entries of idx < 0 are dropped
inline MarkedScalar histogram_poly(const oracle::Histogram& h, VarsPtr vars, const std::vector<int>& idx) {
  MarkedScalar p;
  for (const auto& [k, v] : h) {
    std::vector<int> e(static_cast<size_t>(vars ? vars->size() : 0), 0);
    for (size_t i = 0; i < k.size() && i < idx.size(); ++i)
      if (idx[i] >= 0) e[static_cast<size_t>(idx[i])] += k[i];
    p += MarkedScalar::monomial(vars, mono_make(e), AlgNum(Rational(Integer(std::to_string(v)))));
  }
  return p;
}

inline void appendix_suite(Report& rep) {
  const std::string S = "appendix";
  FieldPtr f = make_field(2);
  Evaluator ev(f);
  auto seq = [&](const std::string& name, const Expr& e, int from, const std::vector<const char*>& want) {
    rep.run(S, name, [&, e, from]() -> std::string {
      int top = from + static_cast<int>(want.size()) - 1;
      Egf s = ev.eval(e, top);
      for (size_t i = 0; i < want.size(); ++i) {
        int n = from + static_cast<int>(i);
        std::string got = s.count(n, f).str();
        if (got != want[i]) return name + "_" + std::to_string(n) + ": got " + got + ", expected " + want[i];
      }
      return "";
    });
  };
  const auto& b = detail::base();
  seq("it", b.IT, 1, golden::it);
  seq("it2", pow(b.IT, 2), 1, golden::it2);
  seq("ssd", b.SSD, 0, golden::ssd);
  Transfer tr(ev);
  auto diag = [&](const std::string& name, const Expr& e, const std::vector<const char*>& want) {
    rep.run(S, name, [&, e]() -> std::string {
      int z = static_cast<int>(want.size()) - 1;
      CoeffGf c = tr(e, 1, z);
      for (int k = 0; k <= z; ++k) {
        std::string r = expect_eq(name + "(" + std::to_string(k) + "," + std::to_string(k) + ")",
                                  c.get(k, k).str(), want[static_cast<size_t>(k)]);
        if (!r.empty()) return r;
        for (int l = 0; l <= z; ++l)
          if (l != k && !c.get(k, l).is_zero()) return name + " off-diagonal entry at m = " + std::to_string(k);
      }
      return "";
    });
  };
  diag("cg_diagonal", b.CG, golden::cg_diag);
  diag("it_diagonal", b.IT, golden::it_diag);
  rep.run(S, "scd_table", [&]() -> std::string {
    CoeffGf c = tr(b.SCD, 2, 6);
    for (int m = 0; m <= 6; ++m)
      for (int l = 0; l <= 6; ++l) {
        const auto& row = golden::scd_table[static_cast<size_t>(m)];
        std::string want = static_cast<size_t>(l) < row.size() ? row[static_cast<size_t>(l)] : "0";
        std::string r = expect_eq("scd(" + std::to_string(m) + "," + std::to_string(l) + ")", c.get(m, l).str(), want);
        if (!r.empty()) return r;
      }
    return "";
  });
  rep.run(S, "wright_polynomials", [&]() -> std::string {
    auto ws = wright_polynomials(tr(b.SCD, 2, 6), 6);
    for (int m = 0; m <= 6; ++m) {
      auto want = golden::expand(golden::wright[static_cast<size_t>(m)]);
      const auto& got = ws[static_cast<size_t>(m)].coeffs;
      for (size_t d = 0; d < std::max(want.size(), got.size()); ++d) {
        Rational g = d < got.size() ? got[d].rational() : Rational(0);
        Rational w = d < want.size() ? want[d] : Rational(0);
        if (g != w)
          return "w_" + std::to_string(m) + " [n^" + std::to_string(d) + "]: got " + to_string(g) + ", expected " +
                 to_string(w);
      }
    }
    return "";
  });
}

inline void oracle_suite(Report& rep, int max_n, oracle::Limits lim = {}) {
  const std::string S = "oracle";
  FieldPtr f = make_field(2);
  Evaluator ev(f);
  auto fam = [&](const char* n) { return build_family(n, f); };
  auto count_at = [&](const FamilySpec& s, int n) { return family_counts(s, n, ev)[static_cast<size_t>(n)]; };
  auto compare = [&](const std::string& label, int n, const MarkedScalar& series, const MarkedScalar& brute) {
    if (series == brute) return std::string();
    return label + " n = " + std::to_string(n) + ": series " + series.str() + ", enumeration " + brute.str();
  };
  auto num = [](oracle::Count c) { return MarkedScalar(AlgNum(Rational(Integer(std::to_string(c))))); };

  rep.run(S, "graphs", [&]() -> std::string {
    for (int n = 0; n <= std::min(max_n, lim.unsafe ? 8 : 6); ++n) {
      auto g = oracle::enumerate_graphs(n, lim);
      std::string r = compare("connected graphs", n, count_at(fam("cg"), n), num(g.connected));
      if (r.empty()) {
        auto gt = fam("g_t");
        r = compare("graphs by components", n, count_at(gt, n), histogram_poly(g.by_components, gt.vars, {0}));
      }
      if (!r.empty()) return r;
    }
    return "";
  });
  rep.run(S, "digraphs", [&]() -> std::string {
    for (int n = 0; n <= std::min(max_n, lim.unsafe ? 6 : 5); ++n) {
      auto d = oracle::enumerate_digraphs(n, lim);
      std::vector<std::string> rs = {
          compare("strongly connected", n, count_at(fam("scd"), n), num(d.strongly_connected)),
          compare("semi-strong", n, count_at(fam("ssd"), n), num(d.semi_strong)),
          compare("acyclic", n, count_at(fam("dag"), n), num(d.dag)),
          compare("all digraphs", n, count_at(fam("d"), n), num(d.total)),
          compare("by scc count", n, count_at(fam("dhat_t"), n), histogram_poly(d.by_scc, fam("dhat_t").vars, {0})),
          compare("semi-strong by scc count", n, count_at(fam("ssd_t"), n),
                  histogram_poly(d.semi_strong_by_scc, fam("ssd_t").vars, {0})),
          compare("by source-like components", n, count_at(fam("dhat_st"), n),
                  histogram_poly(d.by_source_like, fam("dhat_st").vars, {0, 1})),
          compare("by component types", n, count_at(fam("d_uvyt"), n),
                  histogram_poly(d.by_type, fam("d_uvyt").vars, {0, 1, 2, 3})),
      };
      for (const auto& r : rs)
        if (!r.empty()) return r;
    }
    return "";
  });
  rep.run(S, "tournaments", [&]() -> std::string {
    for (int n = 0; n <= std::min(max_n, lim.unsafe ? 8 : 6); ++n) {
      auto t = oracle::enumerate_tournaments(n, lim);
      auto tt = fam("t_t");
      std::string r = compare("irreducible tournaments", n, count_at(fam("it"), n), num(t.irreducible));
      if (r.empty()) r = compare("tournaments by parts", n, count_at(tt, n), histogram_poly(t.by_parts, tt.vars, {0}));
      if (!r.empty()) return r;
    }
    return "";
  });
  rep.run(S, "calibrate_sat", [&]() -> std::string {
    auto c = calibrate_sat_model(std::min(max_n, 3), lim);
    return c.chosen == oracle::Universe::Full ? "" : "calibration chose the half universe";
  });
  rep.run(S, "2cnf", [&]() -> std::string {
    for (int n = 0; n <= std::min(max_n, lim.unsafe ? 4 : 3); ++n) {
      auto c = oracle::enumerate_2cnf(n, oracle::Universe::Full, lim);
      auto st = fam("cnf_st");
      std::vector<std::string> rs = {
          compare("satisfiable", n, count_at(fam("sat"), n), num(c.satisfiable)),
          compare("strongly connected implication digraphs", n, count_at(fam("cscc"), n),
                  num(c.strongly_connected)),
          compare("by contradictory components and ordinary pairs", n, count_at(st, n),
                  histogram_poly(c.by_types_pairs, st.vars, {0, 1})),
      };
      for (const auto& r : rs)
        if (!r.empty()) return r;
    }
    return "";
  });
  rep.run(S, "wright_eta_recurrence", [&]() -> std::string {
    auto chk = wright_recurrence_eta(std::min(max_n, 5), ev);
    for (int n = 0; n <= std::min(max_n, 5); ++n) {
      auto d = oracle::enumerate_digraphs(n, lim);
      if (chk.scd[static_cast<size_t>(n)] != Integer(std::to_string(d.strongly_connected)))
        return "scd_" + std::to_string(n) + " differs from enumeration";
    }
    return "";
  });
}

// smallest basis above g that D = root_degree can express
inline int next_basis(FieldPtr f, int g) {
  for (int b = g + 1;; ++b) {
    try {
      check_basis(f, b);
      return b;
    } catch (const Error&) {
    }
  }
}

// Q(A B) through the bivariate product with explicit alpha-root factors
inline CoeffGf zform_product_rule(Transfer& tr, const Expr& a, const Expr& b, int beta, int z) {
  FieldPtr f = tr.field();
  Evaluator& ev = tr.evaluator();
  CoeffGf qa = tr(a, beta, z), qb = tr(b, beta, z);
  Bivariate sum;
  auto add = [&](const Bivariate& x) {
    for (const auto& [k, v] : x) sum[k] += v;
  };
  auto reach = [&](const CoeffGf& q) { return std::max(0, z - std::min(0, q.m_min().value_or(0))); };
  add(zform_mul(to_zform(qa), zform_substitution(ev.eval(b, reach(qa)), f, beta, reach(qa)), z));
  add(zform_mul(to_zform(qb), zform_substitution(ev.eval(a, reach(qb)), f, beta, reach(qb)), z));
  return from_zform(sum, f, beta, z);
}

// H(A) chain rule through the bivariate route, H = F'(A)
inline CoeffGf zform_chain_rule(Transfer& tr, const Egf& h, const Expr& a, int beta, int z) {
  CoeffGf qa = tr(a, beta, z);
  Bivariate x = zform_mul(to_zform(qa), zform_substitution(h, tr.field(), beta, z - qa.m_min().value_or(z)), z);
  return from_zform(x, tr.field(), beta, z);
}

inline void rules_suite(Report& rep, int z = 8, const std::vector<std::string>& only = {}) {
  const std::string S = "rules";
  FieldPtr f = make_field(2);
  Evaluator ev(f);
  Transfer tr(ev);
  const Expr G = detail::base().G;
  std::vector<std::string> names = only.empty() ? family_names() : only;
  for (const auto& name : names) {
    FamilySpec spec = build_family(name, f);
    const Expr F = spec.formula;
    const int g = spec.grade;
    rep.run(S, name + ": declared grade", [&]() { return expect_eq("grade", std::to_string(infer_grade(F)), std::to_string(g)); });
    if (g == 0) {
      rep.run(S, name + ": subcritical kernel", [&]() { return zero_diff(tr(F, 1, z)); });
      continue;
    }
    const int up = next_basis(f, g);
    rep.run(S, name + ": QΔ = 0", [&]() { return zero_diff(tr(robin(F, 1), g, z)); });
    rep.run(S, name + ": ring inclusion", [&]() { return zero_diff(tr(F, up, z)); });
    rep.run(S, name + ": commutative diagram", [&]() {
      return table_diff(basis_change(tr(F, g, z), up), tr(robin(F, g - up), up, z));
    });
    // the bivariate routes multiply dense root powers; marks are pinned to keep them small
    Expr Fu = F;
    if (spec.vars)
      for (int i = 0; i < spec.vars->size(); ++i) Fu = substitute_mark(Fu, i, AlgNum(i + 2));
    rep.run(S, name + ": Leibniz (bivariate route)", [&]() {
      return table_diff(tr(Fu * G, g, z), zform_product_rule(tr, Fu, G, g, z));
    });
    rep.run(S, name + ": Leibniz (stored form)", [&]() {
      CoeffGf qa = tr(F, g, z), qg = tr(G, g, z);
      auto reach = [&](const CoeffGf& q) { return std::max(0, insertion_order(q, z)); };
      CoeffGf rule = insert(ev.eval(G, reach(qa)), qa, z) + insert(ev.eval(F, reach(qg)), qg, z);
      return table_diff(tr(F * G, g, z), rule);
    });
    rep.run(S, name + ": power vs product", [&]() {
      std::string r = table_diff(tr(pow(F, 2), g, z), tr(F * F, g, z));
      if (r.empty()) r = table_diff(tr(pow(F, 3), g, z), tr(F * F * F, g, z));
      return r;
    });
    bool zero_const = ev.eval(F, 0)[0].is_zero();
    if (zero_const) {
      rep.run(S, name + ": chain rule exp (bivariate route)", [&]() {
        Egf h = gdseries::exp(ev.eval(Fu, z));
        return table_diff(tr(gdseries::exp(Fu), g, z), zform_chain_rule(tr, h, Fu, g, z));
      });
    } else {
      rep.run(S, name + ": chain rule log (bivariate route)", [&]() {
        Egf h = inverse(ev.eval(Fu, z));
        return table_diff(tr(gdseries::log(Fu), g, z), zform_chain_rule(tr, h, Fu, g, z));
      });
      rep.run(S, name + ": inverse cross terms cancel", [&]() {
        Expr Fi = inverse(F);
        CoeffGf qf = tr(F, g, z), qi = tr(Fi, g, z);
        auto reach = [&](const CoeffGf& q) { return std::max(0, insertion_order(q, z)); };
        CoeffGf s = insert(ev.eval(Fi, reach(qf)), qf, z) + insert(ev.eval(F, reach(qi)), qi, z);
        std::string r = zero_diff(s);
        if (r.empty()) r = zero_diff(tr(F * Fi, g, z));
        return r;
      });
      rep.run(S, name + ": exp(log A) = A", [&]() { return table_diff(tr(gdseries::exp(gdseries::log(F)), g, z), tr(F, g, z)); });
    }
    rep.run(S, name + ": derivative rule", [&]() {
      std::string r = table_diff(tr(integ(deriv(F)), g, z), tr(F, g, z));
      if (r.empty()) r = table_diff(tr(deriv(integ(F)), g, z), tr(F, g, z));
      if (r.empty()) r = table_diff(tr(deriv(F * G), g, z), tr(deriv(F) * G + F * deriv(G), g, z));
      return r;
    });
    rep.run(S, name + ": shift round trip", [&]() {
      AlgNum a(f->alpha);
      return table_diff(tr(scale_z(scale_z(F, a), a.inverse()), g, z), tr(F, g, z));
    });
    if (spec.vars) {
      rep.run(S, name + ": mark-slice commutation", [&]() -> std::string {
        CoeffGf q = tr(F, g, z);
        for (int var = 0; var < spec.vars->size(); ++var) {
          int deg = 0;
          for (const auto& [k, v] : q.table()) deg = std::max(deg, v.degree(var));
          // Q at deg+2 points, then Lagrange back to the [u^k] slices
          std::vector<Rational> pts;
          std::vector<CoeffGf> vals;
          for (int i = 0; i <= deg + 1; ++i) {
            pts.push_back(i);
            Evaluator ev2(f);
            Transfer tr2(ev2);
            vals.push_back(tr2(substitute_mark(F, var, AlgNum(i)), g, z));
          }
          for (int k = 0; k <= deg + 1; ++k) {
            CoeffGf slice(f, g, z);
            for (size_t i = 0; i < pts.size(); ++i) {
              // coefficient of x^k in prod_{j != i} (x - p_j)/(p_i - p_j)
              std::vector<Rational> poly{1};
              Rational den = 1;
              for (size_t j = 0; j < pts.size(); ++j) {
                if (j == i) continue;
                std::vector<Rational> next(poly.size() + 1);
                for (size_t d = 0; d < poly.size(); ++d) {
                  next[d + 1] += poly[d];
                  next[d] -= poly[d] * pts[j];
                }
                poly = next;
                den *= pts[i] - pts[j];
              }
              AlgNum w(poly[static_cast<size_t>(k)] / den);
              if (!w.is_zero()) slice = slice + vals[i].map_values([&](const MarkedScalar& v) { return v * w; });
            }
            std::string r = table_diff(slice, q.slice(var, k));
            if (!r.empty())
              return "[" + spec.vars->names[static_cast<size_t>(var)] + "^" + std::to_string(k) + "] " + r;
          }
        }
        return "";
      });
    }
  }
  rep.run(S, "derivative of atoms is a shift", [&]() -> std::string {
    for (int beta = 1; beta <= 2; ++beta) {
      Expr A = atom(beta);
      std::string r = table_diff(tr(deriv(A), beta, z), tr(scale_z(A, AlgNum(rpow(f->alpha, beta))), beta, z));
      if (!r.empty()) return "beta = " + std::to_string(beta) + ": " + r;
    }
    return "";
  });
  rep.run(S, "Robin across bases", [&]() {
    const auto& b = detail::base();
    return table_diff(basis_change(tr(b.IT, 1, z), 2), tr(b.RIT, 2, z));
  });
}

}  // namespace gdseries::verify
