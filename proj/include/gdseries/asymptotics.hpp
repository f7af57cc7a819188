#pragma once

#include <optional>
#include <string>
#include <vector>

#include "families.hpp"
#include "transfer.hpp"

namespace gdseries {

struct ExpansionEstimate {
  long n = 0;
  int terms_used = 0;  // the cutoff M
  AlgNum value;
  std::optional<AlgNum> truth;
  std::optional<Rational> rel_error;
  std::vector<std::pair<int, AlgNum>> contributions;  // (m, term), already scaled

  double rel_error_log2() const { return rel_error ? log2_abs(*rel_error) : 0.0; }
};

// alpha^(beta C(n,2) - m n) sum_l n^(falling l) a°_{m,l}
inline AlgNum expansion_term(const CoeffGf& c, long n, int m, const std::vector<int>& marks = {}) {
  AlgNum s;
  for (auto it = c.table().lower_bound({m, -1}); it != c.table().end() && it->first.first == m; ++it) {
    int l = it->first.second;
    if (l > n) continue;
    s += it->second.extract(marks) * AlgNum(Rational(falling(n, l)));
  }
  if (s.is_zero()) return s;
  return s * alpha_ipow(c.field(), c.beta() * choose2(n) - static_cast<long>(m) * n);
}

inline ExpansionEstimate partial_sum(const CoeffGf& c, long n, int M, const std::vector<int>& marks = {}) {
  if (M > c.z_order())
    fail(Errc::TruncationError, "table known to z-order " + std::to_string(c.z_order()) + ", asked for M = " +
                                    std::to_string(M));
  ExpansionEstimate est;
  est.n = n;
  est.terms_used = M;
  auto mm = c.m_min();
  if (!mm) return est;
  for (int m = *mm; m <= M; ++m) {
    AlgNum t = expansion_term(c, n, m, marks);
    est.value += t;
    est.contributions.emplace_back(m, t);
  }
  return est;
}

inline ExpansionEstimate partial_sum(const CoeffGf& c, long n, int M, const AlgNum& truth,
                                     const std::vector<int>& marks = {}) {
  ExpansionEstimate est = partial_sum(c, n, M, marks);
  est.truth = truth;
  if (!truth.is_zero()) est.rel_error = abs((est.value - truth).rational() / truth.rational());
  return est;
}

struct ErrorCell {
  long n;
  int M;
  Rational rel_error;
  double log2;
};

struct ErrorProfile {
  std::string family;
  int beta = 1;
  std::optional<int> m_min;
  std::vector<ErrorCell> cells;

  const ErrorCell& at(long n, int M) const {
    for (const auto& c : cells)
      if (c.n == n && c.M == M) return c;
    fail(Errc::InvalidArgument, "no cell for n = " + std::to_string(n) + ", M = " + std::to_string(M));
  }

  // d log2(rel_error) / dn at fixed M
  double slope(int M, long n1, long n2) const {
    return (at(n2, M).log2 - at(n1, M).log2) / static_cast<double>(n2 - n1);
  }
};

// exact counts n! [z^n] of the formula, matching the expansion's normalization
inline std::vector<AlgNum> expansion_truth(const FamilySpec& spec, long n_max, Evaluator& ev,
                                           const std::vector<int>& marks = {}) {
  Egf s = ev.eval(spec.formula, static_cast<int>(n_max));
  std::vector<AlgNum> out;
  for (long n = 0; n <= n_max; ++n)
    out.push_back(s[static_cast<int>(n)].extract(marks) * AlgNum(Rational(factorial(n))));
  return out;
}

inline ErrorProfile error_profile(const FamilySpec& spec, int beta, const std::vector<long>& ns,
                                  const std::vector<int>& Ms, Evaluator& ev) {
  long n_max = 0;
  int m_top = 0;
  for (long n : ns) n_max = std::max(n_max, n);
  for (int m : Ms) m_top = std::max(m_top, m);
  Transfer tr(ev);
  CoeffGf c = tr(spec.formula, beta, m_top);
  auto truth = expansion_truth(spec, n_max, ev);
  ErrorProfile prof;
  prof.family = spec.name;
  prof.beta = beta;
  prof.m_min = c.m_min();
  for (long n : ns)
    for (int M : Ms) {
      auto est = partial_sum(c, n, M, truth[static_cast<size_t>(n)]);
      Rational e = est.rel_error.value_or(Rational(0));
      prof.cells.push_back({n, M, e, log2_abs(e)});
    }
  return prof;
}

struct WrightPoly {
  int m = 0;
  std::vector<AlgNum> coeffs;  // coeffs[d] multiplies n^d

  AlgNum operator()(long n) const {
    AlgNum s, p(1);
    for (const auto& c : coeffs) {
      s += c * p;
      p *= AlgNum(n);
    }
    return s;
  }

  std::string str() const {
    std::string out;
    for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
      const AlgNum& c = coeffs[static_cast<size_t>(d)];
      if (c.is_zero()) continue;
      bool neg = c.is_rational() && c.rational() < 0;
      std::string cs = neg ? (-c).str() : c.str();
      std::string mono = d == 0 ? "" : (d == 1 ? "n" : "n^" + std::to_string(d));
      std::string term = mono.empty() ? cs : (cs == "1" ? mono : cs + "*" + mono);
      if (out.empty())
        out = (neg ? "-" : "") + term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
  }
};

// w_m(n) = sum_l a°_{m,l} n^(falling l), expanded in powers of n
inline std::vector<WrightPoly> wright_polynomials(const CoeffGf& c, int m_max, const std::vector<int>& marks = {}) {
  std::vector<WrightPoly> out;
  for (int m = 0; m <= m_max; ++m) {
    WrightPoly w;
    w.m = m;
    int lmax = c.max_l(m);
    w.coeffs.assign(static_cast<size_t>(std::max(lmax, 0) + 1), AlgNum());
    std::vector<Rational> fall{1};  // n^(falling l) in the monomial basis
    for (int l = 0; l <= lmax; ++l) {
      AlgNum a = c.get(m, l).extract(marks);
      if (!a.is_zero())
        for (size_t d = 0; d < fall.size(); ++d) w.coeffs[d] += a * AlgNum(fall[d]);
      std::vector<Rational> next(fall.size() + 1);
      for (size_t d = 0; d < fall.size(); ++d) {
        next[d + 1] += fall[d];
        next[d] -= fall[d] * l;
      }
      fall = next;
    }
    out.push_back(w);
  }
  return out;
}

namespace detail {

struct DigraphInputs {
  std::vector<Rational> ssd, it, it2, sat;
};

inline DigraphInputs digraph_inputs(int n_max, Evaluator& ev) {
  FieldPtr f = ev.field();
  if (f->alpha != 2) fail(Errc::UnsupportedAlpha, "closed forms are stated for alpha = 2");
  DigraphInputs in;
  auto grab = [&](const Expr& e, std::vector<Rational>& dst) {
    Egf s = ev.eval(e, n_max);
    for (int n = 0; n <= n_max; ++n) dst.push_back(s[n].as_constant().rational() * Rational(factorial(n)));
  };
  const auto& b = base();
  grab(b.SSD, in.ssd);
  grab(b.IT, in.it);
  grab(pow(b.IT, 2), in.it2);
  Egf sat = ev.eval(b.SAT, n_max).with_kind(Kind::Implication);
  for (int n = 0; n <= n_max; ++n) in.sat.push_back(sat.count(n, f).as_constant().rational());
  return in;
}

}  // namespace detail

// scd°_{m,l} = 2^(m(m+1)/2 + l(l-m)) ssd_{m-l}/(m-l)! b_{2l-m}/(2l-m)!, b_k = [k=0] - 2 it_k + it2_k
inline Rational scd_closed_form(int m, int l, Evaluator& ev) {
  if (m < 0 || 2 * l < m || l > m) return 0;
  auto in = detail::digraph_inputs(m, ev);
  int j = 2 * l - m;
  Rational b = Rational(j == 0 ? 1 : 0) - 2 * in.it[static_cast<size_t>(j)] + in.it2[static_cast<size_t>(j)];
  long e = static_cast<long>(m) * (m + 1) / 2 + static_cast<long>(l) * (l - m);
  return rpow(2, e) * in.ssd[static_cast<size_t>(m - l)] / Rational(factorial(m - l)) * b / Rational(factorial(j));
}

// s°_m = 2^C(m+1,2) [sum_{k<m} C(m,k) sat_k it_{m-k} / 2^(k^2) - sat_m / 2^(m^2)], s°_0 = 0
inline Rational sat_correction(int m, Evaluator& ev) {
  if (m == 0) return 0;
  auto in = detail::digraph_inputs(m, ev);
  Rational s;
  for (int k = 0; k < m; ++k)
    s += Rational(binomial(m, k)) * in.sat[static_cast<size_t>(k)] * in.it[static_cast<size_t>(m - k)] /
         rpow(2, static_cast<long>(k) * k);
  s -= in.sat[static_cast<size_t>(m)] / rpow(2, static_cast<long>(m) * m);
  return rpow(2, choose2(m + 1)) * s;
}

// the same constant read off the SAT Coefficient GF: [m=0] - m! a°_{m,m}
inline Rational sat_correction_from_table(const CoeffGf& c, int m) {
  Rational v = -Rational(factorial(m)) * c.get(m, m).as_constant().rational();
  return m == 0 ? Rational(1 + v) : v;
}

// p_{n,m+1} ~ C(n,m) 2^m dag2_m / 2^(mn)
struct SccLeading {
  int m = 0;
  Rational dag2;
  Rational constant;  // 2^m dag2_m
  Rational diagonal;  // 2^m dag2_m / m!, the a°_{m,m} of the [t^(m+1)] slice

  Rational operator()(long n) const {
    return Rational(binomial(n, m)) * constant / rpow(2, static_cast<long>(m) * n);
  }
  std::string str() const {
    return "C(n," + std::to_string(m) + ")*" + to_string(constant) + "/2^(" + std::to_string(m) + "*n)";
  }
};

inline SccLeading scc_count_leading(int m) {
  SccLeading out;
  out.m = m;
  out.dag2 = dag2_counts_double_sum(2, m)[static_cast<size_t>(m)];
  out.constant = rpow(2, m) * out.dag2;
  out.diagonal = out.constant / Rational(factorial(m));
  return out;
}

}  // namespace gdseries
