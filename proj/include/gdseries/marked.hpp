#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "algnum.hpp"

namespace gdseries {

// Ordered set of marking-variable names; interned like FieldSpec.
struct MarkVars {
  std::vector<std::string> names;

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
  int size() const { return static_cast<int>(names.size()); }
};

using VarsPtr = const MarkVars*;

inline constexpr int kMaxMarks = 8;

inline VarsPtr make_vars(const std::vector<std::string>& names) {
  if (names.empty()) return nullptr;
  if (names.size() > kMaxMarks) fail(Errc::InvalidArgument, "at most 8 marking variables");
  static std::mutex mu;
  static std::deque<MarkVars> registry;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& v : registry)
    if (v.names == names) return &v;
  registry.push_back(MarkVars{names});
  return &registry.back();
}

inline VarsPtr join_vars(VarsPtr a, VarsPtr b) {
  if (a == b || !b) return a;
  if (!a) return b;
  fail(Errc::VariableSetMismatch, "marking variable sets differ");
}

// exponents packed 8 bits per variable
using Monomial = std::uint64_t;

inline int mono_exp(Monomial m, int var) { return static_cast<int>((m >> (8 * var)) & 0xff); }

inline Monomial mono_make(const std::vector<int>& exps) {
  Monomial m = 0;
  for (size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 127) fail(Errc::InvalidArgument, "mark exponent out of range");
    m |= static_cast<Monomial>(exps[i]) << (8 * i);
  }
  return m;
}

inline Monomial mono_mul(Monomial a, Monomial b) {
  if ((a | b) & 0x8080808080808080ULL) fail(Errc::InvalidArgument, "mark exponent overflow");
  return a + b;
}

class MarkedScalar {
 public:
  MarkedScalar() = default;
  MarkedScalar(long v) : MarkedScalar(AlgNum(v)) {}
  MarkedScalar(int v) : MarkedScalar(AlgNum(v)) {}
  MarkedScalar(const Rational& r) : MarkedScalar(AlgNum(r)) {}
  MarkedScalar(const AlgNum& a) {
    if (!a.is_zero()) terms_.emplace_back(0, a);
  }

  static MarkedScalar variable(VarsPtr vars, const std::string& name) {
    int i = vars ? vars->index_of(name) : -1;
    if (i < 0) fail(Errc::VariableSetMismatch, "unknown marking variable '" + name + "'");
    return monomial(vars, Monomial(1) << (8 * i), AlgNum(1));
  }

  static MarkedScalar monomial(VarsPtr vars, Monomial m, const AlgNum& c) {
    MarkedScalar out;
    out.vars_ = vars;
    if (!c.is_zero()) out.terms_.emplace_back(m, c);
    return out;
  }

  VarsPtr vars() const { return vars_; }
  const std::vector<std::pair<Monomial, AlgNum>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

  FieldPtr field() const {
    FieldPtr f = nullptr;
    for (const auto& t : terms_) f = join_fields(f, t.second.field());
    return f;
  }

  AlgNum coeff(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, Monomial key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return AlgNum();
  }

  AlgNum constant_term() const { return coeff(0); }

  const AlgNum& as_constant() const {
    static const AlgNum zero;
    if (!is_constant()) fail(Errc::InvalidArgument, "expected a mark-free scalar, got " + str());
    return terms_.empty() ? zero : terms_[0].second;
  }

  AlgNum extract(const std::vector<int>& expvec) const {
    if (vars_ && static_cast<int>(expvec.size()) > vars_->size())
      fail(Errc::VariableSetMismatch, "exponent vector longer than variable set");
    for (size_t i = 0; i < expvec.size(); ++i)
      if (expvec[i] < 0 || expvec[i] > 127) return AlgNum();
    return coeff(mono_make(expvec));
  }

  int degree(int var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, mono_exp(t.first, var));
    return d;
  }

  // coefficient of var^k, still over the same variable set
  MarkedScalar slice(int var, int k) const {
    MarkedScalar out;
    out.vars_ = vars_;
    Monomial shift = static_cast<Monomial>(k) << (8 * var);
    for (const auto& t : terms_)
      if (mono_exp(t.first, var) == k) out.terms_.emplace_back(t.first - shift, t.second);
    return out;
  }

  MarkedScalar substitute(int var, const AlgNum& value) const {
    MarkedScalar out;
    out.vars_ = vars_;
    std::map<Monomial, AlgNum> acc;
    for (const auto& t : terms_) {
      int e = mono_exp(t.first, var);
      Monomial rest = t.first - (static_cast<Monomial>(e) << (8 * var));
      acc[rest] += t.second * pow(value, e);
    }
    for (auto& [m, c] : acc)
      if (!c.is_zero()) out.terms_.emplace_back(m, std::move(c));
    return out;
  }

  friend MarkedScalar operator+(const MarkedScalar& a, const MarkedScalar& b) { return merge(a, b, false); }
  friend MarkedScalar operator-(const MarkedScalar& a, const MarkedScalar& b) { return merge(a, b, true); }

  MarkedScalar operator-() const {
    MarkedScalar out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  friend MarkedScalar operator*(const MarkedScalar& a, const MarkedScalar& b) {
    MarkedScalar out;
    out.vars_ = join_vars(a.vars_, b.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
      AlgNum c = a.terms_[0].second * b.terms_[0].second;
      if (!c.is_zero()) out.terms_.emplace_back(mono_mul(a.terms_[0].first, b.terms_[0].first), std::move(c));
      return out;
    }
    std::vector<std::pair<Monomial, AlgNum>> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) prods.emplace_back(mono_mul(x.first, y.first), x.second * y.second);
    std::stable_sort(prods.begin(), prods.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    for (size_t i = 0; i < prods.size();) {
      size_t j = i + 1;
      AlgNum c = std::move(prods[i].second);
      while (j < prods.size() && prods[j].first == prods[i].first) c += prods[j++].second;
      if (!c.is_zero()) out.terms_.emplace_back(prods[i].first, std::move(c));
      i = j;
    }
    return out;
  }

  friend MarkedScalar operator*(const MarkedScalar& a, const AlgNum& c) {
    MarkedScalar out;
    out.vars_ = a.vars_;
    if (c.is_zero()) return out;
    out.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) out.terms_.emplace_back(t.first, t.second * c);
    return out;
  }

  MarkedScalar& operator+=(const MarkedScalar& b) { return *this = *this + b; }
  MarkedScalar& operator-=(const MarkedScalar& b) { return *this = *this - b; }
  MarkedScalar& operator*=(const MarkedScalar& b) { return *this = *this * b; }
  MarkedScalar& operator*=(const AlgNum& c) { return *this = *this * c; }

  friend bool operator==(const MarkedScalar& a, const MarkedScalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MarkedScalar& a, const MarkedScalar& b) { return !(a == b); }

  std::string monomial_str(Monomial m) const {
    std::string s;
    for (int i = 0; vars_ && i < vars_->size(); ++i) {
      int e = mono_exp(m, i);
      if (e == 0) continue;
      if (!s.empty()) s += "*";
      s += vars_->names[static_cast<size_t>(i)];
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  std::vector<int> exponents(Monomial m) const {
    std::vector<int> e;
    for (int i = 0; vars_ && i < vars_->size(); ++i) e.push_back(mono_exp(m, i));
    return e;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    if (is_constant()) return terms_[0].second.str();
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string cs = c.str();
      bool neg = c.is_rational() && c.rational() < 0;
      if (neg) cs = (-c).str();
      if (!c.is_rational()) cs = "(" + cs + ")";
      std::string mono = monomial_str(m);
      std::string term;
      if (mono.empty())
        term = cs;
      else if (cs == "1")
        term = mono;
      else
        term = cs + "*" + mono;
      if (out.empty())
        out = (neg ? "-" : "") + term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out;
  }

 private:
  static MarkedScalar merge(const MarkedScalar& a, const MarkedScalar& b, bool negate) {
    MarkedScalar out;
    out.vars_ = join_vars(a.vars_, b.vars_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
        out.terms_.emplace_back(b.terms_[j].first, negate ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        AlgNum c = negate ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!c.is_zero()) out.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i, ++j;
      }
    }
    return out;
  }

  VarsPtr vars_ = nullptr;
  std::vector<std::pair<Monomial, AlgNum>> terms_;  // ascending monomials, nonzero values
};

}  // namespace gdseries
