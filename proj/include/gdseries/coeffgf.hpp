#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egf.hpp"

namespace gdseries {

// Table of a°_{m,l}, meaning sum a°_{m,l} z^m alpha^(-C(m,2)/beta) w^l, kept for m <= z_order.
class CoeffGf {
 public:
  using Key = std::pair<int, int>;

  CoeffGf() = default;
  CoeffGf(FieldPtr f, int beta, int z_order) : field_(f), beta_(beta), z_order_(z_order) {}

  FieldPtr field() const { return field_; }
  int beta() const { return beta_; }
  int z_order() const { return z_order_; }
  const std::map<Key, MarkedScalar>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  std::optional<int> m_min() const {
    if (table_.empty()) return std::nullopt;
    return table_.begin()->first.first;
  }

  int max_l(int m) const {
    int l = -1;
    for (auto it = table_.lower_bound({m, -1}); it != table_.end() && it->first.first == m; ++it) l = it->first.second;
    return l;
  }

  MarkedScalar get(int m, int l) const {
    auto it = table_.find({m, l});
    return it == table_.end() ? MarkedScalar() : it->second;
  }

  void add(int m, int l, const MarkedScalar& v) {
    if (m > z_order_ || v.is_zero()) return;
    auto it = table_.find({m, l});
    if (it == table_.end()) {
      table_.emplace(Key{m, l}, v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) table_.erase(it);
  }

  CoeffGf truncate(int z_order) const {
    CoeffGf out(field_, beta_, std::min(z_order, z_order_));
    for (const auto& [k, v] : table_)
      if (k.first <= out.z_order_) out.table_.emplace(k, v);
    return out;
  }

  CoeffGf retag(int beta2) const {
    CoeffGf out = *this;
    out.beta_ = beta2;
    return out;
  }

  template <class Fn>
  CoeffGf map_values(Fn&& fn) const {
    CoeffGf out(field_, beta_, z_order_);
    for (const auto& [k, v] : table_) out.add(k.first, k.second, fn(v));
    return out;
  }

  CoeffGf slice(int var, int k) const {
    return map_values([&](const MarkedScalar& v) { return v.slice(var, k); });
  }
  CoeffGf substitute(int var, const AlgNum& value) const {
    return map_values([&](const MarkedScalar& v) { return v.substitute(var, value); });
  }

  friend CoeffGf operator+(const CoeffGf& a, const CoeffGf& b) {
    CoeffGf out(join_fields(a.field_, b.field_), a.beta_, std::min(a.z_order_, b.z_order_));
    for (const auto& [k, v] : a.table_) out.add(k.first, k.second, v);
    for (const auto& [k, v] : b.table_) out.add(k.first, k.second, v);
    return out;
  }
  friend CoeffGf operator-(const CoeffGf& a, const CoeffGf& b) {
    return a + b.map_values([](const MarkedScalar& v) { return -v; });
  }

  // entrywise equality up to the common z-order
  friend bool operator==(const CoeffGf& a, const CoeffGf& b) {
    int z = std::min(a.z_order_, b.z_order_);
    return a.beta_ == b.beta_ && a.truncate(z).table_ == b.truncate(z).table_;
  }
  friend bool operator!=(const CoeffGf& a, const CoeffGf& b) { return !(a == b); }

 private:
  FieldPtr field_ = nullptr;
  int beta_ = 1;
  int z_order_ = 0;
  std::map<Key, MarkedScalar> table_;
};

// D must hold alpha^(C(m,2)/beta) and alpha^((beta+1)/2)
inline void check_basis(FieldPtr f, int beta) {
  if (beta < 1) fail(Errc::InvalidArgument, "basis beta must be positive");
  long need = beta;  // C(m,2)/beta has denominator dividing beta
  if (beta % 2 == 0) need = std::lcm(need, 2L);
  if (f->root_degree % need != 0)
    fail(Errc::ExponentDenominatorMismatch, "root degree " + std::to_string(f->root_degree) +
                                                " cannot express exponents over " + std::to_string(need) +
                                                " needed by beta = " + std::to_string(beta));
}

inline CoeffGf basis_change(const CoeffGf& c, int beta2) {
  check_basis(c.field(), beta2);
  return c.retag(beta2);
}

inline AlgNum coeffgf_extract(const CoeffGf& c, int m, int l, const std::vector<int>& marks = {}) {
  return c.get(m, l).extract(marks);
}

// Largest k whose insertion term can land at m <= z_order.
inline int insertion_order(const CoeffGf& c, int z_order) {
  auto mm = c.m_min();
  if (!mm || *mm > z_order) return -1;
  return (z_order - *mm) / c.beta();
}

// X(alpha^((beta+1)/2) z^beta w) * C in stored form:
//   sum_k x_k alpha^(k m - beta C(k,2)) c°_{m - beta k, l - k}
inline CoeffGf insert(const Egf& x, const CoeffGf& c, int z_order) {
  CoeffGf out(c.field(), c.beta(), z_order);
  int kmax = insertion_order(c, z_order);
  if (kmax < 0) return out;
  if (x.order() < kmax)
    fail(Errc::TruncationError, "insertion needs the series to order " + std::to_string(kmax));
  const int beta = c.beta();
  for (const auto& [key, v] : c.table()) {
    auto [m0, l0] = key;
    for (int k = 0; m0 + beta * k <= z_order; ++k) {
      if (x[k].is_zero()) continue;
      int m = m0 + beta * k;
      out.add(m, l0 + k, x[k] * v * alpha_ipow(c.field(), static_cast<long>(k) * m - beta * choose2(k)));
    }
  }
  return out;
}

// X(alpha^((beta+1)/2) z^beta w) in stored form
inline CoeffGf insertion_table(const Egf& x, FieldPtr f, int beta, int z_order) {
  CoeffGf one(f, beta, z_order);
  one.add(0, 0, MarkedScalar(1));
  return insert(x, one, z_order);
}

// Bivariate power series in (z, w) with true coefficients, for cross-checks.
using Bivariate = std::map<std::pair<int, int>, MarkedScalar>;

inline Bivariate to_zform(const CoeffGf& c) {
  Bivariate out;
  for (const auto& [k, v] : c.table())
    out[k] = v * alg_pow(c.field(), frac(-choose2(k.first), c.beta()));
  return out;
}

inline CoeffGf from_zform(const Bivariate& b, FieldPtr f, int beta, int z_order) {
  CoeffGf out(f, beta, z_order);
  for (const auto& [k, v] : b) out.add(k.first, k.second, v * alg_pow(f, frac(choose2(k.first), beta)));
  return out;
}

// X(alpha^((beta+1)/2) z^beta w) as a bivariate series
inline Bivariate zform_substitution(const Egf& x, FieldPtr f, int beta, int z_order) {
  Bivariate out;
  AlgNum scale = alg_pow(f, frac(beta + 1, 2));
  AlgNum p(1);
  for (int k = 0; beta * k <= z_order && k <= x.order(); ++k) {
    if (!x[k].is_zero()) out[{beta * k, k}] = x[k] * p;
    p *= scale;
  }
  return out;
}

inline Bivariate zform_mul(const Bivariate& a, const Bivariate& b, int z_order) {
  Bivariate out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      int m = ka.first + kb.first;
      if (m > z_order) continue;
      auto& slot = out[{m, ka.second + kb.second}];
      slot += va * vb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace gdseries
