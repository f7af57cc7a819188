#pragma once

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace gdseries {

// The growth base alpha and the degree D of the adjoined root t = alpha^(1/D).
struct FieldSpec {
  Rational alpha;
  int root_degree = 24;
};

// Fields are interned, so a FieldPtr compares by identity and never dangles.
using FieldPtr = const FieldSpec*;

inline FieldPtr make_field(const Rational& alpha, int root_degree = 24) {
  if (alpha <= 1) fail(Errc::InvalidArgument, "alpha must exceed 1, got " + to_string(alpha));
  if (root_degree < 1) fail(Errc::InvalidArgument, "root degree must be positive");
  static std::mutex mu;
  static std::deque<FieldSpec> registry;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& f : registry)
    if (f.alpha == alpha && f.root_degree == root_degree) return &f;
  registry.push_back(FieldSpec{alpha, root_degree});
  return &registry.back();
}

inline FieldPtr join_fields(FieldPtr a, FieldPtr b) {
  if (a == b || !b) return a;
  if (!a) return b;
  fail(Errc::SpecMismatch, "alpha " + to_string(a->alpha) + "/D " + std::to_string(a->root_degree) +
                               " vs alpha " + to_string(b->alpha) + "/D " + std::to_string(b->root_degree));
}

// Element of Q[t]/(t^D - alpha). Rational elements carry no field and embed anywhere.
class AlgNum {
 public:
  AlgNum() = default;
  AlgNum(long v) : base_(v) {}
  AlgNum(int v) : base_(v) {}
  AlgNum(const Rational& r) : base_(r) {}
  AlgNum(FieldPtr f, const Rational& r) : field_(f), base_(r) {}

  // t^k, reduced with t^D = alpha; k may be negative
  static AlgNum root_power(FieldPtr f, long k) {
    if (!f) fail(Errc::SpecMismatch, "root power needs a field");
    long d = f->root_degree;
    long q = k >= 0 ? k / d : -((-k + d - 1) / d);
    long r = k - q * d;
    AlgNum out(f, rpow(f->alpha, q));
    if (r != 0) {
      out.irr_.emplace_back(static_cast<int>(r), out.base_);
      out.base_ = 0;
    }
    return out;
  }

  // Dense component vector c_0..c_{D-1}.
  static AlgNum from_components(FieldPtr f, const std::vector<Rational>& c) {
    AlgNum out(f, c.empty() ? Rational(0) : c[0]);
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) {
        if (!f || static_cast<int>(i) >= f->root_degree)
          fail(Errc::SpecMismatch, "component index outside the field");
        out.irr_.emplace_back(static_cast<int>(i), c[i]);
      }
    return out;
  }

  FieldPtr field() const { return field_; }
  bool is_zero() const { return base_ == 0 && irr_.empty(); }
  bool is_rational() const { return irr_.empty(); }
  bool is_one() const { return irr_.empty() && base_ == 1; }

  const Rational& rational() const {
    if (!irr_.empty()) fail(Errc::InvalidArgument, "value " + str() + " is not rational");
    return base_;
  }

  Rational component(int i) const {
    if (i == 0) return base_;
    for (const auto& [k, c] : irr_)
      if (k == i) return c;
    return 0;
  }

  std::vector<Rational> components() const {
    int d = field_ ? field_->root_degree : 1;
    std::vector<Rational> out(static_cast<size_t>(d));
    out[0] = base_;
    for (const auto& [k, c] : irr_) out[static_cast<size_t>(k)] = c;
    return out;
  }

  AlgNum with_field(FieldPtr f) const {
    AlgNum out = *this;
    out.field_ = join_fields(field_, f);
    return out;
  }

  AlgNum operator-() const {
    AlgNum out = *this;
    out.base_ = -out.base_;
    for (auto& kc : out.irr_) kc.second = -kc.second;
    return out;
  }

  friend AlgNum operator+(const AlgNum& a, const AlgNum& b) { return combine(a, b, false); }
  friend AlgNum operator-(const AlgNum& a, const AlgNum& b) { return combine(a, b, true); }

  friend AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    FieldPtr f = join_fields(a.field_, b.field_);
    if (a.irr_.empty() && b.irr_.empty()) return AlgNum(f, a.base_ * b.base_);
    if (a.irr_.empty() || b.irr_.empty()) {
      const AlgNum& r = a.irr_.empty() ? a : b;
      const AlgNum& x = a.irr_.empty() ? b : a;
      if (r.base_ == 0) return AlgNum(f, 0);
      AlgNum out = x;
      out.field_ = f;
      out.base_ *= r.base_;
      for (auto& kc : out.irr_) kc.second *= r.base_;
      return out;
    }
    const int d = f->root_degree;
    std::vector<std::pair<int, Rational>> prods;
    for (const auto& [i, ci] : a.sparse())
      for (const auto& [j, cj] : b.sparse()) {
        int k = i + j;
        if (k >= d)
          prods.emplace_back(k - d, ci * cj * f->alpha);
        else
          prods.emplace_back(k, ci * cj);
      }
    std::sort(prods.begin(), prods.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    AlgNum out(f, 0);
    for (size_t i = 0; i < prods.size();) {
      size_t j = i + 1;
      Rational c = prods[i].second;
      while (j < prods.size() && prods[j].first == prods[i].first) c += prods[j++].second;
      if (prods[i].first == 0)
        out.base_ = c;
      else if (c != 0)
        out.irr_.emplace_back(prods[i].first, c);
      i = j;
    }
    return out;
  }

  AlgNum& operator+=(const AlgNum& b) { return *this = *this + b; }
  AlgNum& operator-=(const AlgNum& b) { return *this = *this - b; }
  AlgNum& operator*=(const AlgNum& b) { return *this = *this * b; }

  friend bool operator==(const AlgNum& a, const AlgNum& b) {
    return a.base_ == b.base_ && a.irr_ == b.irr_;
  }
  friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

  // Solves (multiplication by this) x = 1 over Q.
  AlgNum inverse() const {
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
    if (irr_.empty()) return AlgNum(field_, 1 / base_);
    const int d = field_->root_degree;
    std::vector<std::vector<Rational>> m(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d) + 1));
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> col = (*this * root_power(field_, j)).components();
      for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    }
    m[0][static_cast<size_t>(d)] = 1;
    for (int c = 0; c < d; ++c) {
      int p = c;
      while (p < d && m[static_cast<size_t>(p)][static_cast<size_t>(c)] == 0) ++p;
      if (p == d) fail(Errc::DivisionByZero, str() + " is a zero divisor in Q[t]/(t^D - alpha)");
      std::swap(m[static_cast<size_t>(p)], m[static_cast<size_t>(c)]);
      auto& row = m[static_cast<size_t>(c)];
      Rational inv = 1 / row[static_cast<size_t>(c)];
      for (auto& v : row) v *= inv;
      for (int r = 0; r < d; ++r) {
        if (r == c) continue;
        auto& other = m[static_cast<size_t>(r)];
        if (other[static_cast<size_t>(c)] == 0) continue;
        Rational f = other[static_cast<size_t>(c)];
        for (int k = c; k <= d; ++k) other[static_cast<size_t>(k)] -= f * row[static_cast<size_t>(k)];
      }
    }
    std::vector<Rational> x(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = m[static_cast<size_t>(i)][static_cast<size_t>(d)];
    return from_components(field_, x);
  }

  double to_double() const {
    double v = base_.get_d();
    for (const auto& [k, c] : irr_)
      v += c.get_d() * std::pow(field_->alpha.get_d(), static_cast<double>(k) / field_->root_degree);
    return v;
  }

  // "-128/3", or "3 + 2*2^(1/2)" for irrational elements.
  std::string str() const {
    if (irr_.empty()) return to_string(base_);
    std::string out;
    if (base_ != 0) out = to_string(base_);
    std::string a = to_string(field_->alpha);
    if (field_->alpha.get_den() != 1) a = "(" + a + ")";
    for (const auto& [k, c] : irr_) {
      long g = std::gcd(static_cast<long>(k), static_cast<long>(field_->root_degree));
      std::string root = a + "^(" + std::to_string(k / g) + "/" + std::to_string(field_->root_degree / g) + ")";
      std::string coef;
      Rational mag = c < 0 ? Rational(-c) : c;
      if (mag != 1) coef = to_string(mag) + "*";
      if (out.empty())
        out = (c < 0 ? "-" : "") + coef + root;
      else
        out += (c < 0 ? " - " : " + ") + coef + root;
    }
    return out;
  }

 private:
  std::vector<std::pair<int, Rational>> sparse() const {
    std::vector<std::pair<int, Rational>> out;
    if (base_ != 0) out.emplace_back(0, base_);
    out.insert(out.end(), irr_.begin(), irr_.end());
    return out;
  }

  static AlgNum combine(const AlgNum& a, const AlgNum& b, bool negate) {
    AlgNum out(join_fields(a.field_, b.field_), negate ? Rational(a.base_ - b.base_) : Rational(a.base_ + b.base_));
    if (a.irr_.empty() && b.irr_.empty()) return out;
    size_t i = 0, j = 0;
    while (i < a.irr_.size() || j < b.irr_.size()) {
      if (j == b.irr_.size() || (i < a.irr_.size() && a.irr_[i].first < b.irr_[j].first)) {
        out.irr_.push_back(a.irr_[i++]);
      } else if (i == a.irr_.size() || b.irr_[j].first < a.irr_[i].first) {
        out.irr_.emplace_back(b.irr_[j].first, negate ? Rational(-b.irr_[j].second) : b.irr_[j].second);
        ++j;
      } else {
        Rational c = negate ? Rational(a.irr_[i].second - b.irr_[j].second)
                            : Rational(a.irr_[i].second + b.irr_[j].second);
        if (c != 0) out.irr_.emplace_back(a.irr_[i].first, c);
        ++i, ++j;
      }
    }
    return out;
  }

  FieldPtr field_ = nullptr;
  Rational base_;
  std::vector<std::pair<int, Rational>> irr_;  // indices 1..D-1, ascending, nonzero
};

inline bool exponent_fits(FieldPtr f, const Rational& e) {
  Rational k = e * f->root_degree;
  return k.get_den() == 1;
}

// alpha^e for e with denominator dividing D
inline AlgNum alg_pow(FieldPtr f, const Rational& e) {
  if (!f) fail(Errc::SpecMismatch, "alg_pow needs a field");
  Rational k = e * f->root_degree;
  if (k.get_den() != 1)
    fail(Errc::ExponentDenominatorMismatch,
         "exponent " + to_string(e) + " not representable with D = " + std::to_string(f->root_degree));
  return AlgNum::root_power(f, k.get_num().get_si());
}

// alpha^e for integer e stays rational
inline AlgNum alpha_ipow(FieldPtr f, long e) { return AlgNum(f, rpow(f->alpha, e)); }

inline AlgNum pow(const AlgNum& a, long e) {
  if (e < 0) return pow(a.inverse(), -e);
  AlgNum r(a.field(), 1), b = a;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

}  // namespace gdseries
