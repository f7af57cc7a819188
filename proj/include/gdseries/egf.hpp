#pragma once

#include <functional>
#include <string>
#include <vector>

#include "marked.hpp"

namespace gdseries {

// How n! [z^n] relates to the object count:
//   Exponential/Plain  a_n = n! [z^n]
//   Graphic            a_n = n! [z^n] alpha^C(n,2)
//   Implication        a_n = n! [z^n] 2^n 2^(n(n-1))
enum class Kind { Exponential, Graphic, Implication, Plain };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Exponential: return "exponential";
    case Kind::Graphic: return "graphic";
    case Kind::Implication: return "implication";
    case Kind::Plain: return "plain";
  }
  return "plain";
}

inline AlgNum inv_int(long n) { return AlgNum(frac(1, n)); }

// Truncated series; entry n is [z^n]A.
class Egf {
 public:
  Egf() = default;
  explicit Egf(int order, Kind kind = Kind::Plain) : c_(static_cast<size_t>(order < 0 ? 0 : order + 1)), kind_(kind) {}
  Egf(std::vector<MarkedScalar> coeffs, Kind kind = Kind::Plain) : c_(std::move(coeffs)), kind_(kind) {}

  template <class Gen>
  static Egf generate(int order, Gen&& gen, Kind kind = Kind::Plain) {
    Egf out(order, kind);
    for (int n = 0; n <= order; ++n) out[n] = gen(n);
    return out;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Kind kind() const { return kind_; }
  Egf with_kind(Kind k) const {
    Egf out = *this;
    out.kind_ = k;
    return out;
  }

  const MarkedScalar& operator[](int n) const { return c_[static_cast<size_t>(n)]; }
  MarkedScalar& operator[](int n) { return c_[static_cast<size_t>(n)]; }
  const std::vector<MarkedScalar>& coeffs() const { return c_; }

  Egf truncate(int order) const {
    if (order > this->order())
      fail(Errc::TruncationError, "series known to order " + std::to_string(this->order()) + ", asked for " +
                                      std::to_string(order));
    Egf out = *this;
    out.c_.resize(static_cast<size_t>(order + 1));
    return out;
  }

  VarsPtr vars() const {
    VarsPtr v = nullptr;
    for (const auto& c : c_) v = join_vars(v, c.vars());
    return v;
  }

  FieldPtr field() const {
    FieldPtr f = nullptr;
    for (const auto& c : c_) f = join_fields(f, c.field());
    return f;
  }

  // the object count a_n under this series' normalization
  MarkedScalar count(int n, FieldPtr f = nullptr) const {
    MarkedScalar v = (*this)[n] * AlgNum(Rational(factorial(n)));
    switch (kind_) {
      case Kind::Graphic:
        if (!f) fail(Errc::SpecMismatch, "graphic counts need alpha");
        return v * alpha_ipow(f, choose2(n));
      case Kind::Implication:
        return v * AlgNum(Rational(ipow(2, static_cast<unsigned long>(n * n))));
      default:
        return v;
    }
  }

 private:
  std::vector<MarkedScalar> c_;
  Kind kind_ = Kind::Plain;
};

inline int common_order(const Egf& a, const Egf& b) { return std::min(a.order(), b.order()); }

inline Egf operator+(const Egf& a, const Egf& b) {
  int n = common_order(a, b);
  return Egf::generate(n, [&](int k) { return a[k] + b[k]; });
}

inline Egf operator-(const Egf& a, const Egf& b) {
  int n = common_order(a, b);
  return Egf::generate(n, [&](int k) { return a[k] - b[k]; });
}

inline Egf operator-(const Egf& a) {
  return Egf::generate(a.order(), [&](int k) { return -a[k]; });
}

inline Egf operator*(const Egf& a, const Egf& b) {
  int n = common_order(a, b);
  Egf out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Egf scale(const Egf& a, const MarkedScalar& c) {
  return Egf::generate(a.order(), [&](int k) { return a[k] * c; });
}

inline Egf constant_series(int order, const MarkedScalar& c) {
  Egf out(order);
  if (order >= 0) out[0] = c;
  return out;
}

// sum alpha^(beta C(n,2)) z^n / n!
inline Egf atom_series(FieldPtr f, int beta, int order) {
  return Egf::generate(order, [&](int n) {
    return MarkedScalar(alpha_ipow(f, beta * choose2(n)) * AlgNum(frac(1, factorial(n))));
  });
}

// e^(cz)
inline Egf exp_linear(const AlgNum& c, int order) {
  Egf out(order);
  AlgNum p(1);
  for (int n = 0; n <= order; ++n) {
    out[n] = MarkedScalar(p * AlgNum(frac(1, factorial(n))));
    p *= c;
  }
  return out;
}

// F(A) by Horner over the truncated ring; f holds [x^k]F
inline Egf compose(const std::vector<MarkedScalar>& f, const Egf& a) {
  if (!a[0].is_zero()) fail(Errc::NonzeroConstantTerm, "inner series has constant term " + a[0].str());
  int n = a.order();
  Egf out = constant_series(n, f.empty() ? MarkedScalar() : f[static_cast<size_t>(std::min<size_t>(f.size() - 1, n))]);
  int top = std::min<int>(static_cast<int>(f.size()) - 1, n);
  for (int k = top - 1; k >= 0; --k) {
    out = out * a;
    out[0] += f[static_cast<size_t>(k)];
  }
  return out;
}

inline Egf exp(const Egf& a) {
  if (!a[0].is_zero()) fail(Errc::BadConstantTerm, "exp needs a zero constant term, got " + a[0].str());
  int n = a.order();
  Egf r(n);
  r[0] = MarkedScalar(1);
  for (int k = 1; k <= n; ++k) {
    MarkedScalar s;
    for (int j = 1; j <= k; ++j)
      if (!a[j].is_zero()) s += a[j] * r[k - j] * AlgNum(j);
    r[k] = s * inv_int(k);
  }
  return r;
}

inline Egf log(const Egf& a) {
  if (a[0] != MarkedScalar(1)) fail(Errc::BadConstantTerm, "log needs constant term 1, got " + a[0].str());
  int n = a.order();
  Egf l(n);
  for (int k = 1; k <= n; ++k) {
    MarkedScalar s = a[k] * AlgNum(k);
    for (int j = 1; j < k; ++j)
      if (!a[k - j].is_zero()) s -= l[j] * a[k - j] * AlgNum(j);
    l[k] = s * inv_int(k);
  }
  return l;
}

inline Egf inverse(const Egf& a) {
  if (!a[0].is_constant() || a[0].is_zero())
    fail(Errc::BadConstantTerm, "inverse needs an invertible constant term, got " + a[0].str());
  AlgNum b0 = a[0].as_constant().inverse();
  int n = a.order();
  Egf b(n);
  b[0] = MarkedScalar(b0);
  for (int k = 1; k <= n; ++k) {
    MarkedScalar s;
    for (int j = 1; j <= k; ++j)
      if (!a[j].is_zero()) s += a[j] * b[k - j];
    b[k] = -(s * b0);
  }
  return b;
}

inline Egf pow(const Egf& a, const Rational& r);

namespace detail {

// A^r for a_0 = 1 via (A^r)' A = r A' A^r
inline Egf pow_unit(const Egf& a, const Rational& r) {
  int n = a.order();
  Egf p(n);
  p[0] = MarkedScalar(1);
  for (int k = 1; k <= n; ++k) {
    MarkedScalar s;
    for (int j = 1; j <= k; ++j)
      if (!a[j].is_zero()) s += a[j] * p[k - j] * AlgNum(Rational((r + 1) * j - k));
    p[k] = s * inv_int(k);
  }
  return p;
}

inline Egf pow_square(const Egf& a, long e) {
  Egf r = constant_series(a.order(), MarkedScalar(1)), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

}  // namespace detail

inline Egf pow(const Egf& a, const Rational& r) {
  if (a[0] == MarkedScalar(1)) return detail::pow_unit(a, r);
  if (r.get_den() != 1)
    fail(Errc::BadConstantTerm, "fractional power needs constant term 1, got " + a[0].str());
  long e = r.get_num().get_si();
  if (a[0].is_constant() && !a[0].is_zero()) {
    AlgNum c = a[0].as_constant();
    return scale(detail::pow_unit(scale(a, MarkedScalar(c.inverse())), r), MarkedScalar(pow(c, e)));
  }
  if (e < 0) fail(Errc::BadConstantTerm, "negative power needs an invertible constant term");
  return detail::pow_square(a, e);
}

// [z^n] (A (.) B) = n! [z^n]A [z^n]B
inline Egf hadamard(const Egf& a, const Egf& b) {
  int n = common_order(a, b);
  return Egf::generate(n, [&](int k) { return a[k] * b[k] * AlgNum(Rational(factorial(k))); });
}

// multiplies a_n by alpha^(-m C(n,2))
inline Egf robin(const Egf& a, long m, FieldPtr f) {
  return Egf::generate(a.order(), [&](int k) { return a[k] * alpha_ipow(f, -m * choose2(k)); });
}

inline Egf scale_z(const Egf& a, const AlgNum& c) {
  Egf out(a.order());
  AlgNum p(1);
  for (int k = 0; k <= a.order(); ++k) {
    out[k] = a[k] * p;
    p *= c;
  }
  return out;
}

inline Egf derivative(const Egf& a) {
  return Egf::generate(a.order() - 1, [&](int k) { return a[k + 1] * AlgNum(k + 1); });
}

inline Egf antiderivative(const Egf& a) {
  Egf out(a.order() + 1);
  for (int k = 0; k <= a.order(); ++k) out[k + 1] = a[k] * inv_int(k + 1);
  return out;
}

}  // namespace gdseries
