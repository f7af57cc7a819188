#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace gdseries {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) fail(Errc::InvalidArgument, "not a rational: '" + s + "'");
  if (r.get_den() == 0) fail(Errc::DivisionByZero, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline long choose2(long m) { return m * (m - 1) / 2; }

inline Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return r;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// n(n-1)...(n-k+1); zero once a factor hits zero
inline Integer falling(long n, long k) {
  Integer r = 1;
  for (long i = 0; i < k; ++i) r *= (n - i);
  return r;
}

inline Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rational frac(const Integer& a, const Integer& b) {
  if (b == 0) fail(Errc::DivisionByZero, "zero denominator");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline Rational rpow(const Rational& b, long e) {
  if (e == 0) return 1;
  if (b == 0) {
    if (e < 0) fail(Errc::DivisionByZero, "0 to a negative power");
    return 0;
  }
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r(ipow(b.get_num(), a), ipow(b.get_den(), a));
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

// log2 |r| without converting the whole number to double
inline double log2_abs(const Rational& r) {
  if (r == 0) return -INFINITY;
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, r.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, r.get_den().get_mpz_t());
  return std::log2(std::fabs(mn)) - std::log2(md) + static_cast<double>(en - ed);
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace gdseries
