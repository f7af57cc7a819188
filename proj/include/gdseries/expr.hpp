#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "egf.hpp"

namespace gdseries {

// F(x) = mult * f(lambda x) for f among exp, log(1+x), (1+x)^r, or an explicit coefficient list.
struct AnalyticFn {
  enum class Type { Exp, Log1p, PowLinear, Custom };

  Type type = Type::Exp;
  MarkedScalar lambda = MarkedScalar(1);
  MarkedScalar mult = MarkedScalar(1);
  Rational r;
  std::vector<MarkedScalar> custom;
  std::string name;

  static AnalyticFn exp(const MarkedScalar& lambda = MarkedScalar(1)) {
    AnalyticFn f;
    f.type = Type::Exp;
    f.lambda = lambda;
    return f;
  }
  // log(1 + lambda x)
  static AnalyticFn log1p(const MarkedScalar& lambda = MarkedScalar(1)) {
    AnalyticFn f;
    f.type = Type::Log1p;
    f.lambda = lambda;
    return f;
  }
  // -log(1 - x)
  static AnalyticFn neg_log1m() { return log1p(MarkedScalar(-1)).times(MarkedScalar(-1)); }
  // (1 + lambda x)^r
  static AnalyticFn pow_linear(const MarkedScalar& lambda, const Rational& r) {
    AnalyticFn f;
    f.type = Type::PowLinear;
    f.lambda = lambda;
    f.r = r;
    return f;
  }
  // 1/(1 - lambda x)
  static AnalyticFn geometric(const MarkedScalar& lambda = MarkedScalar(1)) { return pow_linear(-lambda, -1); }
  static AnalyticFn from_coeffs(std::vector<MarkedScalar> c, std::string name = "F") {
    AnalyticFn f;
    f.type = Type::Custom;
    f.custom = std::move(c);
    f.name = std::move(name);
    return f;
  }

  AnalyticFn times(const MarkedScalar& c) const {
    AnalyticFn f = *this;
    f.mult = f.mult * c;
    return f;
  }

  AnalyticFn derivative() const {
    switch (type) {
      case Type::Exp: return times(lambda);
      case Type::Log1p: return pow_linear(lambda, -1).times(mult * lambda);
      case Type::PowLinear:
        if (r == 0) return from_coeffs({}, "0");
        return pow_linear(lambda, r - 1).times(mult * lambda * AlgNum(r));
      case Type::Custom: {
        std::vector<MarkedScalar> d;
        for (size_t k = 1; k < custom.size(); ++k) d.push_back(custom[k] * AlgNum(static_cast<long>(k)));
        return from_coeffs(std::move(d), name + "'").times(mult);
      }
    }
    return *this;
  }

  Egf apply(const Egf& a) const {
    if (!a[0].is_zero()) fail(Errc::NonzeroConstantTerm, "inner series of " + str() + " has constant term " + a[0].str());
    Egf la = scale(a, lambda);
    switch (type) {
      case Type::Exp: return scale(gdseries::exp(la), mult);
      case Type::Log1p: la[0] = MarkedScalar(1); return scale(gdseries::log(la), mult);
      case Type::PowLinear: la[0] = MarkedScalar(1); return scale(gdseries::pow(la, r), mult);
      case Type::Custom: return scale(gdseries::compose(custom, a), mult);
    }
    return a;
  }

  template <class Fn>
  AnalyticFn map_scalars(Fn&& fn) const {
    AnalyticFn f = *this;
    f.lambda = fn(lambda);
    f.mult = fn(mult);
    for (auto& c : f.custom) c = fn(c);
    return f;
  }

  std::string str() const {
    std::string l = lambda == MarkedScalar(1) ? "x" : "(" + lambda.str() + ")*x";
    std::string body;
    switch (type) {
      case Type::Exp: body = "exp(" + l + ")"; break;
      case Type::Log1p: body = "log(1 + " + l + ")"; break;
      case Type::PowLinear: body = "(1 + " + l + ")^(" + to_string(r) + ")"; break;
      case Type::Custom: body = name; break;
    }
    if (mult == MarkedScalar(1)) return body;
    return "(" + mult.str() + ")*" + body;
  }
};

enum class Op { Atom, Const, Scalar, Sum, Prod, Compose, Pow, Robin, ScaleZ, Deriv, Integ, Hadamard };

class Expr;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// series literal assumed subcritical (grade 0)
using ConstGen = std::function<Egf(int order, FieldPtr f)>;

struct Node {
  Op op = Op::Scalar;
  int beta = 0;
  std::string name;
  ConstGen gen;
  MarkedScalar scalar;
  std::vector<NodePtr> kids;
  AnalyticFn fn;
  Rational r;
  long m = 0;
  AlgNum c;
  int grade = 0;  // -1: outside the closure
};

class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr p) : p_(std::move(p)) {}
  const Node& node() const { return *p_; }
  const NodePtr& ptr() const { return p_; }
  Op op() const { return p_->op; }
  Expr kid(size_t i) const { return Expr(p_->kids[i]); }
  size_t arity() const { return p_->kids.size(); }
  bool valid() const { return static_cast<bool>(p_); }

  std::string str() const { return render(*p_); }

 private:
  static std::string render(const Node& n) {
    auto k = [&](size_t i) { return render(*n.kids[i]); };
    switch (n.op) {
      case Op::Atom: return "Atom(" + std::to_string(n.beta) + ")";
      case Op::Const: return n.name;
      case Op::Scalar: return n.scalar.is_constant() ? n.scalar.str() : "(" + n.scalar.str() + ")";
      case Op::Sum: return "(" + k(0) + " + " + k(1) + ")";
      case Op::Prod: return k(0) + "*" + k(1);
      case Op::Compose: {
        std::string f = n.fn.str();
        auto pos = f.find('x');
        return pos == std::string::npos ? f + "[" + k(0) + "]" : f.substr(0, pos) + k(0) + f.substr(pos + 1);
      }
      case Op::Pow: return "(" + k(0) + ")^(" + to_string(n.r) + ")";
      case Op::Robin: return "Robin(" + k(0) + ", " + std::to_string(n.m) + ")";
      case Op::ScaleZ: return "ScaleZ(" + k(0) + ", " + n.c.str() + ")";
      case Op::Deriv: return "D(" + k(0) + ")";
      case Op::Integ: return "Int(" + k(0) + ")";
      case Op::Hadamard: return "(" + k(0) + " (.) " + k(1) + ")";
    }
    return "?";
  }

  NodePtr p_;
};

namespace detail {

inline int max_grade(int a, int b) { return (a < 0 || b < 0) ? -1 : std::max(a, b); }

inline Expr make(Node n) {
  const auto& ks = n.kids;
  auto g = [&](size_t i) { return ks[i]->grade; };
  switch (n.op) {
    case Op::Atom: n.grade = n.beta; break;
    case Op::Const:
    case Op::Scalar: n.grade = 0; break;
    case Op::Sum:
    case Op::Prod: n.grade = max_grade(g(0), g(1)); break;
    case Op::Compose:
    case Op::ScaleZ:
    case Op::Deriv:
    case Op::Integ: n.grade = g(0); break;
    case Op::Pow: n.grade = n.r == 0 ? 0 : g(0); break;
    case Op::Robin:
      if (g(0) < 0)
        n.grade = -1;
      else if (g(0) == 0)
        n.grade = n.m >= 0 ? 0 : -1;  // Robin^(-m) of a subcritical series leaves the closure
      else
        n.grade = std::max<long>(g(0) - n.m, 0);
      break;
    case Op::Hadamard: n.grade = (g(0) < 0 || g(1) < 0) ? -1 : g(0) + g(1); break;
  }
  return Expr(std::make_shared<const Node>(std::move(n)));
}

}  // namespace detail

inline Expr atom(int beta) {
  if (beta < 1) fail(Errc::InvalidArgument, "atom grade must be positive");
  Node n;
  n.op = Op::Atom;
  n.beta = beta;
  return detail::make(std::move(n));
}

inline Expr literal(std::string name, ConstGen gen) {
  Node n;
  n.op = Op::Const;
  n.name = std::move(name);
  n.gen = std::move(gen);
  return detail::make(std::move(n));
}

// e^(cz)
inline Expr exp_linear_expr(const Rational& c) {
  return literal("exp(" + to_string(c) + "*z)", [c](int order, FieldPtr) { return exp_linear(AlgNum(c), order); });
}

inline Expr scalar(const MarkedScalar& s) {
  Node n;
  n.op = Op::Scalar;
  n.scalar = s;
  return detail::make(std::move(n));
}

inline Expr binary(Op op, const Expr& a, const Expr& b) {
  Node n;
  n.op = op;
  n.kids = {a.ptr(), b.ptr()};
  return detail::make(std::move(n));
}

inline Expr unary(Op op, const Expr& a) {
  Node n;
  n.op = op;
  n.kids = {a.ptr()};
  return detail::make(std::move(n));
}

inline Expr operator+(const Expr& a, const Expr& b) { return binary(Op::Sum, a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return binary(Op::Prod, a, b); }
inline Expr operator*(const MarkedScalar& c, const Expr& a) { return scalar(c) * a; }
inline Expr operator-(const Expr& a) { return MarkedScalar(-1) * a; }
inline Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
inline Expr operator+(const Expr& a, const MarkedScalar& c) { return a + scalar(c); }
inline Expr operator-(const Expr& a, const MarkedScalar& c) { return a + scalar(-c); }
inline Expr operator-(const MarkedScalar& c, const Expr& a) { return scalar(c) + (-a); }

inline Expr compose(const AnalyticFn& f, const Expr& a) {
  Node n;
  n.op = Op::Compose;
  n.fn = f;
  n.kids = {a.ptr()};
  return detail::make(std::move(n));
}

inline Expr pow(const Expr& a, const Rational& r) {
  Node n;
  n.op = Op::Pow;
  n.r = r;
  n.kids = {a.ptr()};
  return detail::make(std::move(n));
}

inline Expr robin(const Expr& a, long m) {
  Node n;
  n.op = Op::Robin;
  n.m = m;
  n.kids = {a.ptr()};
  return detail::make(std::move(n));
}

// A(cz)
inline Expr scale_z(const Expr& a, const AlgNum& c) {
  Node n;
  n.op = Op::ScaleZ;
  n.c = c;
  n.kids = {a.ptr()};
  return detail::make(std::move(n));
}

inline Expr deriv(const Expr& a) { return unary(Op::Deriv, a); }
inline Expr integ(const Expr& a) { return unary(Op::Integ, a); }
inline Expr hadamard(const Expr& a, const Expr& b) { return binary(Op::Hadamard, a, b); }

inline Expr exp(const Expr& a) { return compose(AnalyticFn::exp(), a); }
// log A for A(0) = 1, written as log(1 + (A - 1))
inline Expr log(const Expr& a) { return compose(AnalyticFn::log1p(), a - MarkedScalar(1)); }
inline Expr inverse(const Expr& a) { return pow(a, -1); }

inline int infer_grade(const Expr& e) {
  if (e.node().grade < 0) fail(Errc::UnknownGrade, "no growth grade for " + e.str());
  return e.node().grade;
}

// d with c = alpha^d, when c is an integer power of alpha
inline std::optional<long> alpha_exponent(FieldPtr f, const AlgNum& c) {
  if (!c.is_rational() || c.rational() <= 0) return std::nullopt;
  Rational v = c.rational();
  long d = 0;
  Rational p = 1;
  if (v >= 1) {
    while (p < v && d < 4096) p *= f->alpha, ++d;
  } else {
    while (p > v && d > -4096) p /= f->alpha, --d;
  }
  if (p == v) return d;
  return std::nullopt;
}

// Rebuilds the tree with every marked scalar passed through fn.
template <class Fn>
Expr map_scalars(const Expr& e, Fn&& fn) {
  std::unordered_map<const Node*, NodePtr> memo;
  std::function<NodePtr(const NodePtr&)> go = [&](const NodePtr& p) -> NodePtr {
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;
    Node n = *p;
    for (auto& k : n.kids) k = go(k);
    n.scalar = fn(n.scalar);
    n.fn = n.fn.map_scalars(fn);
    NodePtr out = detail::make(std::move(n)).ptr();
    memo.emplace(p.get(), out);
    return out;
  };
  return Expr(go(e.ptr()));
}

inline Expr substitute_mark(const Expr& e, int var, const AlgNum& value) {
  return map_scalars(e, [&](const MarkedScalar& s) { return s.substitute(var, value); });
}

// Evaluates expressions to truncated series, memoizing per node.
class Evaluator {
 public:
  explicit Evaluator(FieldPtr f) : field_(f) {}
  FieldPtr field() const { return field_; }

  Egf eval(const Expr& e, int order) {
    if (order < 0) return Egf(-1);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(e.ptr().get());
      if (it != cache_.end() && it->second.second.order() >= order) {
        const Egf& s = it->second.second;
        return s.order() == order ? s : s.truncate(order);
      }
    }
    Egf out = compute(e, order);
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[e.ptr().get()];
    if (!slot.first || slot.second.order() < out.order()) slot = {e.ptr(), out};
    return out;
  }

 private:
  Egf compute(const Expr& e, int order) {
    const Node& n = e.node();
    switch (n.op) {
      case Op::Atom: return atom_series(field_, n.beta, order);
      case Op::Const: {
        Egf s = n.gen(order, field_);
        return s.truncate(order);
      }
      case Op::Scalar: return constant_series(order, n.scalar);
      case Op::Sum: return eval(e.kid(0), order) + eval(e.kid(1), order);
      case Op::Prod: return eval(e.kid(0), order) * eval(e.kid(1), order);
      case Op::Compose: return n.fn.apply(eval(e.kid(0), order));
      case Op::Pow: return gdseries::pow(eval(e.kid(0), order), n.r);
      case Op::Robin: return gdseries::robin(eval(e.kid(0), order), n.m, field_);
      case Op::ScaleZ: return gdseries::scale_z(eval(e.kid(0), order), n.c.with_field(field_));
      case Op::Deriv: return derivative(eval(e.kid(0), order + 1));
      case Op::Integ:
        if (order == 0) return Egf(0);
        return antiderivative(eval(e.kid(0), order - 1));
      case Op::Hadamard: return gdseries::hadamard(eval(e.kid(0), order), eval(e.kid(1), order));
    }
    return Egf(order);
  }

  FieldPtr field_;
  std::mutex mu_;
  std::unordered_map<const Node*, std::pair<NodePtr, Egf>> cache_;
};

}  // namespace gdseries
