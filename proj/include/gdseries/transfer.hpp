#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "coeffgf.hpp"
#include "expr.hpp"

namespace gdseries {

// Structural Coefficient GF computation over an expression DAG.
class Transfer {
 public:
  explicit Transfer(Evaluator& ev) : ev_(ev) {}

  Evaluator& evaluator() { return ev_; }
  FieldPtr field() const { return ev_.field(); }

  CoeffGf operator()(const Expr& e, int beta, int z_order) {
    check_basis(field(), beta);
    return run(e, beta, z_order);
  }

 private:
  using MemoKey = std::pair<const Node*, int>;

  CoeffGf run(const Expr& e, int beta, int z_order) {
    int g = e.node().grade;
    if (g < 0) fail(Errc::NotTransferable, "no growth grade for " + e.str());
    if (g > beta)
      fail(Errc::GradeTooHigh, e.str() + " has grade " + std::to_string(g) + " > beta = " + std::to_string(beta));
    if (g < beta) return CoeffGf(field(), beta, z_order);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find({e.ptr().get(), beta});
      if (it != memo_.end() && it->second.second.z_order() >= z_order) return it->second.second.truncate(z_order);
    }
    CoeffGf out = compute(e, beta, z_order);
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = memo_[{e.ptr().get(), beta}];
    if (!slot.first || slot.second.z_order() < out.z_order()) slot = {e.ptr(), out};
    return out;
  }

  // H(alpha^((beta+1)/2) z^beta w) * QA with H evaluated only as far as needed
  CoeffGf insert_expr(const Expr& h, const CoeffGf& qa, int z_order) {
    int k = insertion_order(qa, z_order);
    if (k < 0) return CoeffGf(field(), qa.beta(), z_order);
    return insert(ev_.eval(h, k), qa, z_order);
  }

  CoeffGf compute(const Expr& e, int beta, int z_order) {
    const Node& n = e.node();
    FieldPtr f = field();
    switch (n.op) {
      case Op::Atom: {
        CoeffGf out(f, beta, z_order);
        out.add(0, 0, MarkedScalar(1));
        return out;
      }
      case Op::Const:
      case Op::Scalar: return CoeffGf(f, beta, z_order);
      case Op::Sum: return run(e.kid(0), beta, z_order) + run(e.kid(1), beta, z_order);
      case Op::Prod: {
        CoeffGf qa = run(e.kid(0), beta, z_order);
        CoeffGf qb = run(e.kid(1), beta, z_order);
        return insert_expr(e.kid(1), qa, z_order) + insert_expr(e.kid(0), qb, z_order);
      }
      case Op::Compose: {
        CoeffGf qa = run(e.kid(0), beta, z_order);
        int k = insertion_order(qa, z_order);
        if (k < 0) return CoeffGf(f, beta, z_order);
        Egf a = ev_.eval(e.kid(0), k);
        return insert(n.fn.derivative().apply(a), qa, z_order);
      }
      case Op::Pow: {
        CoeffGf qa = run(e.kid(0), beta, z_order);
        int k = insertion_order(qa, z_order);
        if (k < 0) return CoeffGf(f, beta, z_order);
        Egf h = scale(gdseries::pow(ev_.eval(e.kid(0), k), n.r - 1), MarkedScalar(AlgNum(n.r)));
        return insert(h, qa, z_order);
      }
      case Op::Robin: {
        int beta1 = static_cast<int>(beta + n.m);
        check_basis(f, beta1);
        return run(e.kid(0), beta1, z_order).retag(beta);
      }
      case Op::ScaleZ: {
        auto d = alpha_exponent(f, n.c);
        if (!d) fail(Errc::NotTransferable, "scale " + n.c.str() + " is not an integer power of alpha");
        CoeffGf qa = run(e.kid(0), beta, z_order + static_cast<int>(*d));
        CoeffGf out(f, beta, z_order);
        for (const auto& [key, v] : qa.table()) out.add(key.first - static_cast<int>(*d), key.second, v);
        return out;
      }
      case Op::Deriv: {
        CoeffGf qa = run(e.kid(0), beta, z_order + beta);
        CoeffGf out(f, beta, z_order);
        for (const auto& [key, v] : qa.table()) {
          auto [m, l] = key;
          AlgNum s = alpha_ipow(f, -m);
          out.add(m - beta, l, v * s);
          if (l > 0) out.add(m - beta, l - 1, v * s * AlgNum(l));
        }
        return out;
      }
      case Op::Integ: {
        CoeffGf qa = run(e.kid(0), beta, z_order - beta);
        CoeffGf out(f, beta, z_order);
        for (const auto& [key, v] : qa.table()) {
          auto [m, l] = key;
          AlgNum s = alpha_ipow(f, m + beta);
          // contributes (-1)^(l-k) l!/k! alpha^(m+beta) a°_{m,l} to c°_{m+beta,k}
          for (int k = l; k >= 0; --k) {
            Rational w = frac(factorial(l), factorial(k));
            if ((l - k) % 2) w = -w;
            out.add(m + beta, k, v * s * AlgNum(w));
          }
        }
        return out;
      }
      case Op::Hadamard:
        fail(Errc::NotTransferable, "transfer through a general Hadamard product is not defined; use Robin");
    }
    return CoeffGf(f, beta, z_order);
  }

  Evaluator& ev_;
  std::mutex mu_;
  std::map<MemoKey, std::pair<NodePtr, CoeffGf>> memo_;
};

inline CoeffGf transfer(Evaluator& ev, const Expr& e, int beta, int z_order) {
  Transfer t(ev);
  return t(e, beta, z_order);
}

}  // namespace gdseries
