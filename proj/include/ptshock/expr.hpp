#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "ptshock/jet.hpp"

namespace ptshock {

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& what)
      : std::runtime_error(what + " (offset " + std::to_string(off) + ")"),
        offset(off) {}
};

/// Expression tree for initial profiles and f(w). Immutable after parse,
/// evaluation is pure, so trees are safe to share across threads.
struct Expr {
  enum class Kind { number, imag_unit, pi, var, neg, add, sub, mul, div, pow, exp_fn };

  Kind kind;
  double number = 0.0;  // Kind::number only
  std::shared_ptr<const Expr> lhs, rhs;

  explicit Expr(Kind k) : kind(k) {}
};

using ExprPtr = std::shared_ptr<const Expr>;

struct ProfileAst {
  ExprPtr root;

  template <class T>
  T eval(const T& x) const;

  std::string to_string() const;
  bool operator==(const ProfileAst& other) const;
};

ProfileAst parse(const std::string& src);

bool expr_equal(const Expr& a, const Expr& b);

namespace detail {

template <class T>
T eval_node(const Expr& e, const T& x) {
  switch (e.kind) {
    case Expr::Kind::number: return T(e.number);
    case Expr::Kind::imag_unit: return T(kImag);
    case Expr::Kind::pi: return T(kPi);
    case Expr::Kind::var: return x;
    case Expr::Kind::neg: return -eval_node(*e.lhs, x);
    case Expr::Kind::add: return eval_node(*e.lhs, x) + eval_node(*e.rhs, x);
    case Expr::Kind::sub: return eval_node(*e.lhs, x) - eval_node(*e.rhs, x);
    case Expr::Kind::mul: return eval_node(*e.lhs, x) * eval_node(*e.rhs, x);
    case Expr::Kind::div: return eval_node(*e.lhs, x) / eval_node(*e.rhs, x);
    case Expr::Kind::pow: return pow(eval_node(*e.lhs, x), eval_node(*e.rhs, x));
    case Expr::Kind::exp_fn: return exp(eval_node(*e.lhs, x));
  }
  throw EvalError("corrupt expression node");
}

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <int N>
bool is_finite(const Jet<N>& j) {
  for (const auto& ck : j.c)
    if (!is_finite(ck)) return false;
  return true;
}

}  // namespace detail

template <class T>
T ProfileAst::eval(const T& x) const {
  if (!root) throw EvalError("empty expression");
  T v = detail::eval_node(*root, x);
  if (!detail::is_finite(v)) throw EvalError("expression evaluated to a non-finite value");
  return v;
}

/// Value and exact first derivative at x, from one Jet<2> sweep.
struct DualValue {
  Complex value;
  Complex derivative;
};

inline DualValue eval_dual(const ProfileAst& ast, const Complex& x) {
  Jet2 j = ast.eval(Jet2::variable(x));
  return {j.value(), j.derivative(1)};
}

}  // namespace ptshock
