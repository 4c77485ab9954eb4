#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "harmonics/line.hpp"

namespace harmonics {

/// Expression tree for the small test-function DSL over the variable x.
struct Expr {
  enum class Kind {
    number,
    variable,
    add,
    sub,
    mul,
    div,
    pow,   // integer exponent
    neg,
    group,  // explicit parentheses
    exp_fn,
    sin_fn,
    cos_fn,
    abs_fn
  };

  Kind kind = Kind::number;
  double value = 0.0;  // number
  int exponent = 0;    // pow
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

struct ParseError : std::runtime_error {
  ParseError(size_t offset, std::vector<std::string> expected, std::string found);
  size_t offset;
  std::vector<std::string> expected;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grammar (precedence low to high):
///   sum  ::= prod (('+'|'-') prod)*
///   prod ::= unary (('*'|'/') unary)*
///   unary::= '-' unary | atom
///   atom ::= number | 'x' | func '(' sum ')' | '(' sum ')' | atom '^' integer
ExprPtr parse(std::string_view text);

std::string print(const Expr& e);
bool tree_equal(const Expr& a, const Expr& b);

/// Evaluation; division by zero (and negative powers of zero) throw EvalError.
double eval(const Expr& e, double x);

/// Wraps the tree as a LineFunction; the declared envelope is spot-checked on
/// a logarithmic sample of |x| up to the quadrature cutoff.
LineFunction to_line_function(const ExprPtr& ast, Envelope envelope,
                              double cutoff = 16.0);

}  // namespace harmonics
