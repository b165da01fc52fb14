#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nfc/criterion.hpp"
#include "nfc/gform.hpp"
#include "nfc/graded_op.hpp"

namespace nfc {

struct Expr {
  enum class Kind { Rational, Xi, X, D, Gform, Add, Sub, Neg, Mul, Pow };
  Kind kind = Kind::Rational;
  Rational value = 0;  // Rational
  Hcp hcp;             // Gform
  long exponent = 0;   // Pow
  std::vector<std::shared_ptr<const Expr>> kids;
  int line = 1, column = 1;
};
using ExprPtr = std::shared_ptr<const Expr>;

// k = 0 means no cyclotomic context: xi is then rejected.
ExprPtr parse_expr(const std::string& src, int k = 0);
std::string print_expr(const ExprPtr& e);
bool same_tree(const ExprPtr& a, const ExprPtr& b);  // ignores source positions

struct EvalOptions {
  int k = 1;
  long xcap = 32;  // x-cap for G-literals whose expansion is an infinite series
};

GradedOp evaluate(const ExprPtr& e, const EvalOptions& opt = {});
// Only rationals, xi, d and G-literals; x has no nonnegative-order Hcp form.
HcpSeries evaluate_series(const ExprPtr& e, int k);

GradedOp parse_operator(const std::string& src, const EvalOptions& opt = {});

// Polynomials in commuting X, Y with the same surface syntax.
BivarPoly parse_bivar(const std::string& src);

}  // namespace nfc
