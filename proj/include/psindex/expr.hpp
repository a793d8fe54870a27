#pragma once

// Expression language for user-defined defining functions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | primary
//   primary := number | variable | function '(' expr ')' | '(' expr ')'
//
// Variables are z1..zn (complex).  Functions: abs2, re, im, exp, log, sqrt, sin, cos.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "psindex/jet.hpp"

namespace psindex {

enum class ExprOp { Number, Variable, Negate, Add, Sub, Mul, Div, Call };

enum class ExprFunc { Abs2, Re, Im, Exp, Log, Sqrt, Sin, Cos };

struct ExprNode {
  ExprOp op = ExprOp::Number;
  double number = 0.0;
  int variable = 0;  // 0-based index of z_{variable+1}
  ExprFunc func = ExprFunc::Abs2;
  std::vector<std::shared_ptr<const ExprNode>> args;
  std::size_t position = 0;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

struct ParsedExpr {
  ExprPtr root;
  int max_variable = 0;  // highest z index referenced (1-based), 0 if none
};

/// Parse `text`.  When `declared_n` > 0, variables beyond z_{declared_n} are rejected.
ParsedExpr parse_expr(std::string_view text, int declared_n = 0);

/// Canonical text form; parse(print(e)) yields a tree equal to e.
std::string print_expr(const ExprNode& e);

/// Structural equality (positions ignored).
bool expr_equal(const ExprNode& a, const ExprNode& b);

/// Evaluate over complex jets; `z` holds one jet per complex variable.
CJet eval_expr(const ExprNode& e, const std::vector<CJet>& z);

std::string_view func_name(ExprFunc f);

}  // namespace psindex
