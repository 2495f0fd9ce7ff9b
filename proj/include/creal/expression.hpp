#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "creal/crn.hpp"
#include "creal/rational.hpp"

namespace cr {

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | primary
//   primary := rational | name '(' raw-args ')' | '(' expr ')'
// Built-in calls keep their arguments as raw comma-separated strings; the
// registered builder interprets them.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Literal {
    Rational value;
  };
  struct Call {
    std::string name;
    std::vector<std::string> args;
  };
  struct Negate {
    ExprPtr operand;
  };
  struct Binary {
    char op;
    ExprPtr lhs;
    ExprPtr rhs;
  };

  std::variant<Literal, Call, Negate, Binary> node;
};

/// Throws ParseError on malformed text.
ExprPtr parse_expression(std::string_view text);

/// Exact value; throws InvalidArgument if the expression contains calls.
Rational evaluate_rational(const Expr& expr);

using CrnBuiltin = std::function<Crn(const std::vector<std::string>& args)>;
using BuiltinRegistry = std::map<std::string, CrnBuiltin, std::less<>>;

/// Throws InvalidArgument for unknown built-in names.
Crn build_crn(const Expr& expr, const BuiltinRegistry& builtins);

}  // namespace cr
