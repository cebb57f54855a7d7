#pragma once

// Tiny expression language for potentials V(x): numbers, the variable x,
// + - * / ^, unary minus, and the functions exp log sin cos sinh cosh sqrt abs.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelshift/errors.hpp"

namespace tunnelshift::expr {

enum class NodeKind { constant, variable, negate, add, subtract, multiply, divide, power, call };

enum class Function { exp, log, sin, cos, sinh, cosh, sqrt, abs };

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Immutable AST node. `lhs` is the only child of negate/call nodes.
struct Node {
  NodeKind kind = NodeKind::constant;
  double value = 0.0;
  Function function = Function::exp;
  Expr lhs;
  Expr rhs;
};

/// Syntax error or unknown identifier, with the byte offset into the source.
class ParseError : public ValidationError {
 public:
  ParseError(std::string message, std::string source, std::size_t offset,
             std::vector<std::string> expected);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& source() const noexcept { return source_; }

  /// Two-line rendering: the source and a caret under the offending byte.
  std::string caret_annotation() const;

 private:
  std::string source_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Runtime evaluation failure (log of non-positive, division by zero, ...).
class EvalError : public std::domain_error {
 public:
  EvalError(const std::string& message, std::string subexpression)
      : std::domain_error(message), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

inline constexpr std::size_t kMaxSourceLength = 4096;

Expr parse(std::string_view text);

double evaluate(const Expr& ast, double x);

/// Symbolic d/dx. Only exact literal folding and trivial identities
/// (x*1, x+0, x^1, ...) are applied to the result.
Expr differentiate(const Expr& ast);

/// Canonical text with minimal parentheses; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& ast);

bool contains_division(const Expr& ast);
bool is_well_formed(const Expr& ast);

/// Taylor coefficients c_0..c_order of the expression at x = 0, by truncated
/// power-series arithmetic. Throws EvalError when the expression is not
/// analytic at 0 (e.g. abs(x), 1/x, sqrt(x)).
std::vector<double> taylor_at_zero(const Expr& ast, int order);

// Node constructors. The binary/unary builders fold literals when the result
// is exact and drop identities; `raw_*` builders never simplify.
Expr constant(double v);
Expr variable();
Expr negate(Expr a);
Expr add(Expr a, Expr b);
Expr subtract(Expr a, Expr b);
Expr multiply(Expr a, Expr b);
Expr divide(Expr a, Expr b);
Expr power(Expr a, Expr b);
Expr call(Function f, Expr a);
Expr raw_unary(NodeKind kind, Expr a);
Expr raw_binary(NodeKind kind, Expr a, Expr b);

std::string_view function_name(Function f);

}  // namespace tunnelshift::expr
