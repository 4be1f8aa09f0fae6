#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace fcv {

// Lagrangian expressions L(x, y, dy). The DSL treats dy as a plain third
// variable; binding it to the Caputo derivative of y happens in varcalc.
//
// Grammar (whitespace-insensitive):
//
//   expr    := term   { ("+" | "-") term }
//   term    := unary  { ("*" | "/") unary }
//   unary   := "-" unary | power
//   power   := primary [ "^" unary ]          (right-associative)
//   primary := number | "x" | "y" | "dy" | "pi" | "e"
//            | func "(" expr ")" | "(" expr ")"
//   func    := "sin" | "cos" | "exp" | "log" | "sqrt" | "abs" | "sign"
//   number  := digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//
// Exponents must be free of variables. "sign" exists so that abs can be
// differentiated; d|u|/du is taken as sign(u), which is 0 at u = 0.

enum class Variable { X, Y, Dy };
enum class UnaryOp { Neg, Sin, Cos, Exp, Log, Sqrt, Abs, Sign };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class NamedConstant { Pi, E };

struct ExprNode;

/// Immutable expression tree; copies share structure and are thread-safe.
class Expr {
 public:
  static Expr number(double value);
  static Expr variable(Variable v);
  static Expr named(NamedConstant c);
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  const ExprNode& node() const noexcept { return *node_; }

  bool is_number() const noexcept;
  /// True for a Number node holding exactly v.
  bool is_number(double v) const noexcept;

  friend bool operator==(const Expr& lhs, const Expr& rhs);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct NumberNode {
  double value;
};
struct VariableNode {
  Variable var;
};
struct NamedNode {
  NamedConstant which;
};
struct UnaryNode {
  UnaryOp op;
  Expr child;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};

struct ExprNode {
  std::variant<NumberNode, VariableNode, NamedNode, UnaryNode, BinaryNode> data;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  double dy = 0.0;
};

/// Throws ParseError.
Expr parse(std::string_view text);

/// Canonical fully parenthesized text; parse(print(e)) == e.
std::string print(const Expr& e);

/// Throws Error(ExpressionDomain) naming the offending subexpression for
/// log of a non-positive number, sqrt of a negative one, division by zero or
/// a negative base with a non-integer exponent. Overflow yields infinity.
double evaluate(const Expr& e, const Point& p);

/// Exact partial derivative, simplified.
Expr differentiate(const Expr& e, Variable v);

/// Bottom-up rewriting with 0+u -> u, u+0 -> u, u-0 -> u, u*1 -> u,
/// 1*u -> u, u*0 -> 0, 0*u -> 0, u^1 -> u, u^0 -> 1 and constant folding.
Expr simplify(const Expr& e);

bool depends_on(const Expr& e, Variable v);

/// False when e contains abs or sign, whose derivatives are discontinuous.
bool is_c2(const Expr& e);

const char* to_string(Variable v) noexcept;

}  // namespace fcv
