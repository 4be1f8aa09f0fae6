#include "core/expr.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "core/error.hpp"

namespace fcv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const char* function_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg:
      return "-";
    case UnaryOp::Sin:
      return "sin";
    case UnaryOp::Cos:
      return "cos";
    case UnaryOp::Exp:
      return "exp";
    case UnaryOp::Log:
      return "log";
    case UnaryOp::Sqrt:
      return "sqrt";
    case UnaryOp::Abs:
      return "abs";
    case UnaryOp::Sign:
      return "sign";
  }
  return "?";
}

const char* operator_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Mul:
      return "*";
    case BinaryOp::Div:
      return "/";
    case BinaryOp::Pow:
      return "^";
  }
  return "?";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void domain_error(const std::string& what, const Expr& where) {
  throw Error(ErrorKind::ExpressionDomain, what + " in " + print(where));
}

// Shared by evaluation and constant folding so both give identical values.
// Returns false when the operation is outside its domain; overflow is left
// to IEEE arithmetic.
bool apply_unary(UnaryOp op, double u, double& out, const char*& why) {
  switch (op) {
    case UnaryOp::Neg:
      out = -u;
      return true;
    case UnaryOp::Sin:
      out = std::sin(u);
      return true;
    case UnaryOp::Cos:
      out = std::cos(u);
      return true;
    case UnaryOp::Exp:
      out = std::exp(u);
      return true;
    case UnaryOp::Log:
      if (!(u > 0.0)) {
        why = "log of non-positive value";
        return false;
      }
      out = std::log(u);
      return true;
    case UnaryOp::Sqrt:
      if (u < 0.0) {
        why = "sqrt of negative value";
        return false;
      }
      out = std::sqrt(u);
      return true;
    case UnaryOp::Abs:
      out = std::abs(u);
      return true;
    case UnaryOp::Sign:
      out = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
      return true;
  }
  return true;
}

bool apply_binary(BinaryOp op, double l, double r, double& out,
                  const char*& why) {
  switch (op) {
    case BinaryOp::Add:
      out = l + r;
      break;
    case BinaryOp::Sub:
      out = l - r;
      break;
    case BinaryOp::Mul:
      out = l * r;
      break;
    case BinaryOp::Div:
      if (r == 0.0) {
        why = "division by zero";
        return false;
      }
      out = l / r;
      break;
    case BinaryOp::Pow:
      if (l < 0.0 && r != std::trunc(r)) {
        why = "negative base with non-integer exponent";
        return false;
      }
      if (l == 0.0 && r < 0.0) {
        why = "division by zero";
        return false;
      }
      out = std::pow(l, r);
      break;
  }
  return true;
}

double named_value(NamedConstant c) {
  return c == NamedConstant::Pi ? std::numbers::pi : std::numbers::e;
}

}  // namespace

Expr Expr::number(double value) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{NumberNode{value}}));
}
Expr Expr::variable(Variable v) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{VariableNode{v}}));
}
Expr Expr::named(NamedConstant c) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{NamedNode{c}}));
}
Expr Expr::unary(UnaryOp op, Expr child) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{UnaryNode{op, std::move(child)}}));
}
Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

bool Expr::is_number() const noexcept {
  return std::holds_alternative<NumberNode>(node_->data);
}

bool Expr::is_number(double v) const noexcept {
  const auto* n = std::get_if<NumberNode>(&node_->data);
  return n != nullptr && n->value == v;
}

bool operator==(const Expr& lhs, const Expr& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = lhs.node_->data;
  const auto& b = rhs.node_->data;
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const NumberNode& n) {
            return n.value == std::get<NumberNode>(b).value;
          },
          [&](const VariableNode& n) {
            return n.var == std::get<VariableNode>(b).var;
          },
          [&](const NamedNode& n) {
            return n.which == std::get<NamedNode>(b).which;
          },
          [&](const UnaryNode& n) {
            const auto& m = std::get<UnaryNode>(b);
            return n.op == m.op && n.child == m.child;
          },
          [&](const BinaryNode& n) {
            const auto& m = std::get<BinaryNode>(b);
            return n.op == m.op && n.lhs == m.lhs && n.rhs == m.rhs;
          },
      },
      a);
}

const char* to_string(Variable v) noexcept {
  switch (v) {
    case Variable::X:
      return "x";
    case Variable::Y:
      return "y";
    case Variable::Dy:
      return "dy";
  }
  return "?";
}

std::string print(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const NumberNode& n) {
            const std::string s = format_number(n.value);
            return std::signbit(n.value) ? "(" + s + ")" : s;
          },
          [](const VariableNode& n) { return std::string(to_string(n.var)); },
          [](const NamedNode& n) {
            return std::string(n.which == NamedConstant::Pi ? "pi" : "e");
          },
          [](const UnaryNode& n) {
            if (n.op == UnaryOp::Neg) return "(-" + print(n.child) + ")";
            return std::string(function_name(n.op)) + "(" + print(n.child) +
                   ")";
          },
          [](const BinaryNode& n) {
            return "(" + print(n.lhs) + " " + operator_symbol(n.op) + " " +
                   print(n.rhs) + ")";
          },
      },
      e.node().data);
}

double evaluate(const Expr& e, const Point& p) {
  return std::visit(
      Overloaded{
          [](const NumberNode& n) { return n.value; },
          [&](const VariableNode& n) {
            switch (n.var) {
              case Variable::X:
                return p.x;
              case Variable::Y:
                return p.y;
              case Variable::Dy:
                return p.dy;
            }
            return 0.0;
          },
          [](const NamedNode& n) { return named_value(n.which); },
          [&](const UnaryNode& n) {
            double out = 0.0;
            const char* why = "";
            if (!apply_unary(n.op, evaluate(n.child, p), out, why)) {
              domain_error(why, e);
            }
            return out;
          },
          [&](const BinaryNode& n) {
            double out = 0.0;
            const char* why = "";
            if (!apply_binary(n.op, evaluate(n.lhs, p), evaluate(n.rhs, p), out,
                              why)) {
              domain_error(why, e);
            }
            return out;
          },
      },
      e.node().data);
}

bool depends_on(const Expr& e, Variable v) {
  return std::visit(
      Overloaded{
          [](const NumberNode&) { return false; },
          [&](const VariableNode& n) { return n.var == v; },
          [](const NamedNode&) { return false; },
          [&](const UnaryNode& n) { return depends_on(n.child, v); },
          [&](const BinaryNode& n) {
            return depends_on(n.lhs, v) || depends_on(n.rhs, v);
          },
      },
      e.node().data);
}

bool is_c2(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const NumberNode&) { return true; },
          [](const VariableNode&) { return true; },
          [](const NamedNode&) { return true; },
          [](const UnaryNode& n) {
            return n.op != UnaryOp::Abs && n.op != UnaryOp::Sign &&
                   is_c2(n.child);
          },
          [](const BinaryNode& n) { return is_c2(n.lhs) && is_c2(n.rhs); },
      },
      e.node().data);
}

Expr simplify(const Expr& e) {
  return std::visit(
      Overloaded{
          [&](const NumberNode&) { return e; },
          [&](const VariableNode&) { return e; },
          [&](const NamedNode&) { return e; },
          [&](const UnaryNode& n) {
            Expr child = simplify(n.child);
            if (const auto* c = std::get_if<NumberNode>(&child.node().data)) {
              double out = 0.0;
              const char* why = "";
              if (apply_unary(n.op, c->value, out, why) && std::isfinite(out)) {
                return Expr::number(out);
              }
            }
            return Expr::unary(n.op, std::move(child));
          },
          [&](const BinaryNode& n) {
            Expr l = simplify(n.lhs);
            Expr r = simplify(n.rhs);
            const auto* lc = std::get_if<NumberNode>(&l.node().data);
            const auto* rc = std::get_if<NumberNode>(&r.node().data);
            if (lc && rc) {
              double out = 0.0;
              const char* why = "";
              if (apply_binary(n.op, lc->value, rc->value, out, why) &&
                  std::isfinite(out)) {
                return Expr::number(out);
              }
            }
            switch (n.op) {
              case BinaryOp::Add:
                if (l.is_number(0.0)) return r;
                if (r.is_number(0.0)) return l;
                break;
              case BinaryOp::Sub:
                if (r.is_number(0.0)) return l;
                break;
              case BinaryOp::Mul:
                if (l.is_number(0.0) || r.is_number(0.0)) {
                  return Expr::number(0.0);
                }
                if (l.is_number(1.0)) return r;
                if (r.is_number(1.0)) return l;
                break;
              case BinaryOp::Pow:
                if (r.is_number(1.0)) return l;
                if (r.is_number(0.0)) return Expr::number(1.0);
                break;
              case BinaryOp::Div:
                break;
            }
            return Expr::binary(n.op, std::move(l), std::move(r));
          },
      },
      e.node().data);
}

namespace {

Expr num(double v) { return Expr::number(v); }
Expr mul(Expr a, Expr b) {
  return Expr::binary(BinaryOp::Mul, std::move(a), std::move(b));
}
Expr div(Expr a, Expr b) {
  return Expr::binary(BinaryOp::Div, std::move(a), std::move(b));
}

// Raw derivative; zero derivatives of subtrees are propagated as the literal
// 0 so that chain and quotient rules never build dead branches.
Expr derive(const Expr& e, Variable v) {
  return std::visit(
      Overloaded{
          [](const NumberNode&) { return num(0.0); },
          [&](const VariableNode& n) { return num(n.var == v ? 1.0 : 0.0); },
          [](const NamedNode&) { return num(0.0); },
          [&](const UnaryNode& n) {
            Expr du = derive(n.child, v);
            if (du.is_number(0.0)) return num(0.0);
            const Expr& u = n.child;
            switch (n.op) {
              case UnaryOp::Neg:
                return Expr::unary(UnaryOp::Neg, du);
              case UnaryOp::Sin:
                return mul(Expr::unary(UnaryOp::Cos, u), du);
              case UnaryOp::Cos:
                return mul(Expr::unary(UnaryOp::Neg,
                                       Expr::unary(UnaryOp::Sin, u)),
                           du);
              case UnaryOp::Exp:
                return mul(Expr::unary(UnaryOp::Exp, u), du);
              case UnaryOp::Log:
                return div(du, u);
              case UnaryOp::Sqrt:
                return div(du, mul(num(2.0), Expr::unary(UnaryOp::Sqrt, u)));
              case UnaryOp::Abs:
                return mul(Expr::unary(UnaryOp::Sign, u), du);
              case UnaryOp::Sign:
                return num(0.0);
            }
            return num(0.0);
          },
          [&](const BinaryNode& n) {
            const Expr& u = n.lhs;
            const Expr& w = n.rhs;
            if (n.op == BinaryOp::Pow) {
              Expr du = derive(u, v);
              if (du.is_number(0.0)) return num(0.0);
              const double c = evaluate(w, Point{});
              if (c == 0.0) return num(0.0);
              return mul(mul(num(c), Expr::binary(BinaryOp::Pow, u,
                                                  num(c - 1.0))),
                         du);
            }
            Expr du = derive(u, v);
            Expr dw = derive(w, v);
            const bool zu = du.is_number(0.0);
            const bool zw = dw.is_number(0.0);
            switch (n.op) {
              case BinaryOp::Add:
                if (zu) return dw;
                if (zw) return du;
                return Expr::binary(BinaryOp::Add, du, dw);
              case BinaryOp::Sub:
                if (zw) return du;
                if (zu) return Expr::unary(UnaryOp::Neg, dw);
                return Expr::binary(BinaryOp::Sub, du, dw);
              case BinaryOp::Mul:
                if (zu && zw) return num(0.0);
                if (zw) return mul(du, w);
                if (zu) return mul(u, dw);
                return Expr::binary(BinaryOp::Add, mul(du, w), mul(u, dw));
              case BinaryOp::Div: {
                if (zu && zw) return num(0.0);
                if (zw) return div(du, w);
                Expr w2 = Expr::binary(BinaryOp::Pow, w, num(2.0));
                if (zu) {
                  return Expr::unary(UnaryOp::Neg, div(mul(u, dw), w2));
                }
                return div(Expr::binary(BinaryOp::Sub, mul(du, w), mul(u, dw)),
                           w2);
              }
              case BinaryOp::Pow:
                break;
            }
            return num(0.0);
          },
      },
      e.node().data);
}

}  // namespace

Expr differentiate(const Expr& e, Variable v) { return simplify(derive(e, v)); }

}  // namespace fcv
