#include <cctype>
#include <charconv>
#include <string>

#include "core/error.hpp"
#include "core/expr.hpp"

namespace fcv {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
  double value = 0.0;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      ++i_;
    }
    const std::size_t start = i_;
    if (i_ >= s_.size()) return {Tok::End, start, {}};
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number(start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
        ++i_;
      }
      return {Tok::Ident, start, s_.substr(start, i_ - start)};
    }
    ++i_;
    const auto one = s_.substr(start, 1);
    switch (c) {
      case '+':
        return {Tok::Plus, start, one};
      case '-':
        return {Tok::Minus, start, one};
      case '*':
        return {Tok::Star, start, one};
      case '/':
        return {Tok::Slash, start, one};
      case '^':
        return {Tok::Caret, start, one};
      case '(':
        return {Tok::LParen, start, one};
      case ')':
        return {Tok::RParen, start, one};
      default:
        throw ParseError(start, "an expression", "'" + std::string(one) + "'");
    }
  }

 private:
  Token number(std::size_t start) {
    auto digits = [&] {
      const std::size_t from = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return i_ > from;
    };
    const bool lead = digits();
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      if (!digits() && !lead) {
        throw ParseError(start, "a digit", "'.'");
      }
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      // Only an exponent when digits follow; "2e" is left for the parser to
      // reject as an adjacent identifier.
      std::size_t j = i_ + 1;
      if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
      if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        i_ = j;
        digits();
      }
    }
    const auto text = s_.substr(start, i_ - start);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw ParseError(start, "a finite number", "'" + std::string(text) + "'");
    }
    return {Tok::Number, start, text, v};
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  Expr parse_all() {
    Expr e = expression();
    if (cur_.kind != Tok::End) {
      throw ParseError(cur_.pos, "an operator or end of input", describe(cur_));
    }
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) throw ParseError(cur_.pos, what, describe(cur_));
    advance();
  }

  Expr expression() {
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const BinaryOp op = cur_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = Expr::binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const BinaryOp op = cur_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      lhs = Expr::binary(op, std::move(lhs), unary());
    }
    return lhs;
  }

  Expr unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      Expr child = unary();
      if (const auto* n = std::get_if<NumberNode>(&child.node().data)) {
        return Expr::number(-n->value);
      }
      return Expr::unary(UnaryOp::Neg, std::move(child));
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (cur_.kind != Tok::Caret) return base;
    advance();
    const std::size_t at = cur_.pos;
    Expr exponent = unary();
    for (Variable v : {Variable::X, Variable::Y, Variable::Dy}) {
      if (depends_on(exponent, v)) {
        throw ParseError(at, "a constant exponent",
                         "'" + print(exponent) + "'");
      }
    }
    return Expr::binary(BinaryOp::Pow, std::move(base), std::move(exponent));
  }

  Expr primary() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::Number:
        advance();
        return Expr::number(t.value);
      case Tok::LParen: {
        advance();
        Expr e = expression();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident:
        advance();
        return identifier(t);
      default:
        throw ParseError(t.pos, "an expression", describe(t));
    }
  }

  Expr identifier(const Token& t) {
    const auto name = t.text;
    if (name == "x") return Expr::variable(Variable::X);
    if (name == "y") return Expr::variable(Variable::Y);
    if (name == "dy") return Expr::variable(Variable::Dy);
    if (name == "pi") return Expr::named(NamedConstant::Pi);
    if (name == "e") return Expr::named(NamedConstant::E);
    static constexpr std::pair<std::string_view, UnaryOp> kFunctions[] = {
        {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},
        {"exp", UnaryOp::Exp},   {"log", UnaryOp::Log},
        {"sqrt", UnaryOp::Sqrt}, {"abs", UnaryOp::Abs},
        {"sign", UnaryOp::Sign},
    };
    for (const auto& [fname, op] : kFunctions) {
      if (name != fname) continue;
      expect(Tok::LParen, "'('");
      Expr arg = expression();
      expect(Tok::RParen, "')'");
      return Expr::unary(op, std::move(arg));
    }
    throw ParseError(t.pos, "a variable, constant or function",
                     "'" + std::string(name) + "'");
  }

  Lexer lex_;
  Token cur_{Tok::End, 0, {}};
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace fcv
