#include <cctype>
#include <charconv>
#include <limits>

#include "jacobitk/expr.hpp"

namespace jacobitk {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind = Tok::end;
  std::size_t pos = 0;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    cur_.pos = i_;
    if (i_ >= s_.size()) {
      cur_ = {Tok::end, i_, {}};
      return;
    }
    char c = s_[i_];
    auto single = [&](Tok k) {
      cur_ = {k, i_, s_.substr(i_, 1)};
      ++i_;
    };
    switch (c) {
      case '+':
        return single(Tok::plus);
      case '-':
        return single(Tok::minus);
      case '*':
        return single(Tok::star);
      case '/':
        return single(Tok::slash);
      case '^':
        return single(Tok::caret);
      case '(':
        return single(Tok::lparen);
      case ')':
        return single(Tok::rparen);
      default:
        break;
    }
    std::size_t start = i_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ < s_.size() && s_[i_] == '.') {
        ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
      if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
        std::size_t save = i_;
        ++i_;
        if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
          while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        } else {
          i_ = save;
        }
      }
      cur_ = {Tok::number, start, s_.substr(start, i_ - start)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
        ++i_;
      }
      cur_ = {Tok::ident, start, s_.substr(start, i_ - start)};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                         std::to_string(i_),
                     i_);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token cur_;
};

bool is_integer_literal(std::string_view t) {
  for (char c : t) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !t.empty();
}

Number literal_value(const Token& t) {
  if (is_integer_literal(t.text)) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec == std::errc() && p == t.text.data() + t.text.size()) return Number(v);
  }
  double d = 0.0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) {
    throw ParseError("malformed number '" + std::string(t.text) + "' at position " +
                         std::to_string(t.pos),
                     t.pos);
  }
  return Number::real(d);
}

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names) : lex_(text), names_(names) {}

  Expr parse_all() {
    Expr e = expression();
    if (lex_.peek().kind != Tok::end) {
      error("unexpected '" + std::string(lex_.peek().text) + "'", lex_.peek().pos);
    }
    return e;
  }

 private:
  [[noreturn]] static void error(const std::string& what, std::size_t pos) {
    throw ParseError(what + " at position " + std::to_string(pos), pos);
  }

  Expr expression() {
    Expr left = term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      Op op = lex_.take().kind == Tok::plus ? Op::add : Op::sub;
      Expr right = term();
      left = Expr::raw(op, {left, right});
    }
    return left;
  }

  Expr term() {
    Expr left = unary();
    while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
      Token op = lex_.take();
      Expr right = unary();
      if (op.kind == Tok::star) {
        left = Expr::raw(Op::mul, {left, right});
        continue;
      }
      if (right.is_zero()) error("division by zero", op.pos);
      if (left.is_constant() && right.is_constant()) {
        left = Expr::constant(left.value() / right.value());
      } else {
        left = Expr::raw(Op::div, {left, right});
      }
    }
    return left;
  }

  Expr unary() {
    if (lex_.peek().kind == Tok::minus) {
      lex_.take();
      Expr operand = unary();
      if (operand.is_constant()) return Expr::constant(-operand.value());
      return Expr::raw(Op::neg, {operand});
    }
    if (lex_.peek().kind == Tok::plus) {
      lex_.take();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    while (lex_.peek().kind == Tok::caret) {
      lex_.take();
      base = Expr::raw(Op::pow, {base}, exponent());
    }
    return base;
  }

  int exponent() {
    bool paren = false;
    if (lex_.peek().kind == Tok::lparen) {
      lex_.take();
      paren = true;
    }
    bool negative = false;
    if (lex_.peek().kind == Tok::minus) {
      lex_.take();
      negative = true;
    }
    Token t = lex_.peek();
    if (t.kind != Tok::number || !is_integer_literal(t.text)) {
      error("^ with non-integer exponent", t.pos);
    }
    lex_.take();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || v > std::numeric_limits<int>::max() / 2) {
      error("exponent out of range", t.pos);
    }
    if (paren) {
      if (lex_.peek().kind != Tok::rparen) error("expected ')'", lex_.peek().pos);
      lex_.take();
    }
    return static_cast<int>(negative ? -v : v);
  }

  Expr primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::number:
        return Expr::constant(literal_value(t));
      case Tok::lparen: {
        Expr e = expression();
        if (lex_.peek().kind != Tok::rparen) error("expected ')'", lex_.peek().pos);
        lex_.take();
        return e;
      }
      case Tok::ident: {
        if (lex_.peek().kind == Tok::lparen) return call(t);
        for (std::size_t i = 0; i < names_.size(); ++i) {
          if (names_[i] == t.text) return Expr::coordinate(static_cast<int>(i));
        }
        error("unknown identifier \"" + std::string(t.text) + "\"", t.pos);
      }
      case Tok::end:
        error("unexpected end of expression", t.pos);
      default:
        error("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  Expr call(const Token& name) {
    Op op;
    if (name.text == "exp") {
      op = Op::exp;
    } else if (name.text == "ln") {
      op = Op::ln;
    } else if (name.text == "sin") {
      op = Op::sin;
    } else if (name.text == "cos") {
      op = Op::cos;
    } else {
      error("unknown function \"" + std::string(name.text) + "\"", name.pos);
    }
    lex_.take();  // (
    Expr arg = expression();
    if (lex_.peek().kind != Tok::rparen) error("expected ')'", lex_.peek().pos);
    lex_.take();
    return Expr::raw(op, {arg});
  }

  Lexer lex_;
  std::span<const std::string> names_;
};

}  // namespace

Expr parse(std::string_view text, std::span<const std::string> names) {
  return Parser(text, names).parse_all();
}

}  // namespace jacobitk
