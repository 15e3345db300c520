// Recursive-descent parser for fundamental relations.
//
//   expr     := term { ('+' | '-') term }
//   term     := unary { ('*' | '/') unary }
//   unary    := ('-' | '+') unary | power
//   power    := primary [ '^' exponent ]
//   exponent := literal [ '^' exponent ]            (right-associative)
//   literal  := ['-' | '+'] number | '(' ['-' | '+'] number ')'
//   primary  := number | var | func '(' expr ')' | '(' expr ')'
//   var      := q1 | q2 | u | v
//   func     := log | exp | sqrt

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "gtd/expr.hpp"

namespace gtd {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_space();
    const std::string found =
        pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input";
    throw SyntaxError(pos_, std::move(expected), found);
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string(1, c)});
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = Expr::sum(e, term());
      else if (accept('-'))
        e = Expr::sum(e, Expr::negate(term()));
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*'))
        e = Expr::product(e, unary());
      else if (accept('/'))
        e = Expr::quotient(e, unary());
      else
        return e;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::negate(unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::power(base, exponent());
    return base;
  }

  double exponent() {
    double value;
    if (accept('(')) {
      value = signed_number();
      expect(')');
    } else {
      value = signed_number();
    }
    if (accept('^')) value = std::pow(value, exponent());
    return value;
  }

  double signed_number() {
    double sign = 1.0;
    if (accept('-'))
      sign = -1.0;
    else
      accept('+');
    if (!starts_number()) fail({"number", "(", "-"});
    return sign * number();
  }

  bool starts_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double number() {
    skip_space();
    const char* begin = text_.data() + pos_;
    // Bounded copy: strtod needs a terminated buffer.
    std::string buf(begin, text_.size() - pos_);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) fail({"number"});
    pos_ += static_cast<std::size_t>(end - buf.c_str());
    return v;
  }

  Expr primary() {
    if (starts_number()) return Expr::constant(number());
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "q1" || name == "u") return Expr::variable(Var::q1);
      if (name == "q2" || name == "v") return Expr::variable(Var::q2);
      if (name == "log" || name == "exp" || name == "sqrt") {
        expect('(');
        Expr arg = expr();
        expect(')');
        if (name == "log") return Expr::log(arg);
        if (name == "exp") return Expr::exp(arg);
        return Expr::power(arg, 0.5);
      }
      throw Error(ErrorKind::UnknownIdentifier,
                  "unknown identifier '" + std::string(name) + "' at offset " +
                      std::to_string(start));
    }
    fail({"number", "identifier", "(", "-"});
  }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace gtd
