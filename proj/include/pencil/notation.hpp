#pragma once

// Recursive-descent reader for the arithmetic notation shared by tower
// elements, minimal polynomials and forms:
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := power (('*'|'/') power)*
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')' | '-' primary
//
// The value type decides what division and identifiers mean.

#include "pencil/errors.hpp"
#include "pencil/rational.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <type_traits>

namespace pencil {

template <class V, class Ident, class Const>
class ExpressionReader {
 public:
  ExpressionReader(std::string_view text, Ident& ident, Const& constant)
      : text_(text), ident_(ident), constant_(constant) {}

  V read() {
    V v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  Ident& ident_;
  Const& constant_;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  V expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    V acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  V term() {
    V acc = power();
    for (;;) {
      if (accept('*')) acc = acc * power();
      else if (accept('/')) acc = acc / power();
      else return acc;
    }
  }

  V power() {
    V base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      V r = constant_(Rational(1));
      for (unsigned i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  V primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return constant_(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return ident_(text_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

/// Appends `coef*monomial` to a sum being printed, folding unit coefficients
/// and leading minus signs. An empty monomial means a constant term.
inline void append_term(std::string& out, const std::string& coef, const std::string& monomial) {
  bool negative = !coef.empty() && coef.front() == '-';
  std::string magnitude = negative ? coef.substr(1) : coef;
  std::string body;
  if (monomial.empty()) body = magnitude;
  else if (magnitude == "1") body = monomial;
  else body = magnitude + "*" + monomial;
  if (out.empty()) out = negative ? "-" + body : body;
  else out += (negative ? " - " : " + ") + body;
}

template <class V, class Ident, class Const>
V read_expression(std::string_view text, Ident&& ident, Const&& constant) {
  ExpressionReader<V, std::remove_reference_t<Ident>, std::remove_reference_t<Const>> reader(
      text, ident, constant);
  return reader.read();
}

}  // namespace pencil
