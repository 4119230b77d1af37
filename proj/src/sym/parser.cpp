#include "painweyl/sym/parser.hpp"

#include <cctype>

namespace painweyl::sym {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RationalFunction parse() {
    RationalFunction r = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return r;
  }

 private:
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

  RationalFunction expression() {
    RationalFunction acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("exponent must be a non-negative integer literal", start);
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return base.pow(e);
    }
    return base;
  }

  RationalFunction primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expression();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RationalFunction(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto name = text_.substr(start, pos_ - start);
      auto v = VariableRegistry::lookup(name);
      if (!v) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      return RationalFunction::variable(*v);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_expression(std::string_view text) { return Parser(text).parse(); }

Rational parse_decimal(std::string_view text) {
  std::string s(text);
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  bool any = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (seen_point) ++frac_digits;
    } else if (c == '/' && !seen_point) {
      // Allow exact "num/den" as well.
      Rational num(mpz_class(digits.empty() ? std::string("0") : digits, 10));
      Rational den = parse_decimal(s.substr(i + 1));
      if (sgn(den) == 0) throw ParseError("zero denominator in rational literal", i);
      Rational r = num / den;
      return negative ? Rational(-r) : r;
    } else {
      throw ParseError("invalid decimal literal '" + s + "'", i);
    }
  }
  if (!any) throw ParseError("invalid decimal literal '" + s + "'", 0);
  mpz_class numerator(digits, 10);
  mpz_class denominator = 1;
  for (std::size_t k = 0; k < frac_digits; ++k) denominator *= 10;
  Rational r(numerator, denominator);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace painweyl::sym
