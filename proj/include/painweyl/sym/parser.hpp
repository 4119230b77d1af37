#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "painweyl/sym/rational_function.hpp"

namespace painweyl::sym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses infix text over registered variable names: integer literals,
/// `+ - * / ^` (exponent must be a non-negative integer literal) and
/// parentheses. Unknown identifiers are rejected.
RationalFunction parse_expression(std::string_view text);

/// Parses a decimal string such as "-0.125" or "3" into an exact rational.
Rational parse_decimal(std::string_view text);

}  // namespace painweyl::sym
