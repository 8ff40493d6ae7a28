#pragma once

// A small expression language for real functions of one variable:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | var | name '(' expr ')' | '(' expr ')'
//
// Functions: sin cos exp abs sqrt. The variable is "x" unless another name
// is given to parse(). Expressions are immutable and cheap to copy.

#include <memory>
#include <string>
#include <string_view>

namespace pqbask {

class Expr {
 public:
  struct Node;

  /// Throws EvaluationError on division by zero, even roots of negatives,
  /// log-domain violations of non-integer powers, or non-finite results.
  double operator()(double x) const;

  /// Fully parenthesized text that parses back to an equal expression.
  std::string to_string() const;

  const std::string& variable() const noexcept { return variable_; }

  /// Substitutes inner for the variable: result(x) = this(inner(x)).
  Expr compose(const Expr& inner) const;

  /// f*(z) = f(z^2).
  Expr compose_square() const;

  static Expr constant(double c, std::string variable = "x");

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend Expr parse(std::string_view text, std::string_view variable);
  Expr(std::shared_ptr<const Node> root, std::string variable)
      : root_(std::move(root)), variable_(std::move(variable)) {}

  std::shared_ptr<const Node> root_;
  std::string variable_;
};

/// Throws ParseError with the byte offset of the offending token.
Expr parse(std::string_view text, std::string_view variable = "x");

}  // namespace pqbask
