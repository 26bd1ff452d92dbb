#pragma once

// Scalar expressions in one variable `u`, parsed from text and
// differentiated symbolically.
//
// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | 'u' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | tan | arctan | atan | ln | log | exp | sqrt | abs
//
// `**` is accepted as a synonym for `^`.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at column " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Expression {
 public:
  enum class Op { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Atan, Ln, Exp, Sqrt, Abs, Sign };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  static Expression parse(std::string_view text);
  static Expression constant(double value);
  static Expression variable();

  double operator()(double u) const;
  Expression derivative() const;

  bool is_constant() const;
  std::string to_string() const;

  const NodePtr& root() const { return root_; }

 private:
  explicit Expression(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

struct Expression::Node {
  Op op;
  double value = 0.0;
  NodePtr lhs;
  NodePtr rhs;
};

/// Parses and evaluates an expression that must not depend on `u`.
double evaluate_constant(std::string_view text);

}  // namespace hc
