#include "hc/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace hc {

using Op = Expression::Op;
using NodePtr = Expression::NodePtr;

namespace {

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Expression::Node>(Expression::Node{op, 0.0, std::move(lhs), std::move(rhs)});
}

NodePtr number(double v) { return std::make_shared<const Expression::Node>(Expression::Node{Op::Constant, v, {}, {}}); }

bool is_const(const NodePtr& n, double v) { return n->op == Op::Constant && n->value == v; }

bool depends_on_u(const NodePtr& n) {
  if (!n) return false;
  if (n->op == Op::Variable) return true;
  return depends_on_u(n->lhs) || depends_on_u(n->rhs);
}

double eval(const NodePtr& n, double u) {
  switch (n->op) {
    case Op::Constant: return n->value;
    case Op::Variable: return u;
    case Op::Add: return eval(n->lhs, u) + eval(n->rhs, u);
    case Op::Sub: return eval(n->lhs, u) - eval(n->rhs, u);
    case Op::Mul: return eval(n->lhs, u) * eval(n->rhs, u);
    case Op::Div: return eval(n->lhs, u) / eval(n->rhs, u);
    case Op::Pow: return std::pow(eval(n->lhs, u), eval(n->rhs, u));
    case Op::Neg: return -eval(n->lhs, u);
    case Op::Sin: return std::sin(eval(n->lhs, u));
    case Op::Cos: return std::cos(eval(n->lhs, u));
    case Op::Tan: return std::tan(eval(n->lhs, u));
    case Op::Atan: return std::atan(eval(n->lhs, u));
    case Op::Ln: return std::log(eval(n->lhs, u));
    case Op::Exp: return std::exp(eval(n->lhs, u));
    case Op::Sqrt: return std::sqrt(eval(n->lhs, u));
    case Op::Abs: return std::abs(eval(n->lhs, u));
    case Op::Sign: {
      const double a = eval(n->lhs, u);
      return (a > 0.0) - (a < 0.0);
    }
  }
  return 0.0;
}

// Builders fold constants and drop neutral elements so derivatives stay small.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->op == Op::Constant && b->op == Op::Constant) return number(a->value + b->value);
  return make(Op::Add, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
  if (a->op == Op::Constant) return number(-a->value);
  if (a->op == Op::Neg) return a->lhs;
  return make(Op::Neg, std::move(a));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b));
  if (a->op == Op::Constant && b->op == Op::Constant) return number(a->value - b->value);
  return make(Op::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return number(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->op == Op::Constant && b->op == Op::Constant) return number(a->value * b->value);
  return make(Op::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return number(0.0);
  if (is_const(b, 1.0)) return a;
  if (a->op == Op::Constant && b->op == Op::Constant) return number(a->value / b->value);
  return make(Op::Div, std::move(a), std::move(b));
}

NodePtr pow(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return number(1.0);
  if (is_const(b, 1.0)) return a;
  if (a->op == Op::Constant && b->op == Op::Constant) return number(std::pow(a->value, b->value));
  return make(Op::Pow, std::move(a), std::move(b));
}

NodePtr unary(Op op, NodePtr a) {
  if (a->op == Op::Constant) return number(eval(make(op, a), 0.0));
  return make(op, std::move(a));
}

NodePtr differentiate(const NodePtr& n) {
  if (!depends_on_u(n)) return number(0.0);
  const NodePtr& a = n->lhs;
  const NodePtr& b = n->rhs;
  switch (n->op) {
    case Op::Constant: return number(0.0);
    case Op::Variable: return number(1.0);
    case Op::Add: return add(differentiate(a), differentiate(b));
    case Op::Sub: return sub(differentiate(a), differentiate(b));
    case Op::Mul: return add(mul(differentiate(a), b), mul(a, differentiate(b)));
    case Op::Div: return div(sub(mul(differentiate(a), b), mul(a, differentiate(b))), mul(b, b));
    case Op::Pow:
      if (!depends_on_u(b)) return mul(mul(b, pow(a, sub(b, number(1.0)))), differentiate(a));
      // a^b (b' ln a + b a' / a)
      return mul(n, add(mul(differentiate(b), unary(Op::Ln, a)), div(mul(b, differentiate(a)), a)));
    case Op::Neg: return neg(differentiate(a));
    case Op::Sin: return mul(unary(Op::Cos, a), differentiate(a));
    case Op::Cos: return neg(mul(unary(Op::Sin, a), differentiate(a)));
    case Op::Tan: {
      NodePtr c = unary(Op::Cos, a);
      return div(differentiate(a), mul(c, c));
    }
    case Op::Atan: return div(differentiate(a), add(number(1.0), mul(a, a)));
    case Op::Ln: return div(differentiate(a), a);
    case Op::Exp: return mul(n, differentiate(a));
    case Op::Sqrt: return div(differentiate(a), mul(number(2.0), n));
    case Op::Abs: return mul(unary(Op::Sign, a), differentiate(a));
    case Op::Sign: return number(0.0);
  }
  return number(0.0);
}

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Atan: return "arctan";
    case Op::Ln: return "ln";
    case Op::Exp: return "exp";
    case Op::Sqrt: return "sqrt";
    case Op::Abs: return "abs";
    case Op::Sign: return "sign";
    default: return "";
  }
}

void print(std::ostream& os, const NodePtr& n, int parent_prec) {
  const int prec = precedence(n->op);
  const bool paren = prec < parent_prec;
  if (paren) os << '(';
  switch (n->op) {
    case Op::Constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n->value;
      if (n->value < 0) os << '(' << tmp.str() << ')';
      else os << tmp.str();
      break;
    }
    case Op::Variable: os << 'u'; break;
    case Op::Add: print(os, n->lhs, prec); os << " + "; print(os, n->rhs, prec); break;
    case Op::Sub: print(os, n->lhs, prec); os << " - "; print(os, n->rhs, prec + 1); break;
    case Op::Mul: print(os, n->lhs, prec); os << '*'; print(os, n->rhs, prec); break;
    case Op::Div: print(os, n->lhs, prec); os << '/'; print(os, n->rhs, prec + 1); break;
    case Op::Pow: print(os, n->lhs, prec + 1); os << '^'; print(os, n->rhs, prec); break;
    case Op::Neg: os << '-'; print(os, n->lhs, prec); break;
    default: os << function_name(n->op) << '('; print(os, n->lhs, 0); os << ')'; break;
  }
  if (paren) os << ')';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return n;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(std::string_view(&c, 1))) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept("+")) lhs = add(lhs, term());
      else if (accept("-")) lhs = sub(lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = signed_factor();
    for (;;) {
      skip_space();
      if (text_.substr(pos_, 2) == "**") return lhs;  // handled in power()
      if (accept("*")) lhs = mul(lhs, signed_factor());
      else if (accept("/")) lhs = div(lhs, signed_factor());
      else return lhs;
    }
  }

  NodePtr signed_factor() {
    if (accept("-")) return neg(signed_factor());
    if (accept("+")) return signed_factor();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept("^") || accept("**")) return pow(base, signed_factor());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr literal() {
    const std::size_t start = pos_;
    double v = 0.0;
    auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(end - text_.data());
    return number(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "u") return make(Op::Variable);
    if (name == "pi") return number(std::numbers::pi);
    static const std::unordered_map<std::string, Op> functions = {
        {"sin", Op::Sin},   {"cos", Op::Cos}, {"tan", Op::Tan},   {"arctan", Op::Atan},
        {"atan", Op::Atan}, {"ln", Op::Ln},   {"log", Op::Ln},    {"exp", Op::Exp},
        {"sqrt", Op::Sqrt}, {"abs", Op::Abs},
    };
    auto it = functions.find(name);
    if (it == functions.end()) throw ParseError("unknown identifier '" + name + "'", start);
    expect('(');
    NodePtr arg = expr();
    expect(')');
    return unary(it->second, std::move(arg));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

Expression Expression::constant(double value) { return Expression(number(value)); }

Expression Expression::variable() { return Expression(make(Op::Variable)); }

double Expression::operator()(double u) const { return eval(root_, u); }

Expression Expression::derivative() const { return Expression(differentiate(root_)); }

bool Expression::is_constant() const { return !depends_on_u(root_); }

std::string Expression::to_string() const {
  std::ostringstream os;
  print(os, root_, 0);
  return os.str();
}

double evaluate_constant(std::string_view text) {
  const Expression e = Expression::parse(text);
  if (!e.is_constant()) throw ParseError("expected a constant expression, found a dependence on u", 0);
  return e(0.0);
}

}  // namespace hc
