#include "pqbask/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "pqbask/errors.hpp"

namespace pqbask {

enum class Func { Sin, Cos, Exp, Abs, Sqrt };

struct Expr::Node {
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Const;
  double value = 0.0;
  Func func = Func::Sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr int kMaxDepth = 200;

struct FuncName {
  std::string_view name;
  Func func;
};
constexpr FuncName kFunctions[] = {
    {"sin", Func::Sin}, {"cos", Func::Cos}, {"exp", Func::Exp},
    {"abs", Func::Abs}, {"sqrt", Func::Sqrt},
};

std::string_view func_name(Func f) {
  for (const auto& entry : kFunctions) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Const;
  n->value = v;
  return n;
}

NodePtr make_var() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Var;
  return n;
}

NodePtr make_unary(Node::Kind kind, NodePtr arg, Func f = Func::Sin) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->func = f;
  n->lhs = std::move(arg);
  return n;
}

NodePtr make_binary(Node::Kind kind, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable)
      : text_(text), variable_(variable) {}

  NodePtr run() {
    NodePtr root = expression();
    skip_space();
    if (pos_ != text_.size()) fail("expected operator or end of input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail("expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  NodePtr expression() {
    DepthGuard guard(*this);
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Node::Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Node::Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Node::Kind::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Node::Kind::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    DepthGuard guard(*this);
    if (accept('-')) return make_unary(Node::Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_binary(Node::Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected number, variable, function or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      expect(')');
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (is_ident_start(c)) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  NodePtr number() {
    const std::size_t begin = pos_;
    std::size_t i = pos_;
    while (i < text_.size() && is_digit(text_[i])) ++i;
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      while (i < text_.size() && is_digit(text_[i])) ++i;
    }
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      if (j < text_.size() && is_digit(text_[j])) {
        while (j < text_.size() && is_digit(text_[j])) ++j;
        i = j;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + begin, text_.data() + i, value);
    if (ec != std::errc() || ptr != text_.data() + i || !std::isfinite(value)) {
      fail("malformed or out-of-range number");
    }
    pos_ = i;
    return make_const(value);
  }

  NodePtr identifier() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view name = text_.substr(begin, pos_ - begin);
    if (name == variable_) return make_var();
    for (const auto& entry : kFunctions) {
      if (entry.name == name) {
        expect('(');
        NodePtr arg = expression();
        expect(')');
        return make_unary(Node::Kind::Call, arg, entry.func);
      }
    }
    pos_ = begin;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::string_view variable_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

[[noreturn]] void eval_fail(const char* what, double x) {
  std::ostringstream os;
  os << what << " at " << x;
  throw EvaluationError(os.str());
}

double int_power(double base, std::int64_t e) {
  const bool invert = e < 0;
  std::uint64_t m = invert ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  double result = 1.0;
  double b = base;
  while (m != 0) {
    if (m & 1u) result *= b;
    m >>= 1;
    if (m != 0) b *= b;
  }
  return invert ? 1.0 / result : result;
}

double eval_node(const Node& n, double x) {
  switch (n.kind) {
    case Node::Kind::Const:
      return n.value;
    case Node::Kind::Var:
      return x;
    case Node::Kind::Neg:
      return -eval_node(*n.lhs, x);
    case Node::Kind::Add:
      return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Node::Kind::Sub:
      return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Node::Kind::Mul:
      return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Node::Kind::Div: {
      const double num = eval_node(*n.lhs, x);
      const double den = eval_node(*n.rhs, x);
      if (den == 0.0) eval_fail("division by zero", x);
      return num / den;
    }
    case Node::Kind::Pow: {
      const double base = eval_node(*n.lhs, x);
      const double e = eval_node(*n.rhs, x);
      if (e == std::trunc(e) && std::fabs(e) <= 1024.0) {
        if (base == 0.0 && e < 0.0) eval_fail("division by zero in negative power", x);
        return int_power(base, static_cast<std::int64_t>(e));
      }
      if (base < 0.0) eval_fail("non-integer power of a negative number", x);
      if (base == 0.0) {
        if (e > 0.0) return 0.0;
        eval_fail("division by zero in negative power", x);
      }
      return std::exp(e * std::log(base));
    }
    case Node::Kind::Call: {
      const double a = eval_node(*n.lhs, x);
      switch (n.func) {
        case Func::Sin:
          return std::sin(a);
        case Func::Cos:
          return std::cos(a);
        case Func::Exp:
          return std::exp(a);
        case Func::Abs:
          return std::fabs(a);
        case Func::Sqrt:
          if (a < 0.0) eval_fail("square root of a negative number", x);
          return std::sqrt(a);
      }
    }
  }
  eval_fail("malformed expression", x);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print_node(const Node& n, const std::string& var, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print_node(*n.lhs, var, out);
    out += op;
    print_node(*n.rhs, var, out);
    out += ')';
  };
  switch (n.kind) {
    case Node::Kind::Const:
      out += format_double(n.value);
      return;
    case Node::Kind::Var:
      out += var;
      return;
    case Node::Kind::Neg:
      out += "(-";
      print_node(*n.lhs, var, out);
      out += ')';
      return;
    case Node::Kind::Add:
      return binary(" + ");
    case Node::Kind::Sub:
      return binary(" - ");
    case Node::Kind::Mul:
      return binary(" * ");
    case Node::Kind::Div:
      return binary(" / ");
    case Node::Kind::Pow:
      return binary(" ^ ");
    case Node::Kind::Call:
      out += func_name(n.func);
      out += '(';
      print_node(*n.lhs, var, out);
      out += ')';
      return;
  }
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::Const:
      return a.value == b.value;
    case Node::Kind::Var:
      return true;
    case Node::Kind::Call:
      return a.func == b.func && equal_nodes(*a.lhs, *b.lhs);
    case Node::Kind::Neg:
      return equal_nodes(*a.lhs, *b.lhs);
    default:
      return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
  }
}

NodePtr substitute(const NodePtr& n, const NodePtr& replacement) {
  switch (n->kind) {
    case Node::Kind::Const:
      return n;
    case Node::Kind::Var:
      return replacement;
    default: {
      auto copy = std::make_shared<Node>(*n);
      if (copy->lhs) copy->lhs = substitute(copy->lhs, replacement);
      if (copy->rhs) copy->rhs = substitute(copy->rhs, replacement);
      return copy;
    }
  }
}

}  // namespace

double Expr::operator()(double x) const {
  const double v = eval_node(*root_, x);
  if (!std::isfinite(v)) eval_fail("non-finite result", x);
  return v;
}

std::string Expr::to_string() const {
  std::string out;
  print_node(*root_, variable_, out);
  return out;
}

Expr Expr::compose(const Expr& inner) const {
  return Expr(substitute(root_, inner.root_), inner.variable_);
}

Expr Expr::compose_square() const {
  const NodePtr square =
      make_binary(Node::Kind::Pow, make_var(), make_const(2.0));
  return Expr(substitute(root_, square), variable_);
}

Expr Expr::constant(double c, std::string variable) {
  return Expr(make_const(c), std::move(variable));
}

bool operator==(const Expr& a, const Expr& b) {
  return a.variable_ == b.variable_ && equal_nodes(*a.root_, *b.root_);
}

Expr parse(std::string_view text, std::string_view variable) {
  Parser parser(text, variable);
  return Expr(parser.run(), std::string(variable));
}

}  // namespace pqbask
