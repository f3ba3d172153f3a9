#include "casurf/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "casurf/errors.hpp"

namespace casurf {

namespace {
enum class Kind { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
}  // namespace

struct Expression::Node {
  Kind kind;
  double value = 0.0;  // Const
  char var = 0;        // Var: 'u', 'v', or 't' (meaning t0)
  int exponent = 0;    // Pow
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr leaf_const(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = Kind::Const;
  n->value = v;
  return n;
}

NodePtr leaf_var(char c) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = Kind::Var;
  n->var = c;
  return n;
}

bool is_const(const NodePtr& n, double v) {
  return n->kind == Kind::Const && n->value == v;
}

NodePtr make(Kind k, NodePtr a, NodePtr b = nullptr, int exponent = 0) {
  // Light constant folding keeps symbolic derivatives small.
  if (a && a->kind == Kind::Const && (!b || b->kind == Kind::Const)) {
    switch (k) {
      case Kind::Add: return leaf_const(a->value + b->value);
      case Kind::Sub: return leaf_const(a->value - b->value);
      case Kind::Mul: return leaf_const(a->value * b->value);
      case Kind::Div:
        if (b->value != 0.0) return leaf_const(a->value / b->value);
        break;
      case Kind::Neg: return leaf_const(-a->value);
      case Kind::Sin: return leaf_const(std::sin(a->value));
      case Kind::Cos: return leaf_const(std::cos(a->value));
      case Kind::Exp: return leaf_const(std::exp(a->value));
      case Kind::Pow: return leaf_const(std::pow(a->value, exponent));
      default: break;
    }
  }
  switch (k) {
    case Kind::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case Kind::Sub:
      if (is_const(b, 0.0)) return a;
      break;
    case Kind::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return leaf_const(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case Kind::Div:
      if (is_const(a, 0.0)) return leaf_const(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case Kind::Pow:
      if (exponent == 0) return leaf_const(1.0);
      if (exponent == 1) return a;
      break;
    default:
      break;
  }
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->exponent = exponent;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        left = make(Kind::Add, left, term());
      } else if (accept('-')) {
        left = make(Kind::Sub, left, term());
      } else {
        return left;
      }
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        left = make(Kind::Mul, left, unary());
      } else if (accept('/')) {
        left = make(Kind::Div, left, unary());
      } else {
        return left;
      }
    }
  }

  NodePtr unary() {
    skip_ws();
    if (accept('-')) return make(Kind::Neg, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip_ws();
    if (!accept('^')) return base;
    skip_ws();
    bool neg = accept('-');
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("exponent must be an integer literal");
    int e = 0;
    std::from_chars(s_.data() + start, s_.data() + pos_, e);
    return make(Kind::Pow, base, nullptr, neg ? -e : e);
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return identifier();
    }
    fail("unexpected character");
  }

  NodePtr number() {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<size_t>(ptr - s_.data());
    return leaf_const(v);
  }

  NodePtr identifier() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == "u") return leaf_var('u');
    if (name == "v") return leaf_var('v');
    if (name == "t0") return leaf_var('t');
    if (name == "sin" || name == "cos" || name == "exp") {
      skip_ws();
      expect('(');
      NodePtr arg = expr();
      expect(')');
      const Kind k =
          name == "sin" ? Kind::Sin : (name == "cos" ? Kind::Cos : Kind::Exp);
      return make(k, arg);
    }
    std::ostringstream os;
    os << "unknown identifier '" << name << "'";
    fail(os.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }
  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_ws();
    if (!accept(c)) {
      std::ostringstream os;
      os << "expected '" << c << "'";
      fail(os.str());
    }
  }
  [[noreturn]] void fail(const std::string& why) const {
    std::ostringstream os;
    os << "expression parse error at position " << pos_ << ": " << why
       << " in \"" << std::string(s_) << "\"";
    throw ConfigError(os.str());
  }

  std::string_view s_;
  size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, double u, double v, double t0) {
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::Var: return n.var == 'u' ? u : (n.var == 'v' ? v : t0);
    case Kind::Add: return eval_node(*n.a, u, v, t0) + eval_node(*n.b, u, v, t0);
    case Kind::Sub: return eval_node(*n.a, u, v, t0) - eval_node(*n.b, u, v, t0);
    case Kind::Mul: return eval_node(*n.a, u, v, t0) * eval_node(*n.b, u, v, t0);
    case Kind::Div: return eval_node(*n.a, u, v, t0) / eval_node(*n.b, u, v, t0);
    case Kind::Pow: return std::pow(eval_node(*n.a, u, v, t0), n.exponent);
    case Kind::Neg: return -eval_node(*n.a, u, v, t0);
    case Kind::Sin: return std::sin(eval_node(*n.a, u, v, t0));
    case Kind::Cos: return std::cos(eval_node(*n.a, u, v, t0));
    case Kind::Exp: return std::exp(eval_node(*n.a, u, v, t0));
  }
  return 0.0;
}

NodePtr diff_node(const NodePtr& n, char var) {
  switch (n->kind) {
    case Kind::Const: return leaf_const(0.0);
    case Kind::Var: return leaf_const(n->var == var ? 1.0 : 0.0);
    case Kind::Add: return make(Kind::Add, diff_node(n->a, var), diff_node(n->b, var));
    case Kind::Sub: return make(Kind::Sub, diff_node(n->a, var), diff_node(n->b, var));
    case Kind::Mul:
      return make(Kind::Add, make(Kind::Mul, diff_node(n->a, var), n->b),
                  make(Kind::Mul, n->a, diff_node(n->b, var)));
    case Kind::Div:
      // (a/b)' = a'/b - a b'/b^2
      return make(Kind::Sub, make(Kind::Div, diff_node(n->a, var), n->b),
                  make(Kind::Div, make(Kind::Mul, n->a, diff_node(n->b, var)),
                       make(Kind::Pow, n->b, nullptr, 2)));
    case Kind::Pow:
      return make(Kind::Mul,
                  make(Kind::Mul, leaf_const(n->exponent),
                       make(Kind::Pow, n->a, nullptr, n->exponent - 1)),
                  diff_node(n->a, var));
    case Kind::Neg: return make(Kind::Neg, diff_node(n->a, var));
    case Kind::Sin:
      return make(Kind::Mul, make(Kind::Cos, n->a), diff_node(n->a, var));
    case Kind::Cos:
      return make(Kind::Neg,
                  make(Kind::Mul, make(Kind::Sin, n->a), diff_node(n->a, var)));
    case Kind::Exp:
      return make(Kind::Mul, make(Kind::Exp, n->a), diff_node(n->a, var));
  }
  return leaf_const(0.0);
}

bool uses_node(const Expression::Node& n, char var) {
  if (n.kind == Kind::Var) return n.var == var;
  return (n.a && uses_node(*n.a, var)) || (n.b && uses_node(*n.b, var));
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).run();
  e.text_ = std::string(text);
  return e;
}

double Expression::eval(double u, double v, double t0) const {
  if (!root_) throw ConfigError("evaluating an empty expression");
  return eval_node(*root_, u, v, t0);
}

Expression Expression::derivative(char var) const {
  if (!root_) throw ConfigError("differentiating an empty expression");
  Expression e;
  e.root_ = diff_node(root_, var);
  e.text_ = "d/d" + std::string(1, var) + "(" + text_ + ")";
  return e;
}

bool Expression::uses(char var) const {
  return root_ && uses_node(*root_, var);
}

std::array<Expression, 3> parse_immersion_triple(std::string_view text) {
  // Trim whitespace, then an optional outer parenthesis pair.
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view body = text.substr(b, e - b);
  if (!body.empty() && body.front() == '(' && body.back() == ')') {
    // Only strip if the parens actually match each other.
    int depth = 0;
    bool wraps = true;
    for (size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') {
        --depth;
        if (depth == 0 && i + 1 != body.size()) {
          wraps = false;
          break;
        }
      }
    }
    if (wraps) body = body.substr(1, body.size() - 2);
  }

  std::vector<std::string_view> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    if (body[i] == ')') --depth;
    if (body[i] == ',' && depth == 0) {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(body.substr(start));
  if (parts.size() != 3) {
    throw ConfigError(
        "an immersion expression needs exactly three comma-separated "
        "components \"(t, x, y)\"");
  }
  return {Expression::parse(parts[0]), Expression::parse(parts[1]),
          Expression::parse(parts[2])};
}

}  // namespace casurf
