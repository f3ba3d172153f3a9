#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

namespace casurf {

// Tiny closed-form expression language for config files and CLI flags.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' integer]
//   primary := number | 'u' | 'v' | 't0' | ('sin'|'cos'|'exp') '(' expr ')'
//              | '(' expr ')'
//
// Exponents are integer literals. Parsing failures throw ConfigError.
class Expression {
 public:
  Expression() = default;

  static Expression parse(std::string_view text);

  double eval(double u, double v, double t0 = 0.0) const;

  /// Exact symbolic derivative with respect to 'u' or 'v'.
  Expression derivative(char var) const;

  /// True when the parsed tree references the given variable ('u'/'v').
  bool uses(char var) const;

  bool empty() const { return root_ == nullptr; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Parses "(e_t, e_x, e_y)" — three comma-separated expressions, outer
/// parentheses optional — into the coordinate components of an immersion.
std::array<Expression, 3> parse_immersion_triple(std::string_view text);

}  // namespace casurf
