#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdiff/taylor2.hpp"

namespace qdiff::expr {

enum class NodeKind { Constant, Variable, Unary, Binary };

enum class UnaryFn {
  Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Asin, Acos, Atan, Asinh
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Node {
  NodeKind kind = NodeKind::Constant;
  double constant = 0.0;
  std::string constant_name;  // "pi" or "e" for named constants, empty otherwise
  int variable = -1;
  UnaryFn unary = UnaryFn::Neg;
  BinaryOp binary = BinaryOp::Add;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  // true when the subtree references no variable
  bool is_constant = true;
};

/// Immutable parsed expression over a declared, ordered variable list.
/// Copies share the node tree; evaluation is reentrant.
class ExprAST {
 public:
  ExprAST() = default;
  ExprAST(std::shared_ptr<const Node> root, std::vector<std::string> vars)
      : root_(std::move(root)), vars_(std::move(vars)) {}

  const Node& root() const { return *root_; }
  const std::vector<std::string>& variables() const { return vars_; }
  bool empty() const { return root_ == nullptr; }

  /// Fully parenthesized text that parses back to an equal tree.
  std::string to_string() const;

  friend bool operator==(const ExprAST& a, const ExprAST& b);

 private:
  std::shared_ptr<const Node> root_;
  std::vector<std::string> vars_;
};

/// Standard infix grammar: + - * / ^ (right associative), unary minus binding
/// looser than ^ (so -x^2 is -(x^2)), function calls, pi and e.
/// Throws SyntaxError or UnknownIdentifier.
ExprAST parse_expression(std::string_view source, const std::vector<std::string>& vars);

/// Value plus exact first and second partials at `point` (one entry per
/// declared variable). Throws DomainError outside a function's domain.
Taylor2 eval_taylor2(const ExprAST& ast, std::span<const double> point);

/// Plain value, no derivatives.
double eval_value(const ExprAST& ast, std::span<const double> point);

struct ScalarJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Single-variable evaluation returning value and first derivative.
std::pair<double, double> eval_scalar_d(const ExprAST& ast, double x);

/// Single-variable evaluation with the second derivative as well.
ScalarJet eval_scalar_d2(const ExprAST& ast, double x);

const char* unary_name(UnaryFn fn);

}  // namespace qdiff::expr
