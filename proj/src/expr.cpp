#include "qdiff/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>

#include "qdiff/error.hpp"

namespace qdiff::expr {

namespace {

constexpr int kMaxDepth = 200;

struct FnEntry {
  const char* name;
  UnaryFn fn;
};

constexpr FnEntry kFunctions[] = {
    {"sin", UnaryFn::Sin},     {"cos", UnaryFn::Cos},   {"tan", UnaryFn::Tan},
    {"sinh", UnaryFn::Sinh},   {"cosh", UnaryFn::Cosh}, {"tanh", UnaryFn::Tanh},
    {"exp", UnaryFn::Exp},     {"log", UnaryFn::Log},   {"sqrt", UnaryFn::Sqrt},
    {"asin", UnaryFn::Asin},   {"acos", UnaryFn::Acos}, {"atan", UnaryFn::Atan},
    {"asinh", UnaryFn::Asinh}, {"neg", UnaryFn::Neg},
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_constant(double c, std::string name = {}) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->constant = c;
  n->constant_name = std::move(name);
  n->is_constant = true;
  return n;
}

NodePtr make_variable(int index) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->variable = index;
  n->is_constant = false;
  return n;
}

NodePtr make_unary(UnaryFn fn, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Unary;
  n->unary = fn;
  n->is_constant = arg->is_constant;
  n->lhs = std::move(arg);
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binary;
  n->binary = op;
  n->is_constant = a->is_constant && b->is_constant;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "empty expression");
    NodePtr root = parse_sum(0);
    skip_ws();
    if (pos_ < src_.size()) throw SyntaxError(pos_, std::string("unexpected '") + src_[pos_] + "'");
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= src_.size()) throw SyntaxError(pos_, std::string("expected '") + c + "' before end");
      throw SyntaxError(pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
  }
  void guard(int depth) {
    if (depth > kMaxDepth) throw SyntaxError(pos_, "expression nested too deeply");
  }

  NodePtr parse_sum(int depth) {
    guard(depth);
    NodePtr lhs = parse_product(depth + 1);
    for (;;) {
      if (peek('+')) {
        ++pos_;
        lhs = make_binary(BinaryOp::Add, lhs, parse_product(depth + 1));
      } else if (peek('-')) {
        ++pos_;
        lhs = make_binary(BinaryOp::Sub, lhs, parse_product(depth + 1));
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product(int depth) {
    guard(depth);
    NodePtr lhs = parse_unary(depth + 1);
    for (;;) {
      if (peek('*')) {
        ++pos_;
        lhs = make_binary(BinaryOp::Mul, lhs, parse_unary(depth + 1));
      } else if (peek('/')) {
        ++pos_;
        lhs = make_binary(BinaryOp::Div, lhs, parse_unary(depth + 1));
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary(int depth) {
    guard(depth);
    if (peek('-')) {
      ++pos_;
      return make_unary(UnaryFn::Neg, parse_unary(depth + 1));
    }
    if (peek('+')) {
      ++pos_;
      return parse_unary(depth + 1);
    }
    return parse_power(depth + 1);
  }

  NodePtr parse_power(int depth) {
    guard(depth);
    NodePtr base = parse_primary(depth + 1);
    if (peek('^')) {
      ++pos_;
      return make_binary(BinaryOp::Pow, base, parse_unary(depth + 1));
    }
    return base;
  }

  NodePtr parse_primary(int depth) {
    guard(depth);
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum(depth + 1);
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier(depth);
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError(start, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) {
        pos_ = q;
        digits();
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw SyntaxError(start, "malformed number");
    return make_constant(value);
  }

  NodePtr parse_identifier(int depth) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    if (peek('(')) {
      for (const auto& entry : kFunctions) {
        if (name == entry.name) {
          ++pos_;
          NodePtr arg = parse_sum(depth + 1);
          expect(')');
          return make_unary(entry.fn, arg);
        }
      }
      throw UnknownIdentifier(name);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return make_variable(static_cast<int>(i));
    if (name == "pi") return make_constant(std::numbers::pi, "pi");
    if (name == "e") return make_constant(std::numbers::e, "e");
    throw UnknownIdentifier(name);
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Constant:
      return a.constant == b.constant;
    case NodeKind::Variable:
      return a.variable == b.variable;
    case NodeKind::Unary:
      return a.unary == b.unary && nodes_equal(*a.lhs, *b.lhs);
    case NodeKind::Binary:
      return a.binary == b.binary && nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
  }
  return false;
}

void print_node(const Node& n, const std::vector<std::string>& vars, std::string& out) {
  switch (n.kind) {
    case NodeKind::Constant: {
      if (!n.constant_name.empty()) {
        out += n.constant_name;
        return;
      }
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.constant);
      out.append(buf, ptr);
      return;
    }
    case NodeKind::Variable:
      out += vars[n.variable];
      return;
    case NodeKind::Unary:
      if (n.unary == UnaryFn::Neg) {
        out += "(-";
        print_node(*n.lhs, vars, out);
        out += ')';
      } else {
        out += unary_name(n.unary);
        out += '(';
        print_node(*n.lhs, vars, out);
        out += ')';
      }
      return;
    case NodeKind::Binary: {
      static constexpr char kOps[] = {'+', '-', '*', '/', '^'};
      out += '(';
      print_node(*n.lhs, vars, out);
      out += ' ';
      out += kOps[static_cast<int>(n.binary)];
      out += ' ';
      print_node(*n.rhs, vars, out);
      out += ')';
      return;
    }
  }
}

bool is_integer(double c) { return std::isfinite(c) && std::floor(c) == c && std::abs(c) <= 1024; }

// g, g', g'' of each unary function at a. `with_derivatives` selects the domain
// used: derivative singularities (sqrt at 0, asin at +-1) are errors only then.
struct Jet {
  double g0, g1, g2;
};

Jet unary_jet(UnaryFn fn, double a, bool with_derivatives) {
  switch (fn) {
    case UnaryFn::Neg:
      return {-a, -1.0, 0.0};
    case UnaryFn::Sin:
      return {std::sin(a), std::cos(a), -std::sin(a)};
    case UnaryFn::Cos:
      return {std::cos(a), -std::sin(a), -std::cos(a)};
    case UnaryFn::Tan: {
      const double c = std::cos(a);
      if (c == 0.0) throw DomainError("tan", a);
      const double t = std::tan(a);
      const double s = 1.0 + t * t;
      return {t, s, 2.0 * t * s};
    }
    case UnaryFn::Sinh:
      return {std::sinh(a), std::cosh(a), std::sinh(a)};
    case UnaryFn::Cosh:
      return {std::cosh(a), std::sinh(a), std::cosh(a)};
    case UnaryFn::Tanh: {
      const double t = std::tanh(a);
      const double s = 1.0 - t * t;
      return {t, s, -2.0 * t * s};
    }
    case UnaryFn::Exp: {
      const double e = std::exp(a);
      return {e, e, e};
    }
    case UnaryFn::Log:
      if (!(a > 0.0)) throw DomainError("log", a);
      return {std::log(a), 1.0 / a, -1.0 / (a * a)};
    case UnaryFn::Sqrt: {
      if (with_derivatives ? !(a > 0.0) : !(a >= 0.0)) throw DomainError("sqrt", a);
      const double s = std::sqrt(a);
      if (!with_derivatives) return {s, 0.0, 0.0};
      return {s, 0.5 / s, -0.25 / (s * a)};
    }
    case UnaryFn::Asin: {
      if (with_derivatives ? !(std::abs(a) < 1.0) : !(std::abs(a) <= 1.0))
        throw DomainError("asin", a);
      if (!with_derivatives) return {std::asin(a), 0.0, 0.0};
      const double w = 1.0 - a * a;
      const double r = 1.0 / std::sqrt(w);
      return {std::asin(a), r, a * r / w};
    }
    case UnaryFn::Acos: {
      if (with_derivatives ? !(std::abs(a) < 1.0) : !(std::abs(a) <= 1.0))
        throw DomainError("acos", a);
      if (!with_derivatives) return {std::acos(a), 0.0, 0.0};
      const double w = 1.0 - a * a;
      const double r = 1.0 / std::sqrt(w);
      return {std::acos(a), -r, -a * r / w};
    }
    case UnaryFn::Atan: {
      const double w = 1.0 + a * a;
      return {std::atan(a), 1.0 / w, -2.0 * a / (w * w)};
    }
    case UnaryFn::Asinh: {
      const double w = 1.0 + a * a;
      const double r = 1.0 / std::sqrt(w);
      return {std::asinh(a), r, -a * r / w};
    }
  }
  return {0.0, 0.0, 0.0};
}

// a^c for a constant exponent c.
Jet power_jet(double a, double c) {
  if (is_integer(c)) {
    const int n = static_cast<int>(c);
    if (n < 0 && a == 0.0) throw DomainError("^", a);
    if (n == 0) return {1.0, 0.0, 0.0};
    if (n == 1) return {a, 1.0, 0.0};
    if (n == 2) return {a * a, 2.0 * a, 2.0};
    return {std::pow(a, n), n * std::pow(a, n - 1), double(n) * (n - 1) * std::pow(a, n - 2)};
  }
  if (!(a > 0.0)) throw DomainError("^", a);
  const double p = std::pow(a, c);
  return {p, c * p / a, c * (c - 1.0) * p / (a * a)};
}

double eval_value_node(const Node& n, std::span<const double> x);

Taylor2 eval_node(const Node& n, std::span<const double> x) {
  const int nv = static_cast<int>(x.size());
  switch (n.kind) {
    case NodeKind::Constant:
      return Taylor2::constant(nv, n.constant);
    case NodeKind::Variable:
      return Taylor2::variable(nv, n.variable, x[n.variable]);
    case NodeKind::Unary: {
      const Taylor2 a = eval_node(*n.lhs, x);
      const Jet j = unary_jet(n.unary, a.value(), true);
      return a.compose(j.g0, j.g1, j.g2);
    }
    case NodeKind::Binary: {
      if (n.binary == BinaryOp::Pow && n.rhs->is_constant) {
        const Taylor2 a = eval_node(*n.lhs, x);
        const double c = eval_value_node(*n.rhs, x);
        const Jet j = power_jet(a.value(), c);
        return a.compose(j.g0, j.g1, j.g2);
      }
      const Taylor2 a = eval_node(*n.lhs, x);
      const Taylor2 b = eval_node(*n.rhs, x);
      switch (n.binary) {
        case BinaryOp::Add:
          return a + b;
        case BinaryOp::Sub:
          return a - b;
        case BinaryOp::Mul:
          return a * b;
        case BinaryOp::Div: {
          const double bv = b.value();
          if (bv == 0.0) throw DomainError("/", bv);
          return a * b.compose(1.0 / bv, -1.0 / (bv * bv), 2.0 / (bv * bv * bv));
        }
        case BinaryOp::Pow: {
          if (!(a.value() > 0.0)) throw DomainError("^", a.value());
          const double la = std::log(a.value());
          const Taylor2 loga = a.compose(la, 1.0 / a.value(), -1.0 / (a.value() * a.value()));
          const Taylor2 prod = b * loga;
          const double e = std::exp(prod.value());
          return prod.compose(e, e, e);
        }
      }
    }
  }
  return Taylor2::constant(nv, 0.0);
}

double eval_value_node(const Node& n, std::span<const double> x) {
  switch (n.kind) {
    case NodeKind::Constant:
      return n.constant;
    case NodeKind::Variable:
      return x[n.variable];
    case NodeKind::Unary:
      return unary_jet(n.unary, eval_value_node(*n.lhs, x), false).g0;
    case NodeKind::Binary: {
      const double a = eval_value_node(*n.lhs, x);
      const double b = eval_value_node(*n.rhs, x);
      switch (n.binary) {
        case BinaryOp::Add:
          return a + b;
        case BinaryOp::Sub:
          return a - b;
        case BinaryOp::Mul:
          return a * b;
        case BinaryOp::Div:
          if (b == 0.0) throw DomainError("/", b);
          return a / b;
        case BinaryOp::Pow:
          if (n.rhs->is_constant) {
            if (is_integer(b)) {
              if (b < 0 && a == 0.0) throw DomainError("^", a);
              return std::pow(a, static_cast<int>(b));
            }
            // 0^c is fine for a value; only the derivative blows up
            if (!(a >= 0.0)) throw DomainError("^", a);
            return std::pow(a, b);
          }
          if (!(a > 0.0)) throw DomainError("^", a);
          return std::pow(a, b);
      }
    }
  }
  return 0.0;
}

}  // namespace

const char* unary_name(UnaryFn fn) {
  for (const auto& entry : kFunctions)
    if (entry.fn == fn) return entry.name;
  return "?";
}

std::string ExprAST::to_string() const {
  std::string out;
  if (root_) print_node(*root_, vars_, out);
  return out;
}

bool operator==(const ExprAST& a, const ExprAST& b) {
  if (a.vars_ != b.vars_) return false;
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return nodes_equal(*a.root_, *b.root_);
}

ExprAST parse_expression(std::string_view source, const std::vector<std::string>& vars) {
  if (vars.empty()) throw SyntaxError(0, "no variables declared");
  if (static_cast<int>(vars.size()) > Taylor2::kMaxVars)
    throw SyntaxError(0, "too many variables declared");
  Parser parser(source, vars);
  return ExprAST(parser.parse(), vars);
}

Taylor2 eval_taylor2(const ExprAST& ast, std::span<const double> point) {
  if (point.size() != ast.variables().size())
    throw DomainError("point arity", static_cast<double>(point.size()));
  return eval_node(ast.root(), point);
}

double eval_value(const ExprAST& ast, std::span<const double> point) {
  if (point.size() != ast.variables().size())
    throw DomainError("point arity", static_cast<double>(point.size()));
  return eval_value_node(ast.root(), point);
}

std::pair<double, double> eval_scalar_d(const ExprAST& ast, double x) {
  const ScalarJet j = eval_scalar_d2(ast, x);
  return {j.value, j.d1};
}

ScalarJet eval_scalar_d2(const ExprAST& ast, double x) {
  if (ast.variables().size() != 1) throw DomainError("scalar arity", double(ast.variables().size()));
  const double p[1] = {x};
  const Taylor2 t = eval_node(ast.root(), p);
  return {t.value(), t.d(0), t.d2(0, 0)};
}

}  // namespace qdiff::expr
