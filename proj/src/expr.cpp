#include "leglab/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace leglab {

namespace {

constexpr std::array<std::string_view, 8> kFunctions{
    "exp", "sin", "cos", "sqrt", "log", "conj", "re", "im"};

bool is_function(std::string_view name) {
  for (auto f : kFunctions) {
    if (f == name) return true;
  }
  return false;
}

std::shared_ptr<ExprNode> make_node(ExprNode::Kind kind, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->offset = offset;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) {
      throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] +
                                  "', expected operator or end of input");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr binary(char op, ExprPtr lhs, ExprPtr rhs, std::size_t offset) {
    auto n = make_node(ExprNode::Kind::binary, offset);
    n->op = op;
    n->args = {std::move(lhs), std::move(rhs)};
    return n;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      const std::size_t at = pos_++;
      lhs = binary(c, lhs, parse_term(), at);
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      const std::size_t at = pos_++;
      lhs = binary(c, lhs, parse_unary(), at);
    }
  }

  ExprPtr parse_unary() {
    if (peek() == '-') {
      const std::size_t at = pos_++;
      auto n = make_node(ExprNode::Kind::negate, at);
      n->args = {parse_unary()};
      return n;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    while (peek() == '^') {
      const std::size_t at = pos_++;
      ExprPtr exponent;
      if (peek() == '-') {
        const std::size_t neg_at = pos_++;
        auto n = make_node(ExprNode::Kind::negate, neg_at);
        n->args = {parse_primary()};
        exponent = n;
      } else {
        exponent = parse_primary();
      }
      base = binary('^', base, exponent, at);
    }
    return base;
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) ||
            text_[end] == '.')) {
      ++end;
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
        while (e < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[e]))) {
          ++e;
        }
        end = e;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + end, v);
    if (res.ec != std::errc{} || res.ptr != text_.data() + end) {
      throw SyntaxError(start, "malformed number");
    }
    pos_ = end;
    auto n = make_node(ExprNode::Kind::number, start);
    n->number = v;
    return n;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw SyntaxError(pos_, "expected expression, found end of input");
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      if (peek() == '(') {
        ++pos_;
        auto n = make_node(ExprNode::Kind::call, start);
        n->name = name;
        if (peek() == ')') {
          ++pos_;
          return n;
        }
        n->args.push_back(parse_expr());
        while (accept(',')) n->args.push_back(parse_expr());
        if (!accept(')')) {
          throw SyntaxError(pos_, "expected ')' to close call to " + name);
        }
        return n;
      }
      if (name == "x" || name == "y") {
        auto n = make_node(ExprNode::Kind::variable, start);
        n->name = name;
        return n;
      }
      if (name == "i") return make_node(ExprNode::Kind::imag_unit, start);
      if (name == "pi") {
        auto n = make_node(ExprNode::Kind::number, start);
        n->number = std::numbers::pi;
        return n;
      }
      auto n = make_node(ExprNode::Kind::parameter, start);
      n->name = name;
      return n;
    }
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    throw SyntaxError(pos_, std::string("expected expression, found '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool integer_literal(const ExprNode& n, int* out) {
  const ExprNode* lit = &n;
  double sign = 1.0;
  if (n.kind == ExprNode::Kind::negate) {
    lit = n.args[0].get();
    sign = -1.0;
  }
  if (lit->kind != ExprNode::Kind::number) return false;
  const double v = lit->number;
  if (v != std::floor(v) || std::abs(v) > 64.0) return false;
  if (out) *out = static_cast<int>(sign * v);
  return true;
}

void validate_node(const ExprNode& n, const ParamTable& params, Diagnostics& out) {
  switch (n.kind) {
    case ExprNode::Kind::parameter:
      if (!params.contains(n.name)) {
        out.push_back({n.offset, "unknown parameter " + n.name});
      }
      break;
    case ExprNode::Kind::call:
      if (!is_function(n.name)) {
        out.push_back({n.offset, "unknown function " + n.name});
      } else if (n.args.size() != 1) {
        out.push_back({n.offset, "function " + n.name + " expects 1 argument, got " +
                                     std::to_string(n.args.size())});
      }
      break;
    case ExprNode::Kind::binary:
      if (n.op == '^' && !integer_literal(*n.args[1], nullptr)) {
        out.push_back({n.args[1]->offset, "exponent must be integer literal"});
        validate_node(*n.args[0], params, out);
        return;
      }
      break;
    default:
      break;
  }
  for (const auto& a : n.args) validate_node(*a, params, out);
}

template <class Ops>
typename Ops::Value eval_node(const ExprNode& n, const Ops& ops) {
  using V = typename Ops::Value;
  switch (n.kind) {
    case ExprNode::Kind::number: return ops.constant(n.number);
    case ExprNode::Kind::imag_unit: return ops.constant(kI);
    case ExprNode::Kind::variable: return n.name == "x" ? ops.x() : ops.y();
    case ExprNode::Kind::parameter: {
      const auto it = ops.params.find(n.name);
      if (it == ops.params.end()) {
        throw ValidationError({{n.offset, "unknown parameter " + n.name}});
      }
      return ops.constant(it->second);
    }
    case ExprNode::Kind::negate: return -eval_node(*n.args[0], ops);
    case ExprNode::Kind::call: {
      if (n.args.size() != 1 || !is_function(n.name)) {
        throw ValidationError({{n.offset, "bad call to " + n.name}});
      }
      return ops.call(n.name, eval_node(*n.args[0], ops));
    }
    case ExprNode::Kind::binary: {
      if (n.op == '^') {
        int e = 0;
        if (!integer_literal(*n.args[1], &e)) {
          throw ValidationError(
              {{n.args[1]->offset, "exponent must be integer literal"}});
        }
        return ops.power(eval_node(*n.args[0], ops), e);
      }
      V a = eval_node(*n.args[0], ops);
      V b = eval_node(*n.args[1], ops);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default: return ops.divide(a, b);
      }
    }
  }
  return ops.constant(0.0);
}

struct JetOps {
  using Value = Jet2;
  const Jet2& xj;
  const Jet2& yj;
  const ParamTable& params;
  int degree;

  Jet2 constant(Complex c) const { return Jet2::constant(c, degree); }
  Jet2 x() const { return xj.truncated(degree); }
  Jet2 y() const { return yj.truncated(degree); }
  Jet2 divide(const Jet2& a, const Jet2& b) const { return a / b; }
  Jet2 power(const Jet2& a, int e) const { return leglab::pow(a, e); }
  Jet2 call(const std::string& f, const Jet2& a) const {
    if (f == "exp") return leglab::exp(a);
    if (f == "sin") return leglab::sin(a);
    if (f == "cos") return leglab::cos(a);
    if (f == "sqrt") return leglab::sqrt(a);
    if (f == "log") return leglab::log(a);
    if (a.degree() > 0) {
      throw Error(ErrorCode::nonanalytic,
                  f + " is not holomorphic; only allowed at jet degree 0");
    }
    if (f == "conj") return leglab::conj(a);
    if (f == "re") return real_part(a);
    return imag_part(a);
  }
};

struct ComplexOps {
  using Value = Complex;
  double xv;
  double yv;
  const ParamTable& params;

  Complex constant(Complex c) const { return c; }
  Complex x() const { return xv; }
  Complex y() const { return yv; }
  Complex divide(Complex a, Complex b) const { return a / b; }
  Complex power(Complex a, int e) const {
    Complex r = 1.0;
    for (int k = 0; k < std::abs(e); ++k) r *= a;
    return e < 0 ? 1.0 / r : r;
  }
  Complex call(const std::string& f, Complex a) const {
    if (f == "exp") return std::exp(a);
    if (f == "sin") return std::sin(a);
    if (f == "cos") return std::cos(a);
    if (f == "sqrt") return std::sqrt(Complex(a.real(), a.imag() + 0.0));
    if (f == "log") return std::log(Complex(a.real(), a.imag() + 0.0));
    if (f == "conj") return std::conj(a);
    if (f == "re") return a.real();
    return a.imag();
  }
};

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::number: {
      std::array<char, 64> buf{};
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), n.number);
      out.append(buf.data(), res.ptr);
      return;
    }
    case ExprNode::Kind::imag_unit: out += 'i'; return;
    case ExprNode::Kind::variable:
    case ExprNode::Kind::parameter: out += n.name; return;
    case ExprNode::Kind::negate:
      out += "(-";
      print_node(*n.args[0], out);
      out += ')';
      return;
    case ExprNode::Kind::call:
      out += n.name;
      out += '(';
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        if (k) out += ", ";
        print_node(*n.args[k], out);
      }
      out += ')';
      return;
    case ExprNode::Kind::binary:
      out += '(';
      print_node(*n.args[0], out);
      out += ' ';
      out += n.op;
      out += ' ';
      print_node(*n.args[1], out);
      out += ')';
      return;
  }
}

}  // namespace

ExprAst parse(std::string_view text) {
  Parser p(text);
  ExprPtr root = p.parse_all();
  return ExprAst(std::move(root), std::string(text));
}

Diagnostics validate(const ExprAst& ast, const ParamTable& params) {
  Diagnostics out;
  if (!ast.empty()) validate_node(ast.root(), params, out);
  return out;
}

Jet2 eval_jet(const ExprAst& ast, const Jet2& x, const Jet2& y,
              const ParamTable& params) {
  const JetOps ops{x, y, params, std::min(x.degree(), y.degree())};
  return eval_node(ast.root(), ops);
}

Complex eval(const ExprAst& ast, double x, double y, const ParamTable& params) {
  const ComplexOps ops{x, y, params};
  return eval_node(ast.root(), ops);
}

std::string to_string(const ExprAst& ast) {
  std::string out;
  if (!ast.empty()) print_node(ast.root(), out);
  return out;
}

bool same_structure(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.op != b.op || a.name != b.name ||
      a.args.size() != b.args.size()) {
    return false;
  }
  if (a.kind == ExprNode::Kind::number && a.number != b.number) return false;
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!same_structure(*a.args[k], *b.args[k])) return false;
  }
  return true;
}

}  // namespace leglab
