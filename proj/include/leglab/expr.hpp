#pragma once

// Expression language for user-defined chart maps (x, y) -> C.
//
//   expr    := term   { ("+" | "-") term }
//   term    := unary  { ("*" | "/") unary }
//   unary   := "-" unary | power
//   power   := primary { "^" ["-"] primary }
//   primary := number | ident | ident "(" expr { "," expr } ")" | "(" expr ")"
//
// Identifiers: x, y (chart variables), i (imaginary unit), pi, and named
// parameters. Functions: exp sin cos sqrt log conj re im (one argument).
// All binary operators are left associative; exponents must be integer
// literals. Error positions are byte offsets into the source string.

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "leglab/error.hpp"
#include "leglab/jet.hpp"

namespace leglab {

using ParamTable = std::map<std::string, double>;

struct ExprNode {
  enum class Kind { number, imag_unit, variable, parameter, call, negate, binary };

  Kind kind = Kind::number;
  double number = 0.0;
  std::string name;  // variable, parameter or function name
  char op = 0;       // binary operator: + - * / ^
  std::vector<std::shared_ptr<const ExprNode>> args;
  std::size_t offset = 0;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

class ExprAst {
 public:
  ExprAst() = default;
  ExprAst(ExprPtr root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  const ExprNode& root() const { return *root_; }
  const ExprPtr& root_ptr() const { return root_; }
  const std::string& source() const { return source_; }
  bool empty() const { return !root_; }

 private:
  ExprPtr root_;
  std::string source_;
};

/// Throws SyntaxError (ERR_SYNTAX) with the byte offset of the first bad token.
ExprAst parse(std::string_view text);

/// Unknown identifiers, unknown functions, arity and exponent errors.
Diagnostics validate(const ExprAst& ast, const ParamTable& params);

/// Evaluates over jet arithmetic. conj/re/im are only accepted on degree-0
/// jets (ERR_NONANALYTIC otherwise); jet errors propagate.
Jet2 eval_jet(const ExprAst& ast, const Jet2& x, const Jet2& y,
              const ParamTable& params);

/// Plain complex evaluation at a real chart point.
Complex eval(const ExprAst& ast, double x, double y, const ParamTable& params);

/// Fully parenthesized rendering that parses back to the same tree.
std::string to_string(const ExprAst& ast);

/// Structural equality (ignores source offsets).
bool same_structure(const ExprNode& a, const ExprNode& b);

}  // namespace leglab
