#pragma once

// Text expressions for user-supplied mappings R^n -> R^m, with exact
// forward-mode differentiation.
//
// Grammar (also published in docs/grammar.ebnf):
//   mapping  = expr { ";" expr } ;          one expression per output component
//   expr     = term { ("+" | "-") term } ;
//   term     = unary { ("*" | "/") unary } ;
//   unary    = "-" unary | power ;
//   power    = primary { "^" exponent } ;   exponent must be constant
//   exponent = [ "-" ] primary ;
//   primary  = number | variable | parameter | function "(" expr ")" | "(" expr ")" ;
//
// Variables are x1..xn, parameters p1..pk; functions are exactly
// sin, cos, exp, ln, sqrt, abs. "^" binds tighter than unary minus; binary
// operators associate left.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covkit/linalg.hpp"

namespace covkit::expr {

enum class UnaryOp { Neg, Sin, Cos, Exp, Ln, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Constant, Variable, Parameter, Unary, Binary, Power };
    Kind kind = Kind::Constant;
    double value = 0.0;    // Constant payload; Power exponent
    int index = 0;         // Variable / Parameter payload
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    NodePtr lhs;
    NodePtr rhs;
    int line = 1;
    int column = 1;
};

/// Parse failure with source position.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Evaluation-domain failure, naming the offending component and the exact
/// subexpression that blew up.
class EvalError : public std::runtime_error {
  public:
    EvalError(std::string message, std::string subexpression, int component = -1);
    const std::string& message() const { return message_; }
    const std::string& subexpression() const { return subexpr_; }
    int component() const { return component_; }

  private:
    std::string message_;
    std::string subexpr_;
    int component_;
};

/// An immutable parsed mapping R^n -> R^m with k real parameters.
struct ExprMapping {
    int input_dim = 0;
    int output_dim = 0;
    int param_count = 0;
    std::vector<NodePtr> components;
    std::string source;
};

/// Parse `source` as output_dim semicolon-separated expressions.
ExprMapping parse_mapping(const std::string& source, int input_dim, int output_dim,
                          int param_count);

/// Componentwise evaluation at x with parameter vector params (may be empty
/// when param_count == 0).
Point eval(const ExprMapping& mapping, const Point& x, const Point& params = Point{});

/// Exact Jacobian, entry (i, j) = d f_i / d x_j (x), by dual-number
/// propagation, one pass per input variable. Differentiating abs at 0 or
/// sqrt at 0 is an error, not a subgradient choice.
Jacobian ad_jacobian(const ExprMapping& mapping, const Point& x, const Point& params = Point{});

/// Precedence-aware printer; parse(print(ast)) is structurally identical.
std::string to_string(const NodePtr& node);
std::string to_string(const ExprMapping& mapping);

bool structurally_equal(const NodePtr& a, const NodePtr& b);

/// Load a mapping from the documented JSON schema
/// {"n":..., "m":..., "k":..., "components":["...", ...]}.
ExprMapping mapping_from_json(const std::string& json_text);
std::string mapping_to_json(const ExprMapping& mapping);

}  // namespace covkit::expr
