#pragma once

// Evaluatable mappings R^n -> R^m with an optional analytic Jacobian and a
// list of known singular points where Jacobian queries must refuse.

#include <functional>
#include <string>
#include <vector>

#include "covkit/expr.hpp"
#include "covkit/linalg.hpp"

namespace covkit {

class ExcludedPointError : public std::runtime_error {
  public:
    explicit ExcludedPointError(const std::string& what) : std::runtime_error(what) {}
};

struct MappingHandle {
    int input_dim = 0;
    int output_dim = 0;
    std::string name;
    std::function<Point(const Point&)> evaluate;
    /// Null when only finite differences are available.
    std::function<Jacobian(const Point&)> analytic_jacobian;
    /// Known singular points (derivative queries refuse here). The evaluator
    /// itself may still be defined at them.
    std::vector<Point> excluded_points;

    bool is_excluded(const Point& x, double tol = 0.0) const;
};

/// Wrap a parsed expression mapping, binding its parameters (if any); the
/// analytic Jacobian is the dual-number one.
MappingHandle make_handle(const expr::ExprMapping& mapping, const Point& params = Point{},
                          std::string name = "expr");

}  // namespace covkit
