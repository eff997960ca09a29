#pragma once

// Built-in reference mappings R^2 -> R^2 with hand-derived Jacobians,
// closed-form coderivative action norms, and known covering constants.
// They serve as the regression corpus for every other module.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit::catalog {

enum class Id { rational_4_1, trig_4_2, poly_4_3, exp_4_4, log_4_5, radical_4_6 };

/// Known covering constant at a base point: an exact value, a set of upper
/// bounds, or exactly zero.
struct ReferenceCovering {
    enum class Kind { Exact, UpperBounds, Zero };
    Kind kind = Kind::Zero;
    double exact_value = 0.0;
    std::vector<double> upper_bounds;

    static ReferenceCovering exact(double v) { return {Kind::Exact, v, {}}; }
    static ReferenceCovering bounds(std::vector<double> b) {
        return {Kind::UpperBounds, 0.0, std::move(b)};
    }
    static ReferenceCovering zero() { return {Kind::Zero, 0.0, {}}; }
};

struct Entry {
    Id id;
    std::string name;
    std::string definition;  // human-readable componentwise formula
    std::string expression;  // expr-dsl equivalent source
    MappingHandle handle;
    /// The closed-form value of ||J(z)^T y||; throws at excluded points.
    std::function<double(const Point& z, const Point& y)> closed_form_action_norm;
    std::function<ReferenceCovering(const Point& z_bar)> reference_covering;
    /// ||f(x)|| identity where one exists (e.g. constant 1 or ||x||^2).
    std::optional<std::function<double(const Point& x)>> norm_identity;
};

const Entry& get(Id id);
const std::vector<Id>& all_ids();
std::string name_of(Id id);
std::optional<Id> id_from_name(const std::string& name);

}  // namespace covkit::catalog
