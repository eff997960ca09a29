#include "covkit/mapping.hpp"

namespace covkit {

bool MappingHandle::is_excluded(const Point& x, double tol) const {
    for (const Point& p : excluded_points) {
        if (p.dim() == x.dim() && distance(p, x) <= tol) return true;
    }
    return false;
}

MappingHandle make_handle(const expr::ExprMapping& mapping, const Point& params,
                          std::string name) {
    MappingHandle h;
    h.input_dim = mapping.input_dim;
    h.output_dim = mapping.output_dim;
    h.name = std::move(name);
    h.evaluate = [mapping, params](const Point& x) { return expr::eval(mapping, x, params); };
    h.analytic_jacobian = [mapping, params](const Point& x) {
        return expr::ad_jacobian(mapping, x, params);
    };
    return h;
}

}  // namespace covkit
