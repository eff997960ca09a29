#include "covkit/catalog.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace covkit::catalog {

namespace {

void require_dim2(const Point& x, const char* who) {
    if (x.dim() != 2) throw std::invalid_argument(std::string(who) + ": expects points in R^2");
}

void refuse_excluded(const Point& z, const char* who) {
    if (z.is_zero()) {
        throw ExcludedPointError(std::string(who) +
                                 ": excluded point (0, 0); use the limsup probe instead");
    }
}

Entry make_rational_4_1() {
    Entry e;
    e.id = Id::rational_4_1;
    e.name = "rational_4_1";
    e.definition =
        "f(x) = ((x1^2 - x2^2)/(x1^2 + x2^2), 2 x1 x2 / (x1^2 + x2^2)) for x != 0, f(0) = 0";
    e.expression = "(x1^2 - x2^2)/(x1^2 + x2^2); 2*x1*x2/(x1^2 + x2^2)";
    e.handle.input_dim = 2;
    e.handle.output_dim = 2;
    e.handle.name = e.name;
    e.handle.excluded_points = {Point::zeros(2)};
    e.handle.evaluate = [](const Point& x) {
        require_dim2(x, "rational_4_1");
        if (x.is_zero()) return Point::zeros(2);
        double d = x[0] * x[0] + x[1] * x[1];
        return Point{(x[0] * x[0] - x[1] * x[1]) / d, 2.0 * x[0] * x[1] / d};
    };
    e.handle.analytic_jacobian = [](const Point& z) {
        require_dim2(z, "rational_4_1");
        refuse_excluded(z, "rational_4_1 jacobian");
        double d = z[0] * z[0] + z[1] * z[1];
        double d2 = d * d;
        double diff = z[0] * z[0] - z[1] * z[1];
        return Jacobian{{4.0 * z[0] * z[1] * z[1] / d2, -4.0 * z[0] * z[0] * z[1] / d2},
                        {-2.0 * z[1] * diff / d2, 2.0 * z[0] * diff / d2}};
    };
    e.closed_form_action_norm = [](const Point& z, const Point& y) {
        require_dim2(z, "rational_4_1");
        require_dim2(y, "rational_4_1");
        refuse_excluded(z, "rational_4_1 action norm");
        double nz = norm(z);
        double diff = z[0] * z[0] - z[1] * z[1];
        return 2.0 * std::abs(2.0 * y[0] * z[0] * z[1] - y[1] * diff) / (nz * nz * nz);
    };
    e.reference_covering = [](const Point& z_bar) {
        refuse_excluded(z_bar, "rational_4_1 reference covering");
        return ReferenceCovering::zero();
    };
    e.norm_identity = [](const Point&) { return 1.0; };
    return e;
}

Entry make_trig_4_2() {
    Entry e;
    e.id = Id::trig_4_2;
    e.name = "trig_4_2";
    e.definition = "f(x) = (sin(x1 + x2), cos(x1 + x2))";
    e.expression = "sin(x1 + x2); cos(x1 + x2)";
    e.handle.input_dim = 2;
    e.handle.output_dim = 2;
    e.handle.name = e.name;
    e.handle.evaluate = [](const Point& x) {
        require_dim2(x, "trig_4_2");
        double s = x[0] + x[1];
        return Point{std::sin(s), std::cos(s)};
    };
    e.handle.analytic_jacobian = [](const Point& z) {
        require_dim2(z, "trig_4_2");
        double s = z[0] + z[1];
        double c = std::cos(s);
        double sn = std::sin(s);
        return Jacobian{{c, c}, {-sn, -sn}};
    };
    e.closed_form_action_norm = [](const Point& z, const Point& y) {
        require_dim2(z, "trig_4_2");
        require_dim2(y, "trig_4_2");
        double s = z[0] + z[1];
        return std::sqrt(2.0) * std::abs(y[0] * std::cos(s) - y[1] * std::sin(s));
    };
    e.reference_covering = [](const Point&) { return ReferenceCovering::zero(); };
    e.norm_identity = [](const Point&) { return 1.0; };
    return e;
}

Entry make_poly_4_3() {
    Entry e;
    e.id = Id::poly_4_3;
    e.name = "poly_4_3";
    e.definition = "f(x) = (x1^2 - x2^2, 2 x1 x2)";
    e.expression = "x1^2 - x2^2; 2*x1*x2";
    e.handle.input_dim = 2;
    e.handle.output_dim = 2;
    e.handle.name = e.name;
    e.handle.evaluate = [](const Point& x) {
        require_dim2(x, "poly_4_3");
        return Point{x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]};
    };
    e.handle.analytic_jacobian = [](const Point& z) {
        require_dim2(z, "poly_4_3");
        return Jacobian{{2.0 * z[0], -2.0 * z[1]}, {2.0 * z[1], 2.0 * z[0]}};
    };
    e.closed_form_action_norm = [](const Point& z, const Point& y) {
        require_dim2(z, "poly_4_3");
        require_dim2(y, "poly_4_3");
        return 2.0 * norm(y) * norm(z);
    };
    e.reference_covering = [](const Point& z_bar) {
        return ReferenceCovering::exact(2.0 * norm(z_bar));
    };
    e.norm_identity = [](const Point& x) { return norm(x) * norm(x); };
    return e;
}

Entry make_exp_4_4() {
    Entry e;
    e.id = Id::exp_4_4;
    e.name = "exp_4_4";
    e.definition = "f(x) = (exp(x1 + x2), exp(-x1 - x2))";
    e.expression = "exp(x1 + x2); exp(-x1 - x2)";
    e.handle.input_dim = 2;
    e.handle.output_dim = 2;
    e.handle.name = e.name;
    e.handle.evaluate = [](const Point& x) {
        require_dim2(x, "exp_4_4");
        double s = x[0] + x[1];
        return Point{std::exp(s), std::exp(-s)};
    };
    e.handle.analytic_jacobian = [](const Point& z) {
        require_dim2(z, "exp_4_4");
        double s = z[0] + z[1];
        double ep = std::exp(s);
        double em = std::exp(-s);
        return Jacobian{{ep, ep}, {-em, -em}};
    };
    e.closed_form_action_norm = [](const Point& z, const Point& y) {
        require_dim2(z, "exp_4_4");
        require_dim2(y, "exp_4_4");
        double s = z[0] + z[1];
        return std::sqrt(2.0) * std::abs(y[0] * std::exp(s) - y[1] * std::exp(-s));
    };
    e.reference_covering = [](const Point&) { return ReferenceCovering::zero(); };
    e.norm_identity = std::nullopt;
    return e;
}

Entry make_log_4_5() {
    Entry e;
    e.id = Id::log_4_5;
    e.name = "log_4_5";
    e.definition = "f(x) = (ln(1 + x1^2 + x2^2), 1 / (1 + x1^2 + x2^2))";
    e.expression = "ln(1 + x1^2 + x2^2); 1/(1 + x1^2 + x2^2)";
    e.handle.input_dim = 2;
    e.handle.output_dim = 2;
    e.handle.name = e.name;
    e.handle.evaluate = [](const Point& x) {
        require_dim2(x, "log_4_5");
        double d = 1.0 + x[0] * x[0] + x[1] * x[1];
        return Point{std::log(d), 1.0 / d};
    };
    e.handle.analytic_jacobian = [](const Point& z) {
        require_dim2(z, "log_4_5");
        double d = 1.0 + z[0] * z[0] + z[1] * z[1];
        double d2 = d * d;
        return Jacobian{{2.0 * z[0] / d, 2.0 * z[1] / d},
                        {-2.0 * z[0] / d2, -2.0 * z[1] / d2}};
    };
    e.closed_form_action_norm = [](const Point& z, const Point& y) {
        require_dim2(z, "log_4_5");
        require_dim2(y, "log_4_5");
        double d = 1.0 + z[0] * z[0] + z[1] * z[1];
        return 2.0 * norm(z) / d * std::abs(y[0] - y[1] / d);
    };
    e.reference_covering = [](const Point&) { return ReferenceCovering::zero(); };
    e.norm_identity = std::nullopt;
    return e;
}

Entry make_radical_4_6() {
    Entry e;
    e.id = Id::radical_4_6;
    e.name = "radical_4_6";
    e.definition =
        "f(x) = (x1^2 / sqrt(x1^2 + x2^2), x2^2 / sqrt(x1^2 + x2^2)) for x != 0, f(0) = 0";
    e.expression = "x1^2/sqrt(x1^2 + x2^2); x2^2/sqrt(x1^2 + x2^2)";
    e.handle.input_dim = 2;
    e.handle.output_dim = 2;
    e.handle.name = e.name;
    e.handle.excluded_points = {Point::zeros(2)};
    e.handle.evaluate = [](const Point& x) {
        require_dim2(x, "radical_4_6");
        if (x.is_zero()) return Point::zeros(2);
        double r = norm(x);
        return Point{x[0] * x[0] / r, x[1] * x[1] / r};
    };
    // Partials derived from f directly; validated against FD and dual-number
    // Jacobians in the test suite.
    e.handle.analytic_jacobian = [](const Point& z) {
        require_dim2(z, "radical_4_6");
        refuse_excluded(z, "radical_4_6 jacobian");
        double r = norm(z);
        double r3 = r * r * r;
        double z1 = z[0], z2 = z[1];
        return Jacobian{{z1 * (z1 * z1 + 2.0 * z2 * z2) / r3, -z1 * z1 * z2 / r3},
                        {-z1 * z2 * z2 / r3, z2 * (z2 * z2 + 2.0 * z1 * z1) / r3}};
    };
    e.closed_form_action_norm = [](const Point& z, const Point& y) {
        require_dim2(z, "radical_4_6");
        require_dim2(y, "radical_4_6");
        refuse_excluded(z, "radical_4_6 action norm");
        double z1 = z[0], z2 = z[1];
        double d = z1 * z1 + z2 * z2;
        double a = y[0] * z1 * z1 + y[1] * z2 * z2;
        double b = y[0] - y[1];
        return std::sqrt(a * a + 4.0 * z1 * z1 * z2 * z2 * b * b) / d;
    };
    e.reference_covering = [](const Point& z_bar) {
        refuse_excluded(z_bar, "radical_4_6 reference covering");
        double z1 = z_bar[0], z2 = z_bar[1];
        if (z1 * z2 == 0.0) return ReferenceCovering::zero();
        double quartic = std::sqrt(z1 * z1 * z1 * z1 + z2 * z2 * z2 * z2);
        return ReferenceCovering::bounds({1.0 / std::sqrt(2.0), 2.0 * std::abs(z1 * z2) / quartic});
    };
    e.norm_identity = std::nullopt;
    return e;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all = {
        make_rational_4_1(), make_trig_4_2(), make_poly_4_3(),
        make_exp_4_4(),      make_log_4_5(),  make_radical_4_6(),
    };
    return all;
}

}  // namespace

const Entry& get(Id id) {
    for (const Entry& e : entries()) {
        if (e.id == id) return e;
    }
    throw std::invalid_argument("catalog::get: unknown id");
}

const std::vector<Id>& all_ids() {
    static const std::vector<Id> ids = {Id::rational_4_1, Id::trig_4_2,  Id::poly_4_3,
                                        Id::exp_4_4,      Id::log_4_5,   Id::radical_4_6};
    return ids;
}

std::string name_of(Id id) { return get(id).name; }

std::optional<Id> id_from_name(const std::string& name) {
    for (const Entry& e : entries()) {
        if (e.name == name) return e.id;
    }
    return std::nullopt;
}

}  // namespace covkit::catalog
