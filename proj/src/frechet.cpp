#include "covkit/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "covkit/sampling.hpp"

namespace covkit {

std::string to_string(FrechetVerdict v) {
    switch (v) {
        case FrechetVerdict::Supported: return "supported";
        case FrechetVerdict::Rejected: return "rejected";
        case FrechetVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

std::string format_point(const Point& p) {
    std::ostringstream out;
    out << '(';
    for (int i = 0; i < p.dim(); ++i) {
        if (i > 0) out << ", ";
        out << p[i];
    }
    out << ')';
    return out.str();
}

Point eval_or_explain(const MappingHandle& f, const Point& u, const char* where) {
    try {
        return f.evaluate(u);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(where) + ": evaluation failed at " +
                                 format_point(u) + ": " + e.what());
    }
}

}  // namespace

Jacobian fd_jacobian(const MappingHandle& f, const Point& z, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_jacobian: step h must be positive");
    if (z.dim() != f.input_dim) throw std::invalid_argument("fd_jacobian: dimension mismatch");
    Jacobian j(f.output_dim, f.input_dim);
    for (int col = 0; col < f.input_dim; ++col) {
        Point plus = z;
        Point minus = z;
        plus[col] = z[col] + h;
        minus[col] = z[col] - h;
        Point fp = eval_or_explain(f, plus, "fd_jacobian");
        Point fm = eval_or_explain(f, minus, "fd_jacobian");
        for (int row = 0; row < f.output_dim; ++row) {
            j(row, col) = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    return j;
}

std::vector<double> default_radii() {
    std::vector<double> radii;
    double r = 1e-1;
    for (int k = 0; k <= 12; ++k) {
        radii.push_back(r);
        r *= 0.5;
    }
    return radii;
}

DifferentiabilityReport check_frechet(const MappingHandle& f, const Point& z, const Jacobian& j,
                                      const std::vector<double>& radii, int probes_per_radius,
                                      double tol, std::uint64_t seed) {
    if (z.dim() != f.input_dim) throw std::invalid_argument("check_frechet: dimension mismatch");
    if (j.rows() != f.output_dim || j.cols() != f.input_dim) {
        throw std::invalid_argument("check_frechet: Jacobian shape mismatch");
    }
    if (radii.size() < 2) throw std::invalid_argument("check_frechet: need at least two radii");
    for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
        if (!(radii[k] > radii[k + 1]) || !(radii[k + 1] > 0.0)) {
            throw std::invalid_argument("check_frechet: radii must be strictly descending and positive");
        }
    }

    const int n = f.input_dim;
    std::vector<Point> directions;
    for (int i = 0; i < n; ++i) {
        Point e = Point::zeros(n);
        e[i] = 1.0;
        directions.push_back(e);
        e[i] = -1.0;
        directions.push_back(e);
    }
    if (n >= 2 && n <= 4) {
        // all diagonal sign patterns, normalized
        const int combos = 1 << n;
        for (int mask = 0; mask < combos; ++mask) {
            std::vector<double> d(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? 1.0 : -1.0;
            directions.push_back((1.0 / std::sqrt(static_cast<double>(n))) * Point(d));
        }
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(directions.size()) < probes_per_radius) {
        directions.push_back(random_unit(rng, n));
    }

    Point fz = eval_or_explain(f, z, "check_frechet");

    DifferentiabilityReport report;
    report.point = z;
    report.jacobian_used = j;
    report.radii = radii;
    report.worst_residual_per_radius.reserve(radii.size());

    for (double r : radii) {
        double worst = 0.0;
        for (const Point& d : directions) {
            Point u = z + r * d;
            Point fu = eval_or_explain(f, u, "check_frechet");
            Point step = u - z;
            Point linear = j.apply(step);
            double residual = norm(fu - fz - linear) / norm(step);
            worst = std::max(worst, residual);
        }
        report.worst_residual_per_radius.push_back(worst);
    }

    const auto& res = report.worst_residual_per_radius;
    double last = res.back();
    double second_last = res[res.size() - 2];
    // below this the residual is division noise (eps-sized differences over a
    // tiny radius), so "decreasing" is not meaningful
    const double machine_floor = 1e-10;
    if (last < tol && (last <= res.front() || last <= machine_floor)) {
        report.verdict = FrechetVerdict::Supported;
    } else if (last > tol && second_last > tol) {
        report.verdict = FrechetVerdict::Rejected;
    } else {
        report.verdict = FrechetVerdict::Inconclusive;
    }
    return report;
}

}  // namespace covkit
