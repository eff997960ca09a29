#include "covkit/coderivative.hpp"

#include <cmath>
#include <stdexcept>

#include "covkit/frechet.hpp"
#include "covkit/sampling.hpp"

namespace covkit {

std::string to_string(ProbeVerdict v) {
    return v == ProbeVerdict::Rejected ? "rejected" : "plausible";
}

ProbeConfig ProbeConfig::defaults() {
    ProbeConfig c;
    double t = 1e-1;
    for (int k = 0; k <= 10; ++k) {
        c.steps.push_back(t);
        t *= 0.5;
    }
    return c;
}

std::vector<Point> standard_rays(int dim) {
    std::vector<Point> rays;
    for (int i = 0; i < dim; ++i) {
        Point e = Point::zeros(dim);
        e[i] = 1.0;
        rays.push_back(e);
        e[i] = -1.0;
        rays.push_back(e);
    }
    if (dim == 2) {
        double s = 1.0 / std::sqrt(2.0);
        rays.push_back(Point{s, s});
        rays.push_back(Point{s, -s});
        rays.push_back(Point{-s, s});
        rays.push_back(Point{-s, -s});
    }
    return rays;
}

Jacobian jacobian_at(const MappingHandle& f, const Point& z, double fd_step) {
    if (f.is_excluded(z)) {
        throw ExcludedPointError("jacobian_at: " + f.name + " is singular at the requested point; "
                                 "use limsup_probe to interrogate the coderivative there");
    }
    if (f.analytic_jacobian) return f.analytic_jacobian(z);
    return fd_jacobian(f, z, fd_step);
}

Jacobian coderivative_matrix(const MappingHandle& f, const Point& z) { return jacobian_at(f, z); }

double coderivative_action_norm(const MappingHandle& f, const Point& z, const Point& y) {
    return norm(adjoint_apply(coderivative_matrix(f, z), y));
}

namespace {

double limsup_quotient(const MappingHandle& f, const Point& x, const Point& fx, const Point& y,
                       const Point& z_candidate, const Point& u) {
    Point fu = f.evaluate(u);
    Point du = u - x;
    Point dfu = fu - fx;
    double denom = norm(du) + norm(dfu);
    if (denom == 0.0) return 0.0;
    return (inner(z_candidate, du) - inner(y, dfu)) / denom;
}

// Intercept of the least-squares line through the last three (t, q) samples.
double extrapolate_limit(const std::vector<double>& ts, const std::vector<double>& qs) {
    std::size_t n = ts.size();
    if (n == 1) return qs[0];
    std::size_t start = n >= 3 ? n - 3 : 0;
    double sum_t = 0.0, sum_q = 0.0, sum_tt = 0.0, sum_tq = 0.0;
    double count = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        sum_t += ts[i];
        sum_q += qs[i];
        sum_tt += ts[i] * ts[i];
        sum_tq += ts[i] * qs[i];
        count += 1.0;
    }
    double det = count * sum_tt - sum_t * sum_t;
    if (det == 0.0) return qs.back();
    double slope = (count * sum_tq - sum_t * sum_q) / det;
    return (sum_q - slope * sum_t) / count;
}

}  // namespace

LimsupProbeReport limsup_probe(const MappingHandle& f, const Point& x, const Point& y,
                               const Point& z_candidate, const std::vector<Point>& rays,
                               const ProbeConfig& config) {
    if (rays.empty()) throw std::invalid_argument("limsup_probe: no rays supplied");
    if (config.steps.empty()) throw std::invalid_argument("limsup_probe: no steps supplied");
    for (std::size_t i = 0; i + 1 < config.steps.size(); ++i) {
        if (!(config.steps[i] > config.steps[i + 1]) || !(config.steps[i + 1] > 0.0)) {
            throw std::invalid_argument("limsup_probe: steps must be strictly descending and positive");
        }
    }

    Point fx = f.evaluate(x);

    LimsupProbeReport report;
    report.base_point = x;
    report.covector = y;
    report.candidate = z_candidate;
    report.tol = config.tol;

    for (const Point& ray : rays) {
        std::vector<double> ts;
        std::vector<double> qs;
        bool failed = false;
        for (double t : config.steps) {
            Point u = x + t * ray;
            try {
                qs.push_back(limsup_quotient(f, x, fx, y, z_candidate, u));
                ts.push_back(t);
            } catch (const std::exception&) {
                failed = true;
                break;
            }
        }
        if (failed || qs.empty()) {
            report.skipped_rays.push_back(ray);
            continue;
        }
        report.probe_rays.push_back({ray, extrapolate_limit(ts, qs)});
    }
    if (report.probe_rays.empty()) {
        throw std::runtime_error("limsup_probe: every probe ray failed to evaluate");
    }

    std::mt19937_64 rng(config.seed);
    double smallest = config.steps.back();
    double second = config.steps.size() >= 2 ? config.steps[config.steps.size() - 2] : smallest;
    for (int i = 0; i < config.random_count; ++i) {
        Point d = random_unit(rng, x.dim());
        for (double t : {smallest, second}) {
            try {
                double q = limsup_quotient(f, x, fx, y, z_candidate, x + t * d);
                if (q > report.random_probe_max) report.random_probe_max = q;
            } catch (const std::exception&) {
                // random probes are diagnostics only; failures are ignored
            }
        }
    }

    report.verdict = ProbeVerdict::Plausible;
    for (const RayEstimate& r : report.probe_rays) {
        if (r.limit_estimate > config.tol) {
            report.verdict = ProbeVerdict::Rejected;
            break;
        }
    }
    return report;
}

CoderivativeOutcome coderivative_action(const MappingHandle& f, const Point& x, const Point& y,
                                        const ProbeConfig& config) {
    CoderivativeOutcome out;
    if (!f.is_excluded(x)) {
        out.kind = CoderivativeOutcome::Kind::Singleton;
        out.value = adjoint_apply(jacobian_at(f, x), y);
        return out;
    }
    if (y.is_zero()) {
        // No claim for the zero covector: the quotient's <y, .> term vanishes
        // and the rejection arguments do not apply.
        out.kind = CoderivativeOutcome::Kind::Unknown;
        return out;
    }
    const std::vector<Point> rays = standard_rays(x.dim());
    Point candidate_a = Point::zeros(x.dim());
    Point candidate_b = Point::zeros(x.dim());
    for (int i = 0; i < candidate_b.dim(); ++i) candidate_b[i] = 1.0;

    LimsupProbeReport a = limsup_probe(f, x, y, candidate_a, rays, config);
    LimsupProbeReport b = limsup_probe(f, x, y, candidate_b, rays, config);
    if (a.verdict == ProbeVerdict::Rejected && b.verdict == ProbeVerdict::Rejected &&
        a.probe_rays.size() == b.probe_rays.size()) {
        // Candidate-independent rejection: the same rays reject with the same
        // limits regardless of the candidate, so no candidate can be a member.
        bool matching = true;
        for (std::size_t i = 0; i < a.probe_rays.size(); ++i) {
            if (std::abs(a.probe_rays[i].limit_estimate - b.probe_rays[i].limit_estimate) >
                10.0 * config.tol) {
                matching = false;
                break;
            }
        }
        if (matching) {
            out.kind = CoderivativeOutcome::Kind::EmptyEvidence;
            out.evidence = a;
            return out;
        }
    }
    out.kind = CoderivativeOutcome::Kind::Unknown;
    return out;
}

}  // namespace covkit
