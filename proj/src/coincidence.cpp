#include "covkit/coincidence.hpp"

#include <cmath>
#include <stdexcept>

#include "covkit/catalog.hpp"
#include "covkit/coderivative.hpp"
#include "covkit/sampling.hpp"

namespace covkit {

ParameterizedMapping make_parameterized(const expr::ExprMapping& mapping) {
    ParameterizedMapping g;
    g.input_dim = mapping.input_dim;
    g.output_dim = mapping.output_dim;
    g.param_count = mapping.param_count;
    g.evaluate = [mapping](const Point& x, const Point& p) { return expr::eval(mapping, x, p); };
    return g;
}

double estimate_lipschitz(const ParameterizedMapping& g, const Ball& ball, const Point& p,
                          int pairs, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("estimate_lipschitz: pairs must be >= 1");
    if (ball.radius == 0.0) return 0.0;  // a single point carries no slope information
    std::mt19937_64 rng(seed);
    double best = 0.0;
    int done = 0;
    while (done < pairs) {
        Point a = random_in_ball(rng, ball);
        Point b = random_in_ball(rng, ball);
        double gap = distance(a, b);
        if (gap < 1e-12 * (1.0 + ball.radius)) continue;  // degenerate pair, redraw
        double ratio = distance(g.evaluate(a, p), g.evaluate(b, p)) / gap;
        if (ratio > best) best = ratio;
        ++done;
    }
    return best;
}

namespace {

// Smallest-norm least-squares solution of J d = b through the spectral
// decomposition of J^T J, dropping directions below the singular floor.
Point least_squares_step(const Jacobian& j, const Point& b, double singular_floor) {
    Jacobian jtj(j.cols(), j.cols());
    for (int a = 0; a < j.cols(); ++a) {
        for (int c = a; c < j.cols(); ++c) {
            double s = 0.0;
            for (int r = 0; r < j.rows(); ++r) s += j(r, a) * j(r, c);
            jtj(a, c) = s;
            jtj(c, a) = s;
        }
    }
    SymSpectrum sp = sym_eigensolve(jtj);
    Point jtb = adjoint_apply(j, b);
    double sigma_max = std::sqrt(std::max(sp.values.back(), 0.0));
    double cutoff = singular_floor * std::max(1.0, sigma_max);

    Point d = Point::zeros(j.cols());
    for (std::size_t i = 0; i < sp.values.size(); ++i) {
        double lambda = sp.values[i];
        if (lambda <= cutoff * cutoff) continue;
        double coeff = inner(sp.vectors[i], jtb) / lambda;
        d = d + coeff * sp.vectors[i];
    }
    return d;
}

}  // namespace

CoincidenceCertificate solve_coincidence(const MappingHandle& f, const ParameterizedMapping& g,
                                         const Point& x_bar, const Point& p, double alpha,
                                         double beta, const SolveOptions& options) {
    if (!(beta >= 0.0) || !(beta < alpha)) {
        throw std::invalid_argument("solve_coincidence: requires 0 <= beta < alpha");
    }
    options.tols.validate();
    if (x_bar.dim() != f.input_dim) {
        throw std::invalid_argument("solve_coincidence: dimension mismatch");
    }

    CoincidenceCertificate cert;
    cert.parameter = p;
    cert.base_point = x_bar;
    cert.base_image = f.evaluate(x_bar);
    cert.alpha = alpha;
    cert.beta = beta;
    cert.bound_rhs = norm(g.evaluate(x_bar, p) - cert.base_image) / (alpha - beta);

    Point x = x_bar;
    auto residual_vec = [&](const Point& at) { return f.evaluate(at) - g.evaluate(at, p); };
    Point r = residual_vec(x);
    double r_norm = norm(r);

    int iter = 0;
    while (r_norm > options.tol && iter < options.max_iter) {
        Jacobian jf = jacobian_at(f, x);
        // Linearization J_F d = G - F, i.e. J_F d = -r.
        Point d = least_squares_step(jf, -1.0 * r, options.tols.singular_floor);

        double budget = r_norm / alpha * (1.0 + options.step_slack);
        double d_norm = norm(d);
        if (d_norm > budget && d_norm > 0.0) {
            d = (budget / d_norm) * d;
            d_norm = budget;
        }

        IterationRecord record;
        record.residual_before = r_norm;
        record.step_budget = budget;

        bool accepted = false;
        double lambda = 1.0;
        Point x_next = x;
        Point r_next = r;
        double r_next_norm = r_norm;
        for (int back = 0; back < 40 && d_norm > 0.0; ++back) {
            Point trial = x + lambda * d;
            Point r_trial;
            try {
                r_trial = residual_vec(trial);
            } catch (const std::exception&) {
                lambda *= 0.5;  // stepped outside the domain, shorten
                continue;
            }
            double trial_norm = norm(r_trial);
            if (trial_norm < r_norm || trial_norm <= options.tol) {
                x_next = trial;
                r_next = r_trial;
                r_next_norm = trial_norm;
                record.step_norm = lambda * d_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }

        if (!accepted) {
            if (min_singular_value(jf) < options.tols.singular_floor) {
                throw std::runtime_error(
                    "solve_coincidence: residual stalled at a rank-deficient Jacobian; the "
                    "covering-constant precondition (alpha below the local covering constant "
                    "of F) likely fails here");
            }
            break;  // no progress: flagged via converged = false
        }

        record.residual_after = r_next_norm;
        cert.trace.push_back(record);
        x = x_next;
        r = r_next;
        r_norm = r_next_norm;
        ++iter;
    }

    cert.solution = x;
    cert.residual = r_norm;
    cert.iterations = iter;
    cert.converged = r_norm <= options.tol;
    cert.bound_holds = distance(x, x_bar) <= cert.bound_rhs + options.tol;
    return cert;
}

CoincidenceCertificate theorem_radial_check(const ParameterizedMapping& h,
                                            const std::function<Point(const Point&)>& omega,
                                            const Point& x_bar, const Point& s, double alpha,
                                            double beta, const SolveOptions& options) {
    double radius = norm(x_bar);
    if (!(alpha < radius)) {
        throw std::invalid_argument(
            "theorem_radial_check: requires alpha < ||x_bar|| (the covering constant of the "
            "squaring mapping reaches ||x_bar|| on the half-radius ball)");
    }
    const MappingHandle& f = catalog::get(catalog::Id::poly_4_3).handle;

    ParameterizedMapping g;
    g.input_dim = h.input_dim;
    g.output_dim = h.output_dim;
    g.param_count = h.param_count;
    g.evaluate = [&h, &omega](const Point& x, const Point& p) {
        return h.evaluate(x, p) + omega(p);
    };

    CoincidenceCertificate cert = solve_coincidence(f, g, x_bar, s, alpha, beta, options);

    const Point& sigma = cert.solution;
    double lhs = 0.0;
    Point g_sigma = g.evaluate(sigma, s);
    for (int i = 0; i < g_sigma.dim(); ++i) lhs += g_sigma[i] * g_sigma[i];
    double n2 = inner(sigma, sigma);
    cert.radial_identity_residual = std::abs(lhs - n2 * n2);
    return cert;
}

}  // namespace covkit
