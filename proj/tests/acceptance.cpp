// Acceptance suite: end-to-end checks of the published reference values,
// bounds, and certificates, one printed pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "covkit/catalog.hpp"
#include "covkit/coderivative.hpp"
#include "covkit/coincidence.hpp"
#include "covkit/covering.hpp"
#include "covkit/frechet.hpp"

using namespace covkit;

namespace {

struct Criterion {
    std::string label;
    std::function<bool(std::string&)> check;
    double time_budget_s = 0.0;  // 0 = no budget
};

Point circle_point(int i, int count) {
    double phi = 2.0 * M_PI * i / count;
    return Point{std::cos(phi), std::sin(phi)};
}

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

// 1. covering constant of the squaring map: 10 at (3,4), 0 at the origin
bool criterion_covering_squaring(std::string& detail) {
    const auto& entry = catalog::get(catalog::Id::poly_4_3);
    CoveringReport at_34 = covering_constant(entry.handle, Point{3, 4});
    CoveringReport at_origin = covering_constant(entry.handle, Point{0, 0});
    detail = "estimate(3,4)=" + fmt(at_34.final_estimate) +
             ", estimate(0,0)=" + fmt(at_origin.final_estimate_raw);
    return std::abs(at_34.final_estimate - 10.0) <= 1e-3 &&
           at_origin.final_estimate_raw <= 1e-9;
}

// 2. the four rank-one mappings have covering constant zero
bool criterion_zero_coverings(std::string& detail) {
    struct Case {
        catalog::Id id;
        Point at;
    };
    const Case cases[] = {
        {catalog::Id::rational_4_1, Point{1, 1}},
        {catalog::Id::trig_4_2, Point{1, 1}},
        {catalog::Id::exp_4_4, Point{0, 0}},
        {catalog::Id::log_4_5, Point{1, 1}},
    };
    detail.clear();
    bool ok = true;
    for (const Case& c : cases) {
        auto started = std::chrono::steady_clock::now();
        CoveringReport report = covering_constant(catalog::get(c.id).handle, c.at);
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (!detail.empty()) detail += ", ";
        detail += catalog::name_of(c.id) + "=" + fmt(report.final_estimate_raw);
        ok = ok && report.final_estimate_raw <= 1e-9 && elapsed < 1.0;
    }
    return ok;
}

// 3. radical-map estimates stay under both published bounds; exact value at (1,1)
bool criterion_radical_bounds(std::string& detail) {
    const auto& entry = catalog::get(catalog::Id::radical_4_6);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    int tested = 0;
    int violations = 0;
    double worst_excess = 0.0;
    while (tested < 200) {
        Point z{unif(rng), unif(rng)};
        if (norm(z) < 0.05) continue;
        ++tested;
        CoveringReport report = covering_constant(entry.handle, z);
        CoveringBounds46 bounds = covering_bounds_4_6(z);
        double cap = std::min(bounds.upper_isotropic, bounds.upper_axis) + 1e-3;
        if (report.final_estimate > cap) {
            ++violations;
            worst_excess = std::max(worst_excess, report.final_estimate - cap);
        }
    }
    CoveringReport diag = covering_constant(entry.handle, Point{1, 1});
    double diag_err = std::abs(diag.final_estimate - 1.0 / std::sqrt(2.0));
    detail = "violations=" + std::to_string(violations) + "/200, |estimate(1,1)-1/sqrt(2)|=" +
             fmt(diag_err);
    return violations == 0 && diag_err <= 1e-3;
}

// 4. closed-form coderivative action norms match ||J^T y|| to 1e-10
bool criterion_closed_forms(std::string& detail) {
    std::mt19937_64 rng(2025);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> cov(-1.0, 1.0);
    double worst = 0.0;
    for (catalog::Id id : catalog::all_ids()) {
        const auto& entry = catalog::get(id);
        int tested = 0;
        while (tested < 1000) {
            Point z{coord(rng), coord(rng)};
            if (norm(z) < 0.3) continue;
            ++tested;
            Point y{cov(rng), cov(rng)};
            double closed = entry.closed_form_action_norm(z, y);
            double direct = coderivative_action_norm(entry.handle, z, y);
            worst = std::max(worst, std::abs(closed - direct));
        }
    }
    detail = "worst |closed - direct| = " + fmt(worst);
    return worst <= 1e-10;
}

// 5. the rational map's coderivative is empty at the origin: every covector on
//    a 64-point circle is rejected with a ray limit near max(|y1|, |y2|)
bool criterion_origin_rejection(std::string& detail) {
    const auto& entry = catalog::get(catalog::Id::rational_4_1);
    const std::vector<Point> rays = standard_rays(2);
    Point theta = Point::zeros(2);
    int rejected = 0;
    double worst_margin = 1e9;
    for (int i = 0; i < 64; ++i) {
        Point y = circle_point(i, 64);
        LimsupProbeReport report = limsup_probe(entry.handle, theta, y, Point{0.3, -0.2}, rays);
        double best = 0.0;
        for (const RayEstimate& ray : report.probe_rays) {
            best = std::max(best, ray.limit_estimate);
        }
        double needed = 0.9 * std::max(std::abs(y[0]), std::abs(y[1]));
        if (report.verdict == ProbeVerdict::Rejected && best >= needed) ++rejected;
        worst_margin = std::min(worst_margin, best - needed);
    }
    detail = "rejected=" + std::to_string(rejected) + "/64, worst margin=" + fmt(worst_margin);
    return rejected == 64;
}

// 6. analytic, dual-number, and central-difference jacobians agree entrywise
bool criterion_gradient_checks(std::string& detail) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    double worst_rel = 0.0;
    for (catalog::Id id : catalog::all_ids()) {
        const auto& entry = catalog::get(id);
        expr::ExprMapping parsed = expr::parse_mapping(entry.expression, 2, 2, 0);
        int tested = 0;
        while (tested < 100) {
            Point z{unif(rng), unif(rng)};
            if (entry.handle.is_excluded(z, 1e-3)) continue;
            ++tested;
            Jacobian an = entry.handle.analytic_jacobian(z);
            Jacobian ad = expr::ad_jacobian(parsed, z);
            Jacobian fd = fd_jacobian(entry.handle, z, 1e-6);
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    double scale = std::max(1.0, std::abs(an(r, c)));
                    worst_rel = std::max(worst_rel, std::abs(an(r, c) - ad(r, c)) / scale);
                    worst_rel = std::max(worst_rel, std::abs(an(r, c) - fd(r, c)) / scale);
                    worst_rel = std::max(worst_rel, std::abs(ad(r, c) - fd(r, c)) / scale);
                }
            }
        }
    }
    detail = "worst relative deviation = " + fmt(worst_rel);
    return worst_rel <= 1e-6;
}

// 7. per-eta infima form a nondecreasing net on every catalog report
bool criterion_monotone_net(std::string& detail) {
    std::mt19937_64 rng(2027);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    int reports = 0;
    int violations = 0;
    for (catalog::Id id : catalog::all_ids()) {
        const auto& entry = catalog::get(id);
        std::vector<Point> bases = {Point{1, 1}, Point{3, 4}};
        int added = 0;
        while (added < 4) {
            Point z{unif(rng), unif(rng)};
            if (norm(z) < 0.3) continue;
            bases.push_back(z);
            ++added;
        }
        for (const Point& z : bases) {
            CoveringReport report = covering_constant(entry.handle, z);
            ++reports;
            double previous = -1e300;
            for (const EtaLevel& level : report.per_eta_inf) {
                if (level.empty) continue;
                if (level.inf_estimate < previous - 1e-9) ++violations;
                previous = level.inf_estimate;
            }
            if (!report.monotone) ++violations;
        }
    }
    detail = std::to_string(reports) + " reports, " + std::to_string(violations) + " violations";
    return violations == 0;
}

// 8. coincidence certificate on the closed-form instance plus the radial identity
bool criterion_coincidence(std::string& detail) {
    const MappingHandle& f = catalog::get(catalog::Id::poly_4_3).handle;
    ParameterizedMapping g;
    g.input_dim = 2;
    g.output_dim = 2;
    g.param_count = 1;
    g.evaluate = [](const Point&, const Point&) { return Point{1.1, 0.0}; };
    Point x_bar{1, 0};
    CoincidenceCertificate cert = solve_coincidence(f, g, x_bar, Point{0.1}, 1.5, 0.0);
    double solution_err = std::max(std::abs(cert.solution[0] - std::sqrt(1.1)),
                                   std::abs(cert.solution[1]));
    bool bound = distance(cert.solution, x_bar) <= 0.1 / 1.5 && cert.bound_holds;

    ParameterizedMapping h;
    h.input_dim = 2;
    h.output_dim = 2;
    h.param_count = 1;
    h.evaluate = [](const Point& x, const Point& p) {
        double s = p[0];
        return Point{0.05 * s * std::sin(x[0]), 0.05 * s * std::cos(x[1])};
    };
    auto omega = [](const Point& p) { return Point{p[0], 0.0}; };
    CoincidenceCertificate radial =
        theorem_radial_check(h, omega, x_bar, Point{0.1}, 0.9, 0.005);
    double identity = radial.radial_identity_residual.value_or(1e9);

    detail = "|sigma - closed form| = " + fmt(solution_err) +
             ", identity residual = " + fmt(identity);
    return solution_err <= 1e-10 && bound && cert.converged && radial.converged &&
           identity <= 1e-8;
}

// 9. eigen-route sphere minimizer for the radical map satisfies the Lagrange
//    stationarity conditions and matches the grid oracle
bool criterion_stationarity(std::string& detail) {
    const auto& entry = catalog::get(catalog::Id::radical_4_6);
    std::mt19937_64 rng(2028);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    double worst_stationarity = 0.0;
    double worst_gap_ratio = 0.0;
    int tested = 0;
    while (tested < 50) {
        Point z{unif(rng), unif(rng)};
        if (norm(z) < 0.3) continue;
        ++tested;
        Jacobian j = entry.handle.analytic_jacobian(z);
        Jacobian gram = gram_outer(j);
        SymEig2 eig = sym_eig_2x2(gram);
        double sigma = std::sqrt(std::max(eig.lambda_lo, 0.0));
        const Point& y = eig.v_lo;

        // stationarity of the unnormalized objective
        // (y1 z1^2 + y2 z2^2)^2 + 4 z1^2 z2^2 (y1 - y2)^2 on the unit circle,
        // with the multiplier induced by the eigenvalue
        double z1 = z[0], z2 = z[1];
        double scale = (z1 * z1 + z2 * z2) * (z1 * z1 + z2 * z2);
        double lambda = eig.lambda_lo * scale;
        double a = y[0] * z1 * z1 + y[1] * z2 * z2;
        double b = y[0] - y[1];
        double l1 = 2.0 * z1 * z1 * a + 8.0 * z1 * z1 * z2 * z2 * b - 2.0 * lambda * y[0];
        double l2 = 2.0 * z2 * z2 * a - 8.0 * z1 * z1 * z2 * z2 * b - 2.0 * lambda * y[1];
        worst_stationarity = std::max({worst_stationarity, std::abs(l1), std::abs(l2)});

        SphereMinResult oracle = sphere_min_oracle(j, 4096);
        double cap = M_PI * max_singular_value(j) / 4096.0;
        double gap = std::abs(oracle.value - sigma);
        worst_gap_ratio = std::max(worst_gap_ratio, gap / cap);
    }
    detail = "worst |L_y| = " + fmt(worst_stationarity) +
             ", worst oracle gap / cap = " + fmt(worst_gap_ratio);
    return worst_stationarity <= 1e-8 && worst_gap_ratio <= 1.0;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1. covering constant of the squaring map: 10 at (3,4), 0 at the origin",
         criterion_covering_squaring, 1.0},
        {"2. zero covering constants for the four rank-one mappings", criterion_zero_coverings,
         4.0},
        {"3. radical-map covering estimates respect both published bounds (200 points)",
         criterion_radical_bounds, 10.0},
        {"4. closed-form coderivative action norms match ||J^T y|| to 1e-10 (1000/entry)",
         criterion_closed_forms, 5.0},
        {"5. empty coderivative at the rational map's origin: 64/64 covectors rejected",
         criterion_origin_rejection, 2.0},
        {"6. analytic / dual-number / finite-difference jacobians agree to 1e-6 (100/entry)",
         criterion_gradient_checks, 0.0},
        {"7. per-eta infima are a nondecreasing net on every catalog report",
         criterion_monotone_net, 0.0},
        {"8. coincidence certificate: closed-form root, distance bound, radial identity",
         criterion_coincidence, 1.0},
        {"9. sphere minimizer stationarity and grid-oracle agreement for the radical map",
         criterion_stationarity, 0.0},
    };

    int failures = 0;
    for (Criterion& criterion : criteria) {
        std::string detail;
        bool ok = false;
        auto started = std::chrono::steady_clock::now();
        try {
            ok = criterion.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
            ok = false;
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (criterion.time_budget_s > 0.0 && elapsed >= criterion.time_budget_s) {
            ok = false;
            detail += " [over time budget " + fmt(criterion.time_budget_s) + " s]";
        }
        std::printf("[%s] %s (%s; %.2f s)\n", ok ? "PASS" : "FAIL", criterion.label.c_str(),
                    detail.c_str(), elapsed);
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
