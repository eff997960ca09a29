#include "covkit/covering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "covkit/coderivative.hpp"
#include "covkit/sampling.hpp"

namespace covkit {

EtaSchedule::EtaSchedule(double eta0_, double factor_, int count_)
    : eta0(eta0_), factor(factor_), count(count_) {
    if (!(eta0 > 0.0)) throw std::invalid_argument("EtaSchedule: eta0 must be positive");
    if (!(factor > 0.0 && factor < 1.0)) {
        throw std::invalid_argument("EtaSchedule: factor must lie in (0, 1)");
    }
    if (count < 1) throw std::invalid_argument("EtaSchedule: count must be >= 1");
}

std::vector<double> EtaSchedule::radii() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    double eta = eta0;
    for (int k = 0; k < count; ++k) {
        out.push_back(eta);
        eta *= factor;
    }
    return out;
}

CoveringReport covering_constant(const MappingHandle& f, const Point& z_bar,
                                 const EtaSchedule& schedule, int samples_per_eta,
                                 std::uint64_t seed, const Tolerances& tols) {
    tols.validate();
    if (samples_per_eta < 1) {
        throw std::invalid_argument("covering_constant: samples_per_eta must be >= 1");
    }
    if (z_bar.dim() != f.input_dim) {
        throw std::invalid_argument("covering_constant: dimension mismatch");
    }

    Point w_bar = f.evaluate(z_bar);
    const std::vector<double> radii = schedule.radii();
    const int levels = static_cast<int>(radii.size());
    const double inf_val = std::numeric_limits<double>::infinity();

    // One pool of candidates: each radius contributes its scaled
    // low-discrepancy draw, plus z_bar itself. Every candidate is tagged with
    // the smallest radius accepting it, eta_accept = max(||z - z_bar||,
    // ||f(z) - w_bar||), so the per-level accepted sets are nested by
    // construction and the inf net inherits the inclusion argument.
    std::vector<Point> pattern = halton_ball(f.input_dim, samples_per_eta, seed);
    struct Candidate {
        Point z;
        double eta_accept;
    };
    std::vector<Candidate> pool;
    pool.reserve(pattern.size() * static_cast<std::size_t>(levels) + 1);
    auto admit = [&](Point z) {
        if (f.is_excluded(z)) return;
        Point fz;
        try {
            fz = f.evaluate(z);
        } catch (const std::exception&) {
            return;  // outside the evaluator's domain: not an admissible sample
        }
        double eta_accept = std::max(distance(z_bar, z), distance(w_bar, fz));
        pool.push_back({std::move(z), eta_accept});
    };
    admit(z_bar);
    for (double eta : radii) {
        for (const Point& v : pattern) admit(z_bar + eta * v);
    }

    // deepest level accepting each candidate, then suffix minima
    std::vector<double> bucket_min(static_cast<std::size_t>(levels), inf_val);
    std::vector<int> bucket_count(static_cast<std::size_t>(levels), 0);
    std::vector<int> ball_count(static_cast<std::size_t>(levels), 0);
    for (const Candidate& c : pool) {
        if (c.eta_accept > radii.front()) continue;
        int deepest = 0;
        while (deepest + 1 < levels && radii[static_cast<std::size_t>(deepest + 1)] >= c.eta_accept) {
            ++deepest;
        }
        double sigma = min_singular_value(jacobian_at(f, c.z), tols.rel_tol);
        auto index = static_cast<std::size_t>(deepest);
        bucket_min[index] = std::min(bucket_min[index], sigma);
        ++bucket_count[index];
    }
    for (const Candidate& c : pool) {
        for (int k = 0; k < levels; ++k) {
            if (distance(z_bar, c.z) <= radii[static_cast<std::size_t>(k)]) {
                ++ball_count[static_cast<std::size_t>(k)];
            } else {
                break;
            }
        }
    }

    CoveringReport report;
    report.base_point = z_bar;
    report.image_point = w_bar;

    double suffix_min = inf_val;
    int suffix_count = 0;
    std::vector<EtaLevel> reversed;
    for (int k = levels - 1; k >= 0; --k) {
        auto index = static_cast<std::size_t>(k);
        suffix_min = std::min(suffix_min, bucket_min[index]);
        suffix_count += bucket_count[index];
        EtaLevel level;
        level.eta = radii[index];
        level.sample_count = ball_count[index];
        level.accepted_count = suffix_count;
        level.empty = suffix_count == 0;
        level.inf_estimate = level.empty ? inf_val : suffix_min;
        reversed.push_back(level);
    }
    report.per_eta_inf.assign(reversed.rbegin(), reversed.rend());

    double previous = -inf_val;
    double last_nonempty = inf_val;
    for (const EtaLevel& level : report.per_eta_inf) {
        if (level.empty) {
            report.any_level_empty = true;
            continue;
        }
        if (previous != -inf_val && level.inf_estimate < previous - 1e-9) {
            report.monotone = false;
        }
        previous = level.inf_estimate;
        last_nonempty = level.inf_estimate;
    }

    if (last_nonempty == inf_val) {
        throw std::runtime_error(
            "covering_constant: every eta level had an empty accepted set; "
            "no admissible points satisfied f(z) in B(f(z_bar), eta)");
    }
    report.final_estimate_raw = last_nonempty;
    report.final_estimate = last_nonempty <= tols.singular_floor ? 0.0 : last_nonempty;
    return report;
}

SphereMinResult sphere_min_oracle(const Jacobian& j, int grid_count) {
    if (grid_count < 64) throw std::invalid_argument("sphere_min_oracle: grid_count must be >= 64");
    std::vector<Point> grid;
    if (j.rows() == 2) {
        grid = circle_grid(grid_count);
    } else if (j.rows() == 3) {
        grid = sphere_fibonacci_grid(grid_count);
    } else {
        throw std::invalid_argument("sphere_min_oracle: only 2 or 3 output rows are supported");
    }
    SphereMinResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (const Point& y : grid) {
        double v = norm(adjoint_apply(j, y));
        if (v < best.value) {
            best.value = v;
            best.argmin = y;
        }
    }
    return best;
}

CoveringBounds46 covering_bounds_4_6(const Point& z_bar) {
    if (z_bar.dim() != 2) throw std::invalid_argument("covering_bounds_4_6: expects a point in R^2");
    if (z_bar.is_zero()) {
        throw std::invalid_argument("covering_bounds_4_6: the origin is excluded");
    }
    double z1 = z_bar[0], z2 = z_bar[1];
    CoveringBounds46 b;
    b.upper_isotropic = 1.0 / std::sqrt(2.0);
    double quartic = std::sqrt(z1 * z1 * z1 * z1 + z2 * z2 * z2 * z2);
    b.upper_axis = 2.0 * std::abs(z1 * z2) / quartic;
    return b;
}

}  // namespace covkit
