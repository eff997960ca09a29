#pragma once

// Covering-constant estimation: the inner minimization over unit covectors is
// exact (minimum singular value of the Jacobian); the outer sup over shrinking
// ball radii is realized as the limit of the per-radius infima, with the whole
// trace reported so anomalies stay visible.

#include <cstdint>
#include <vector>

#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit {

/// Strictly descending radius schedule eta_k = eta0 * factor^k.
struct EtaSchedule {
    double eta0 = 1.0;
    double factor = 0.5;
    int count = 13;

    EtaSchedule() = default;
    EtaSchedule(double eta0_, double factor_, int count_);
    std::vector<double> radii() const;
};

struct EtaLevel {
    double eta = 0.0;
    double inf_estimate = 0.0;  // +inf when the accepted set was empty
    int sample_count = 0;
    int accepted_count = 0;
    bool empty = false;
};

struct CoveringReport {
    Point base_point;
    Point image_point;
    std::vector<EtaLevel> per_eta_inf;  // ordered by descending eta
    double final_estimate = 0.0;        // floored to 0 below singular_floor
    double final_estimate_raw = 0.0;
    bool monotone = true;  // infima nondecreasing as eta decreases
    bool any_level_empty = false;
};

/// Estimate the covering constant of f at z_bar. Every radius eta contributes
/// a low-discrepancy draw from B(z_bar, eta), and z_bar itself is always a
/// candidate; excluded points and points whose image leaves B(f(z_bar), eta)
/// are filtered out (inf over the empty set is +inf and the level is skipped
/// with a warning flag). A candidate belongs to every level whose radius is
/// at least max(||z - z_bar||, ||f(z) - f(z_bar)||), which makes the per-level
/// accepted sets nested and the inf net nondecreasing by the inclusion
/// argument. The per-eta infimum is the minimum over accepted points of the
/// Jacobian's minimum singular value; the final estimate is the infimum at
/// the smallest non-empty radius.
CoveringReport covering_constant(const MappingHandle& f, const Point& z_bar,
                                 const EtaSchedule& schedule = EtaSchedule{},
                                 int samples_per_eta = 1024, std::uint64_t seed = 0,
                                 const Tolerances& tols = Tolerances{});

/// Brute-force oracle for the inner minimization: minimize ||J^T y|| over a
/// uniform grid of unit covectors (circle for 2 rows, spherical Fibonacci for
/// 3). The value is always >= min_singular_value(J); for the circle the gap
/// is at most (pi / grid_count) * ||J||.
struct SphereMinResult {
    double value = 0.0;
    Point argmin;
};
SphereMinResult sphere_min_oracle(const Jacobian& j, int grid_count = 4096);

/// The two published upper bounds for the radical mapping's covering constant:
/// 1/sqrt(2) and 2 |z1 z2| / sqrt(z1^4 + z2^4). Errors at the origin.
struct CoveringBounds46 {
    double upper_isotropic = 0.0;  // 1/sqrt(2)
    double upper_axis = 0.0;       // 2 |z1 z2| / sqrt(z1^4 + z2^4)
};
CoveringBounds46 covering_bounds_4_6(const Point& z_bar);

}  // namespace covkit
