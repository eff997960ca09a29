#pragma once

// Coderivative computations for single-valued mappings: the adjoint action
// y -> J(z)^T y at differentiable points, and a sampling-based probe of the
// raw limsup quotient
//   Q(u) = (<z*, u - x> - <y, f(u) - f(x)>) / (||u - x|| + ||f(u) - f(x)||)
// for candidate memberships z* at singular points.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit {

struct RayEstimate {
    Point direction;
    double limit_estimate = 0.0;
};

enum class ProbeVerdict { Rejected, Plausible };

std::string to_string(ProbeVerdict v);

struct LimsupProbeReport {
    Point base_point;
    Point covector;
    Point candidate;
    std::vector<RayEstimate> probe_rays;
    std::vector<Point> skipped_rays;  // rays where evaluation failed
    double random_probe_max = 0.0;
    double tol = 0.0;
    ProbeVerdict verdict = ProbeVerdict::Plausible;
};

struct ProbeConfig {
    std::vector<double> steps;  // descending positive ray parameters
    int random_count = 32;
    double tol = 1e-3;          // rejection threshold on extrapolated limits
    std::uint64_t seed = 0;

    static ProbeConfig defaults();
};

/// The standard eight probe rays in R^2: axes and normalized diagonals
/// (the directions the rejection arguments at singular points actually use).
std::vector<Point> standard_rays(int dim);

/// Jacobian of f at z: analytic provider when present, otherwise central
/// differences. Throws ExcludedPointError at excluded points, directing the
/// caller to limsup_probe.
Jacobian jacobian_at(const MappingHandle& f, const Point& z, double fd_step = 1e-6);

/// The matrix J(z) whose adjoint action y -> J(z)^T y realizes the
/// coderivative at a differentiable point (which is then a singleton).
Jacobian coderivative_matrix(const MappingHandle& f, const Point& z);

/// ||J(z)^T y||, the norm of the coderivative action.
double coderivative_action_norm(const MappingHandle& f, const Point& z, const Point& y);

/// Estimate the limsup quotient limits along each ray u = x + t d, t down the
/// step schedule, by a linear (Richardson-style) fit of the last three
/// samples. `rejected` means some ray limit exceeds tol, so the candidate is
/// not a member; `plausible` never certifies membership (the limsup ranges
/// over all sequences). Rays whose evaluations fail are skipped and recorded;
/// if every ray fails the probe is an error.
LimsupProbeReport limsup_probe(const MappingHandle& f, const Point& x, const Point& y,
                               const Point& z_candidate, const std::vector<Point>& rays,
                               const ProbeConfig& config = ProbeConfig::defaults());

/// Evaluating the coderivative as a set can produce an empty set, so the
/// outcome is tagged rather than pretending totality.
struct CoderivativeOutcome {
    enum class Kind { Singleton, EmptyEvidence, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Point> value;                 // Singleton
    std::optional<LimsupProbeReport> evidence;  // EmptyEvidence
};

/// At a differentiable point, the singleton {J(x)^T y}. At an excluded point,
/// probe two distinct candidates along the standard rays: if both are
/// rejected with matching ray limits (the numerical signature of a
/// candidate-independent rejection), report evidence that the set is empty;
/// anything else, including y = 0, is Unknown.
CoderivativeOutcome coderivative_action(const MappingHandle& f, const Point& x, const Point& y,
                                        const ProbeConfig& config = ProbeConfig::defaults());

}  // namespace covkit
