#pragma once

// Numerical differentiation and differentiability auditing: central-difference
// Jacobians and a residual-decay test of the linear-approximation limit
// ||f(x) - f(z) - J (x - z)|| / ||x - z|| -> 0.

#include <cstdint>
#include <string>
#include <vector>

#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit {

enum class FrechetVerdict { Supported, Rejected, Inconclusive };

std::string to_string(FrechetVerdict v);

struct DifferentiabilityReport {
    Point point;
    Jacobian jacobian_used{1, 1};
    std::vector<double> radii;                      // strictly descending
    std::vector<double> worst_residual_per_radius;  // same length as radii
    FrechetVerdict verdict = FrechetVerdict::Inconclusive;
};

/// Central-difference Jacobian, entry (i, j) = (f_i(z + h e_j) - f_i(z - h e_j)) / 2h.
/// Default h near the cube-root-of-eps optimum for a second-order stencil.
/// An evaluation failure at a stencil point rethrows with the point named.
Jacobian fd_jacobian(const MappingHandle& f, const Point& z, double h = 1e-6);

/// Geometric default radii schedule 1e-1 * 2^-k, k = 0..12.
std::vector<double> default_radii();

/// Probe the linear-approximation limit at z with candidate derivative J.
/// Probes are the 2n axis directions, the diagonal directions for small n,
/// and seeded random unit directions up to probes_per_radius in total.
/// `supported` means the worst residual decayed below tol (never a proof);
/// `rejected` means the two smallest radii both stayed above tol (evidence,
/// not a certificate). Evaluation failure at any probe point is an error.
DifferentiabilityReport check_frechet(const MappingHandle& f, const Point& z, const Jacobian& j,
                                      const std::vector<double>& radii = default_radii(),
                                      int probes_per_radius = 16, double tol = 1e-4,
                                      std::uint64_t seed = 0);

}  // namespace covkit
