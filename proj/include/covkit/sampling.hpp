#pragma once

// Deterministic point sets: Halton sequences mapped into balls by rejection,
// uniform circle grids and spherical Fibonacci grids for covector spheres,
// and seeded pseudo-random direction helpers.

#include <cstdint>
#include <random>
#include <vector>

#include "covkit/linalg.hpp"

namespace covkit {

/// k-th element (0-based) of the van der Corput sequence in the given base.
double radical_inverse(std::uint64_t k, unsigned base);

/// `count` low-discrepancy points inside the closed unit ball in `dim`
/// dimensions: Halton points in [-1,1]^dim, kept when inside the ball.
/// `offset` shifts the start index of the underlying Halton stream, so the
/// set is fully deterministic for a given (dim, count, offset).
std::vector<Point> halton_ball(int dim, int count, std::uint64_t offset = 0);

/// Uniform grid of `count` unit covectors on the circle (dim 2).
std::vector<Point> circle_grid(int count);

/// Near-uniform spherical Fibonacci grid of `count` unit covectors (dim 3).
std::vector<Point> sphere_fibonacci_grid(int count);

/// Seeded unit direction in `dim` dimensions (Gaussian, normalized).
Point random_unit(std::mt19937_64& rng, int dim);

/// Seeded uniform point in a ball (direction * radius with r^(1/dim) law).
Point random_in_ball(std::mt19937_64& rng, const Ball& ball);

}  // namespace covkit
