#pragma once

// Parameterized coincidence equations F(x) = G(x, p): Lipschitz-modulus
// estimation for G, a damped Gauss-Newton solve whose step budget comes from
// the covering constant of F, and a certificate carrying the distance bound
//   ||sigma(p) - x_bar|| <= ||G(x_bar, p) - y_bar|| / (alpha - beta).
//
// The iteration itself is this toolkit's own numerical scheme: the underlying
// existence theory guarantees a coincidence point within the bound but
// prescribes no algorithm. Failure of the bound is reported, never hidden
// (the theory guarantees SOME solution satisfies it, not that the iteration
// lands on that one).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit {

/// G(., .): R^n x R^k -> R^m, continuous in x for each fixed p on the
/// working ball.
struct ParameterizedMapping {
    int input_dim = 0;
    int output_dim = 0;
    int param_count = 0;
    std::function<Point(const Point& x, const Point& p)> evaluate;
};

/// Wrap a parsed expression mapping with parameters.
ParameterizedMapping make_parameterized(const expr::ExprMapping& mapping);

/// Sampled lower estimate of the Lipschitz modulus of x -> G(x, p) on the
/// ball: the max of ||G(x) - G(x')|| / ||x - x'|| over seeded random pairs.
/// An estimate, never a certification.
double estimate_lipschitz(const ParameterizedMapping& g, const Ball& ball, const Point& p,
                          int pairs = 512, std::uint64_t seed = 0);

struct SolveOptions {
    int max_iter = 50;
    double tol = 1e-10;       // residual target
    double step_slack = 0.01; // budget: ||step|| <= ||F - G|| / alpha * (1 + slack)
    Tolerances tols;
};

struct IterationRecord {
    double residual_before = 0.0;
    double residual_after = 0.0;
    double step_norm = 0.0;
    double step_budget = 0.0;
};

struct CoincidenceCertificate {
    Point parameter;
    Point solution;
    Point base_point;
    Point base_image;
    double alpha = 0.0;
    double beta = 0.0;
    double residual = 0.0;   // ||F(sigma) - G(sigma, p)||
    double bound_rhs = 0.0;  // ||G(x_bar, p) - y_bar|| / (alpha - beta)
    bool bound_holds = false;
    bool converged = false;
    int iterations = 0;
    std::vector<IterationRecord> trace;
    /// |  ||G(sigma, p)||^2 - ||sigma||^4  | for the squaring mapping, when
    /// the radial identity check was requested.
    std::optional<double> radial_identity_residual;
};

/// Damped Gauss-Newton on the residual F(x) - G(x, p) starting at x_bar.
/// Each step solves the linearization J_F(x) d = G(x, p) - F(x) in the
/// least-squares sense (smallest-norm solution on rank deficiency), is capped
/// by the covering step budget, and is backtracked so the residual never
/// increases. Requires 0 <= beta < alpha; alpha below the local covering
/// constant of F is the caller's responsibility.
CoincidenceCertificate solve_coincidence(const MappingHandle& f, const ParameterizedMapping& g,
                                         const Point& x_bar, const Point& p, double alpha,
                                         double beta, const SolveOptions& options = SolveOptions{});

/// Specialization to the squaring mapping (x1^2 - x2^2, 2 x1 x2) perturbed by
/// G(x, s) = h(x, s) + omega(s). Enforces beta < alpha < ||x_bar|| (the
/// covering constant reaches ||x_bar|| on the half-radius ball) and verifies
/// the radial identity ||G(sigma, s)|| = ||sigma||^2 after the solve.
CoincidenceCertificate theorem_radial_check(const ParameterizedMapping& h,
                                            const std::function<Point(const Point&)>& omega,
                                            const Point& x_bar, const Point& s, double alpha,
                                            double beta,
                                            const SolveOptions& options = SolveOptions{});

}  // namespace covkit
