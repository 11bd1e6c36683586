#pragma once

#include <utility>

#include "ratchet/grid.hpp"

namespace ratchet {

/// Result of locating the diffusive mean s on (A, B): the position where the
/// Neumann Green's function of  phi/varsigma - d^2/dx^2  takes equal values
/// at the two ends.
struct DiffusiveMeanResult {
    double s = 0.0;           // interpolated root of g(x) = G(A,x) - G(B,x)
    double g_residual = 0.0;  // |g| interpolated at s
    int iterations = 0;       // bisection steps over the node array
};

/// Computes the phi/varsigma-diffusive mean of the grid's endpoints.
/// Uses two Green solves (sources at A and B, symmetry of the discrete
/// operator) and a node bisection followed by linear interpolation in the
/// bracketing cell.  Throws if the sampled g fails to change sign, which
/// signals a discretization bug.
DiffusiveMeanResult diffusive_mean(const GridFn& phi, double varsigma);

/// Diffusive means of phi and of its reflection phi(A+B-x); the pair
/// satisfies s + s_tilde = A + B.
std::pair<DiffusiveMeanResult, DiffusiveMeanResult> reflection_check(const GridFn& phi,
                                                                     double varsigma);

/// The sampled g(x) = G(A,x) - G(B,x), strictly decreasing with g(A) > 0 and
/// g(B) < 0.  Exposed for property tests.
GridFn diffusive_mean_profile(const GridFn& phi, double varsigma);

}  // namespace ratchet
