#pragma once

#include <vector>

#include "ratchet/grid.hpp"
#include "ratchet/model.hpp"

namespace ratchet {

/// Row-stochastic matrix of well integrals P_ij = integral over well j of
/// nu * q_i, where q_i is the Green basis function sourced at the i-th
/// potential minimum.  Positive entries, unit row sums.
struct TransitionMatrix {
    int k = 0;
    std::vector<double> entries;  // row-major k*k

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i * k + j)]; }
};

/// Stationary object of the squeezing device: the normalized fixed point
/// Q = sum_i xi_i q_i, its weights, the shift gap of q = sum_i q_i, and the
/// constant M = min_i P_ik entering the transport inequality.
struct SqueezeSolution {
    GridFn Q;
    std::vector<double> xi;  // Perron weights, sum to 1
    double gamma = 0.0;      // min over x <= 1-1/k of q(x) - q(x+1/k)
    double q_gap = 0.0;      // same quantity for Q itself
    double M = 0.0;
    double residual = 0.0;   // max_i |well integral of nu*Q - xi_i|
};

/// Green basis q_1..q_k: q_i solves  nu*q - varsigma*q_xx = delta at a_i
/// with Neumann ends.  Each is strictly positive with integral(nu*q_i) = 1.
std::vector<GridFn> green_basis(const RatchetParams& params);

/// Well-integral transition matrix of the basis; throws when an entry fails
/// to be strictly positive or a row sum strays from 1 beyond 1e-10.
TransitionMatrix transition_matrix(const std::vector<GridFn>& basis, const RateProfile& nu, int k);

/// Left fixed vector xi = xi P with unit sum, by power iteration from the
/// given start (uniform when empty).  Converges when successive iterates
/// differ by < 1e-13 in max norm; throws after 10000 iterations.
std::vector<double> perron_weights(const TransitionMatrix& P,
                                   std::vector<double> start = {});

/// Assembles the squeezing fixed point from the Green basis and the Perron
/// weights and measures the transport gap quantities.
SqueezeSolution squeeze_solution(const RatchetParams& params);

}  // namespace ratchet
