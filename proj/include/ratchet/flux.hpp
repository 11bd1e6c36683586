#pragma once

#include "ratchet/banded.hpp"
#include "ratchet/model.hpp"
#include "ratchet/tridiag.hpp"

namespace ratchet {

/// Bernoulli function z / (e^z - 1) of exponential fitting, continued through
/// z = 0 and saturating gracefully for |z| beyond the exponential range.
double bernoulli(double z);

/// Steady-state operator A of the coupled system, interleaved per node
/// (u[2i] = p_i, u[2i+1] = P_i), finite-volume form with zero-flux ends:
/// a stationary pair satisfies A u = 0, and the trapezoid-weighted column
/// sums of A vanish identically (discrete mass conservation).
/// With `collaborative` set, the detached block carries the exponential-fitted
/// drift of psi_alt; otherwise it is pure diffusion.
PentaMatrix assemble_coupled_operator(const RatchetParams& params, bool collaborative);

/// Steady-state operator of the single-density flashing equation
///   rho_t = sigma rho_xx + h (psi_x rho)_x
/// as the three diagonals of A (rho stationary iff A rho = 0); `on` selects
/// h = 1 or h = 0.
TridiagonalSystem assemble_flashing_operator(const Potential& potential, double sigma, bool on);

}  // namespace ratchet
