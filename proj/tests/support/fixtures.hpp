#pragma once

// Shared parameter sets used by the unit tests and the acceptance suite.

#include "ratchet/model.hpp"

namespace ratchet::fixtures {

inline GridPtr unit_grid(int n = 2001, int k = 2) { return make_grid(0.0, 1.0, grid_size_for_k(n, k)); }

/// Transport instance with a < S: k = 2 sawtooth with the minimum at 0.15,
/// attachment rate peaked at 0.35, uniform detachment, slow attached
/// diffusion and strong potential coupling.
inline RatchetParams transport_fixture(int n = 2001) {
    GridPtr g = unit_grid(n, 2);
    Potential pot = make_smoothed_sawtooth(2, 0.15, 1.0, g);
    RateProfile nu = make_peaked_rate(2, 0.35, 0.05, 0.05, 1.0, g);
    RateProfile eta = make_constant_rate(2, 1.0, g);
    return make_params(1e-3, 1.0, 20.0, std::move(pot), std::move(nu), std::move(eta));
}

/// Fully symmetric instance: a = 1/(2k) and a rate profile peaked at the well
/// centre, so S coincides with a and no transport occurs.
inline RatchetParams symmetric_fixture(int n = 2001, double sigma = 1e-2, double kappa = 5.0) {
    GridPtr g = unit_grid(n, 2);
    Potential pot = make_smoothed_sawtooth(2, 0.25, 1.0, g);
    RateProfile nu = make_peaked_rate(2, 0.25, 0.05, 0.05, 1.0, g);
    RateProfile eta = make_constant_rate(2, 1.0, g);
    return make_params(sigma, 1.0, kappa, std::move(pot), std::move(nu), std::move(eta));
}

/// Conjugate-rates instance (eta = nu exp(kappa psi / sigma)): transport-free
/// by construction, stationary pair is the exact Boltzmann/constant pair.
inline RatchetParams conjugate_fixture(int n = 2001, int k = 3) {
    GridPtr g = unit_grid(n, k);
    Potential pot = make_smoothed_sawtooth(k, 0.12, 1.0, g);
    RateProfile nu = make_peaked_rate(k, 0.2, 0.02, 0.1, 1.0, g);
    const double kappa = 2.0, sigma = 0.4;
    RateProfile eta = make_conjugate_eta(nu, pot, kappa, sigma);
    return make_params(sigma, 0.7, kappa, std::move(pot), std::move(nu), std::move(eta));
}

/// Instance whose minimum lies between the active site (0.15) and the well
/// centre (0.25): the random and deterministic flashing models predict
/// opposite directions here.
inline RatchetParams disagreement_fixture(int n = 2001) {
    GridPtr g = unit_grid(n, 2);
    Potential pot = make_smoothed_sawtooth(2, 0.2, 1.0, g);
    RateProfile nu = make_peaked_rate(2, 0.15, 0.05, 0.05, 1.0, g);
    RateProfile eta = make_constant_rate(2, 1.0, g);
    return make_params(1e-2, 1.0, 20.0, std::move(pot), std::move(nu), std::move(eta));
}

/// Symmetric rates with an asymmetric potential: both models agree (here
/// both transport left since a < 1/(2k) = S).
inline RatchetParams agreement_fixture(int n = 2001) {
    GridPtr g = unit_grid(n, 2);
    Potential pot = make_smoothed_sawtooth(2, 0.15, 1.0, g);
    RateProfile nu = make_constant_rate(2, 1.0, g);
    RateProfile eta = make_constant_rate(2, 1.0, g);
    return make_params(1e-2, 1.0, 20.0, std::move(pot), std::move(nu), std::move(eta));
}

}  // namespace ratchet::fixtures
