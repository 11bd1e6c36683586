#pragma once

#include <optional>
#include <vector>

#include "ratchet/grid.hpp"

namespace ratchet {

/// A 1/k-periodic ratchet potential on [0,1] with maxima at x_i = (i-1)/k and
/// a single minimum per period at a_i = a + x_i.
struct Potential {
    int k = 2;          // tooth count, > 1
    double a = 0.0;     // minimum offset within each period, in (0, 1/k); node-snapped
    GridFn samples;     // psi sampled on [0,1]

    double tooth_width() const { return 1.0 / k; }
};

/// A strictly positive 1/k-periodic transition-rate profile on [0,1].
struct RateProfile {
    int k = 1;
    GridFn samples;
};

/// Full description of a randomly flashing ratchet instance.
///
/// sigma / varsigma are the attached / detached diffusivities, kappa the
/// inverse-temperature coefficient, nu the attachment rate and eta the
/// detachment rate.  psi_alt is the optional second potential felt by the
/// detached state (collaborative variant).
struct RatchetParams {
    double sigma = 1.0;
    double varsigma = 1.0;
    double kappa = 1.0;
    Potential potential;
    RateProfile nu;
    RateProfile eta;
    std::optional<Potential> psi_alt;

    const Grid& grid() const { return *potential.samples.grid; }
    int k() const { return potential.k; }
};

/// Builds a smooth 1/k-periodic sawtooth-like potential out of two cubic
/// Hermite arcs per tooth (zero slope at every extremum, strictly monotone in
/// between).  `a` is snapped to the nearest grid node.  The potential is
/// `depth` at the maxima and 0 at the minima.
Potential make_smoothed_sawtooth(int k, double a, double depth, GridPtr grid);

/// Constant-in-x potential of the given level; admissible only as the second
/// potential of the collaborative variant (it fails the sawtooth invariants).
Potential make_flat_potential(int k, GridPtr grid, double level = 0.0);

/// Periodic rate profile: base level plus one Gaussian bump per period,
/// centred at s_star + (i-1)/k, truncated at 6*width and renormalized so the
/// bump carries integral `mass` per period.  `s_star` is node-snapped.
RateProfile make_peaked_rate(int k, double s_star, double width, double base, double mass,
                             GridPtr grid);

/// Constant rate profile.
RateProfile make_constant_rate(int k, double value, GridPtr grid);

/// Detachment profile eta = nu * exp(kappa * psi / sigma); with this choice
/// the stationary state is the exact Boltzmann pair and every well carries
/// mass 1/k.
RateProfile make_conjugate_eta(const RateProfile& nu, const Potential& potential, double kappa,
                               double sigma);

/// Throws std::invalid_argument when the sampled potential violates its
/// invariants (periodicity, extrema placement, monotone arcs, flat extrema).
void validate_potential(const Potential& p);

/// Throws when the profile is not strictly positive or not 1/k-periodic.
void validate_rate_profile(const RateProfile& r);

/// Validates all parts and their grid/k consistency.  A flat psi_alt is
/// accepted; a flat main potential is not.
void validate_params(const RatchetParams& params);

/// Convenience bundle constructor; validates before returning.
RatchetParams make_params(double sigma, double varsigma, double kappa, Potential potential,
                          RateProfile nu, RateProfile eta,
                          std::optional<Potential> psi_alt = std::nullopt);

/// The instance mirrored through x -> 1-x: reversed samples, offset 1/k - a.
RatchetParams reflect_params(const RatchetParams& params);

/// Trapezoidal integrals of f over each well [x_i, x_{i+1}], i = 1..k.
/// Requires (n-1) divisible by k so that every well boundary is a node.
std::vector<double> well_integrals(const GridFn& f, int k);

/// Central-difference slope of the sampled potential (zero at the ends, where
/// the potential has flat extrema).
GridFn potential_slope(const Potential& p);

/// The ratio psi_x / eta; vanishes at the extrema of the potential, negative
/// on descending arcs and positive on ascending ones.
GridFn slope_to_detachment_ratio(const RatchetParams& params);

}  // namespace ratchet
