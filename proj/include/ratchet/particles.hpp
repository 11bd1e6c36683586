#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ratchet/model.hpp"
#include "ratchet/stationary.hpp"

namespace ratchet {

/// Final snapshot of the particle ensemble.
struct ParticleEnsemble {
    std::vector<double> positions;  // in [0,1]
    std::vector<std::uint8_t> attached;
    std::uint64_t rng_seed = 0;
};

struct ParticleOptions {
    long n_particles = 100000;
    double t_end = 6.0;
    double dt = 2e-4;
    std::uint64_t seed = 1;
    int bins = 100;
    unsigned threads = 0;  // 0: use the hardware/env default
};

/// Empirical histograms of the two-state switching diffusion.
struct ParticleHistogram {
    int k = 0;
    long n_particles = 0;
    double t_end = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::string rng_algorithm;  // recorded so runs are reproducible across machines

    std::vector<double> bin_centers;
    std::vector<std::uint64_t> attached_counts;
    std::vector<std::uint64_t> detached_counts;
    std::vector<double> attached_density;  // counts / (n * bin width)
    std::vector<double> detached_density;

    std::vector<double> attached_well_mass;  // count fractions per well, length k
    std::vector<double> detached_well_mass;
};

/// Euler-Maruyama simulation of the microscopic two-state dynamics: attached
/// particles drift down the potential and diffuse with sigma, detached ones
/// diffuse with varsigma; both reflect at 0 and 1; states flip each step with
/// probability rate(x)*dt.  Every particle owns an independent RNG stream
/// derived from the seed, so results do not depend on how the ensemble is
/// sharded across threads.
ParticleEnsemble simulate_ensemble(const RatchetParams& params, const ParticleOptions& opts);

/// Ensemble run plus histogram/well-mass reduction.
ParticleHistogram simulate_particles(const RatchetParams& params, const ParticleOptions& opts);

struct WellComparison {
    std::vector<double> attached_deviation;  // |empirical - reference| per well
    std::vector<double> detached_deviation;
    double max_well_deviation = 0.0;
    bool pass = false;  // all deviations within 3 standard errors
};

/// Per-well agreement between the empirical masses and a solved stationary
/// pair, at the 3-standard-error threshold with SE = sqrt(m(1-m)/n) taken
/// from the reference mass m.
WellComparison compare_histogram(const ParticleHistogram& empirical, const DensityPair& reference,
                                 int k);

}  // namespace ratchet
