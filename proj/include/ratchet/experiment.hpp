#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratchet/config.hpp"
#include "ratchet/stationary.hpp"

namespace ratchet {

/// One evaluated lattice point of the sigma x kappa sweep.
struct SweepPoint {
    double sigma = 0.0;
    double kappa = 0.0;
    bool chain_p = false;
    bool chain_P = false;
    bool shift_P_ok = false;
    double min_margin = 0.0;
    bool solve_failed = false;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // sigma descending, kappa ascending
    std::optional<SweepPoint> first_satisfying;  // largest sigma, then smallest kappa
    double best_margin = 0.0;
};

/// Evaluates solve_stationary over the sweep lattice; a point satisfies when
/// both chains and the nodewise shift hold with min_margin > 1e-6.
SweepResult run_sweep_lattice(const ExperimentConfig& cfg, unsigned threads = 0);

/// Runs the configured experiment, writing summary.txt plus the applicable
/// CSV artifacts under cfg.output_dir.  Returns the process exit status
/// (0 success; throws ConfigError for invalid configs, std::runtime_error
/// for solver failures -- the CLI maps those to 1 and 2).
int run_experiment(const ExperimentConfig& cfg);

/// Sweep entry point: writes sweep.csv, summary.txt and, when a lattice point
/// satisfies the chains, fixture.toml pinning that (sigma, kappa) pair.
int run_sweep(const ExperimentConfig& cfg);

/// 17-significant-digit float formatting used by every artifact writer.
std::string format_float(double v);

}  // namespace ratchet
