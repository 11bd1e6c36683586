#pragma once

#include <string>
#include <vector>

#include "ratchet/grid.hpp"
#include "ratchet/model.hpp"

namespace ratchet {

enum class NormalizationMode {
    kTotalMass,     // integral of p + P equals 1
    kRenormalized,  // integral of eta*p and of nu*P each equal 1
};

/// Attached/detached density pair.
struct DensityPair {
    GridFn p;  // attached
    GridFn P;  // detached
    NormalizationMode normalization_mode = NormalizationMode::kTotalMass;
};

/// Per-well masses and the strict-chain flags of Theorem-style transport.
struct WellMassReport {
    std::vector<double> p_hat;
    std::vector<double> P_hat;
    bool chain_p = false;      // p_hat strictly decreasing (slack > 1e-9)
    bool chain_P = false;
    bool shift_P_ok = false;   // P(x) > P(x+1/k) at every admissible node
    double min_margin = 0.0;   // smallest slack among all those inequalities
};

enum class Direction { kLeft, kRight, kIndeterminate };

std::string to_string(Direction d);

/// Predicted bulk transport direction from the location of the potential
/// minimum offset a relative to the nu/varsigma-diffusive mean S of one well.
struct TransportVerdict {
    double S = 0.0;
    double a = 0.0;
    double margin = 0.0;  // S - a
    Direction direction = Direction::kIndeterminate;
};

/// Diagnostics of the bordered linear solve.
struct StationaryDiagnostics {
    double dropped_row_residual = 0.0;  // residual of the equation replaced by normalization
    double max_relative_residual = 0.0;
    double min_p = 0.0;
    double min_P = 0.0;
};

/// Solves the stationary randomly flashing ratchet system on the grid:
///   -sigma p_xx - kappa (psi_x p)_x = nu P - eta p,   zero-flux ends,
///   -varsigma P_xx                 = -nu P + eta p,   P_x = 0 at ends,
/// normalized by integral(p + P) = 1.  The drift flux uses exponential
/// fitting so the system stays an M-matrix for arbitrarily large kappa/sigma.
/// Requires psi_alt to be absent.
DensityPair solve_stationary(const RatchetParams& params, StationaryDiagnostics* diag = nullptr);

/// Collaborative variant: the detached equation gains the exponential-fitted
/// drift of the second potential.  Reduces to solve_stationary when psi_alt
/// is constant.
DensityPair solve_collaborative(const RatchetParams& params, StationaryDiagnostics* diag = nullptr);

/// Rescales a total-mass pair to the renormalized convention
/// (integral eta*p = integral nu*P = 1) after verifying the balance identity
/// integral(eta p - nu P) = 0 to 1e-8.
DensityPair renormalize(const DensityPair& pair, const RatchetParams& params);

/// Well masses and strict-chain flags of a solved pair.
WellMassReport well_mass_report(const DensityPair& pair, int k);

/// Compares a with the nu/varsigma-diffusive mean of [0, 1/k]; margins inside
/// 2h are reported as indeterminate.
TransportVerdict transport_verdict(const RatchetParams& params);

}  // namespace ratchet
