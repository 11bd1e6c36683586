#pragma once

#include <vector>

#include "ratchet/model.hpp"
#include "ratchet/stationary.hpp"

namespace ratchet {

/// Evolving density pair of the randomly flashing ratchet.
struct TransientState {
    DensityPair pair;
    double t = 0.0;
    long step_count = 0;
};

/// Deterministic flashing schedule: the potential is on for the first T_tr of
/// every period T (h(t) = 1 for nT < t <= nT + T_tr).
struct FlashingSchedule {
    double T = 1.0;
    double T_tr = 0.5;

    bool on_at(double t) const;
};

FlashingSchedule make_schedule(double T, double T_tr);

/// Backward-Euler stepper for the coupled system; the implicit matrix
/// I + dt*A is factored once and reused, conserving total mass exactly and
/// preserving nonnegativity for any dt.
class ImplicitStepper {
public:
    ImplicitStepper(const RatchetParams& params, double dt);

    TransientState step(const TransientState& state) const;
    double dt() const { return dt_; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    double dt_;
};

/// Uniform start pair p = P = 1/2 in total-mass normalization.
TransientState uniform_start(const RatchetParams& params);

/// One implicit-Euler step (convenience wrapper; builds the stepper anew).
TransientState step_random_flashing(const TransientState& state, double dt,
                                    const RatchetParams& params);

/// Trapezoidal total mass of the pair.
double total_mass(const DensityPair& pair);

/// L1 distance between two pairs on the same grid.
double l1_distance(const DensityPair& a, const DensityPair& b);

struct RelaxationResult {
    TransientState state;
    std::vector<double> history;  // L1 gap to the stationary pair, one entry per step
    bool converged = false;
    double max_mass_drift = 0.0;  // largest per-step change of total mass
};

/// Steps from `start` (uniform when omitted) until the L1 gap to the
/// stationary solution drops below tol or max_steps is reached.
RelaxationResult run_to_stationary(const RatchetParams& params, double dt, double tol,
                                   long max_steps);
RelaxationResult run_to_stationary(const RatchetParams& params, double dt, double tol,
                                   long max_steps, TransientState start);

/// One implicit step of the deterministic flashing equation
///   rho_t = sigma rho_xx + h(t) (psi_x rho)_x,  zero-flux ends,
/// with h evaluated at the new time t + dt.
GridFn step_deterministic_flashing(const GridFn& rho, double t, double dt,
                                   const Potential& potential, double sigma,
                                   const FlashingSchedule& schedule);

struct CycleResult {
    GridFn rho;        // state at the last completed cycle end
    int cycles = 0;
    double last_diff = 0.0;  // L1 difference of the final two cycle-end states
    bool converged = false;
};

/// Iterates whole on/off cycles from the uniform density until successive
/// cycle-end states differ by less than tol in L1.  dt must divide both
/// phases.
CycleResult run_flashing_cycles(const Potential& potential, double sigma,
                                const FlashingSchedule& schedule, double dt, double tol,
                                int max_cycles);

struct DirectionComparison {
    Direction random_direction = Direction::kIndeterminate;
    Direction deterministic_direction = Direction::kIndeterminate;
    bool comparable = false;  // false when either side is indeterminate
    bool agree = false;       // defined only when comparable
};

/// Deterministic direction from the cycle-asymptotic well-mass chain of rho;
/// random direction from the diffusive-mean verdict.
DirectionComparison compare_directions(const RatchetParams& params,
                                       const FlashingSchedule& schedule, double dt = 2e-3,
                                       double cycle_tol = 1e-7, int max_cycles = 2000);

}  // namespace ratchet
