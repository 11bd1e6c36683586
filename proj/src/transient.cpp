#include "ratchet/transient.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ratchet/banded.hpp"
#include "ratchet/flux.hpp"
#include "ratchet/tridiag.hpp"

namespace ratchet {

bool FlashingSchedule::on_at(double t) const {
    double phase = std::fmod(t, T);
    if (phase <= 1e-12 * std::max(1.0, std::abs(t))) phase = T;  // nT belongs to the off phase
    return phase <= T_tr + 1e-12;
}

FlashingSchedule make_schedule(double T, double T_tr) {
    if (!(T > 0.0) || !(T_tr > 0.0) || !(T_tr < T))
        throw std::invalid_argument("schedule: need 0 < T_tr < T");
    return FlashingSchedule{T, T_tr};
}

struct ImplicitStepper::Impl {
    GridPtr grid;
    PentaFactor factor;

    Impl(GridPtr g, PentaFactor f) : grid(std::move(g)), factor(std::move(f)) {}
};

namespace {

PentaFactor build_implicit_factor(const RatchetParams& params, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("stepper: dt must be positive");
    PentaMatrix A = assemble_coupled_operator(params, params.psi_alt.has_value());
    for (auto& diagVec : A.band)
        for (double& v : diagVec) v *= dt;
    for (int r = 0; r < A.n; ++r) A.at(r, r) += 1.0;
    return PentaFactor(A);
}

}  // namespace

ImplicitStepper::ImplicitStepper(const RatchetParams& params, double dt)
    : impl_(std::make_shared<Impl>(params.potential.samples.grid,
                                   build_implicit_factor(params, dt))),
      dt_(dt) {}

TransientState ImplicitStepper::step(const TransientState& state) const {
    const Grid& g = *impl_->grid;
    const int n = g.n;
    std::vector<double> u(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        u[static_cast<std::size_t>(2 * i)] = state.pair.p[i];
        u[static_cast<std::size_t>(2 * i + 1)] = state.pair.P[i];
    }
    impl_->factor.solve_in_place(u);
    TransientState next = state;
    for (int i = 0; i < n; ++i) {
        next.pair.p[i] = u[static_cast<std::size_t>(2 * i)];
        next.pair.P[i] = u[static_cast<std::size_t>(2 * i + 1)];
    }
    next.t += dt_;
    next.step_count += 1;
    return next;
}

TransientState uniform_start(const RatchetParams& params) {
    TransientState s;
    s.pair.p = constant_fn(params.potential.samples.grid, 0.5);
    s.pair.P = constant_fn(params.potential.samples.grid, 0.5);
    s.pair.normalization_mode = NormalizationMode::kTotalMass;
    return s;
}

TransientState step_random_flashing(const TransientState& state, double dt,
                                    const RatchetParams& params) {
    return ImplicitStepper(params, dt).step(state);
}

double total_mass(const DensityPair& pair) { return integrate(pair.p) + integrate(pair.P); }

double l1_distance(const DensityPair& a, const DensityPair& b) {
    const std::vector<double> w = trapezoid_weights(*a.p.grid);
    double acc = 0.0;
    for (int i = 0; i < a.p.n(); ++i)
        acc += w[static_cast<std::size_t>(i)] *
               (std::abs(a.p[i] - b.p[i]) + std::abs(a.P[i] - b.P[i]));
    return acc;
}

RelaxationResult run_to_stationary(const RatchetParams& params, double dt, double tol,
                                   long max_steps) {
    return run_to_stationary(params, dt, tol, max_steps, uniform_start(params));
}

RelaxationResult run_to_stationary(const RatchetParams& params, double dt, double tol,
                                   long max_steps, TransientState start) {
    const DensityPair stationary =
        params.psi_alt ? solve_collaborative(params) : solve_stationary(params);
    RelaxationResult out;
    out.state = std::move(start);
    out.history.push_back(l1_distance(out.state.pair, stationary));
    if (out.history.back() < tol) {
        out.converged = true;
        return out;
    }
    const ImplicitStepper stepper(params, dt);
    double mass = total_mass(out.state.pair);
    for (long step = 0; step < max_steps; ++step) {
        out.state = stepper.step(out.state);
        const double m = total_mass(out.state.pair);
        out.max_mass_drift = std::max(out.max_mass_drift, std::abs(m - mass));
        mass = m;
        out.history.push_back(l1_distance(out.state.pair, stationary));
        if (out.history.back() < tol) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

GridFn step_deterministic_flashing(const GridFn& rho, double t, double dt,
                                   const Potential& potential, double sigma,
                                   const FlashingSchedule& schedule) {
    if (!(dt > 0.0)) throw std::invalid_argument("deterministic step: dt must be positive");
    const bool on = schedule.on_at(t + dt);
    TridiagonalSystem sys = assemble_flashing_operator(potential, sigma, on);
    const std::size_t n = sys.diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        sys.diag[i] = 1.0 + dt * sys.diag[i];
        if (i + 1 < n) {
            sys.sub[i] *= dt;
            sys.super[i] *= dt;
        }
    }
    sys.rhs = rho.values;
    GridFn out;
    out.grid = rho.grid;
    out.values = solve_tridiagonal(sys);
    return out;
}

CycleResult run_flashing_cycles(const Potential& potential, double sigma,
                                const FlashingSchedule& schedule, double dt, double tol,
                                int max_cycles) {
    const long n_on = std::lround(schedule.T_tr / dt);
    const long n_off = std::lround((schedule.T - schedule.T_tr) / dt);
    if (n_on < 1 || n_off < 1 || std::abs(n_on * dt - schedule.T_tr) > 1e-9 ||
        std::abs(n_off * dt - (schedule.T - schedule.T_tr)) > 1e-9)
        throw std::invalid_argument("run_flashing_cycles: dt must divide both phases");

    const auto implicit_factor = [&](bool on) {
        TridiagonalSystem sys = assemble_flashing_operator(potential, sigma, on);
        const std::size_t n = sys.diag.size();
        for (std::size_t i = 0; i < n; ++i) {
            sys.diag[i] = 1.0 + dt * sys.diag[i];
            if (i + 1 < n) {
                sys.sub[i] *= dt;
                sys.super[i] *= dt;
            }
        }
        return TridiagonalFactor(sys);
    };
    const TridiagonalFactor on_factor = implicit_factor(true);
    const TridiagonalFactor off_factor = implicit_factor(false);

    CycleResult res;
    res.rho = constant_fn(potential.samples.grid, 1.0);
    const std::vector<double> w = trapezoid_weights(*potential.samples.grid);
    std::vector<double> prev = res.rho.values;
    for (int cyc = 1; cyc <= max_cycles; ++cyc) {
        for (long s = 0; s < n_on; ++s) on_factor.solve_in_place(res.rho.values);
        for (long s = 0; s < n_off; ++s) off_factor.solve_in_place(res.rho.values);
        double diff = 0.0;
        for (std::size_t i = 0; i < prev.size(); ++i)
            diff += w[i] * std::abs(res.rho.values[i] - prev[i]);
        res.cycles = cyc;
        res.last_diff = diff;
        if (diff < tol) {
            res.converged = true;
            return res;
        }
        prev = res.rho.values;
    }
    return res;
}

namespace {

Direction chain_direction(const std::vector<double>& wells) {
    constexpr double slack = 1e-9;
    bool dec = true, inc = true;
    for (std::size_t i = 0; i + 1 < wells.size(); ++i) {
        dec = dec && wells[i] - wells[i + 1] > slack;
        inc = inc && wells[i + 1] - wells[i] > slack;
    }
    if (dec) return Direction::kLeft;
    if (inc) return Direction::kRight;
    return Direction::kIndeterminate;
}

}  // namespace

DirectionComparison compare_directions(const RatchetParams& params,
                                       const FlashingSchedule& schedule, double dt,
                                       double cycle_tol, int max_cycles) {
    DirectionComparison cmp;
    cmp.random_direction = transport_verdict(params).direction;
    const CycleResult cyc =
        run_flashing_cycles(params.potential, params.sigma, schedule, dt, cycle_tol, max_cycles);
    cmp.deterministic_direction = chain_direction(well_integrals(cyc.rho, params.k()));
    cmp.comparable = cmp.random_direction != Direction::kIndeterminate &&
                     cmp.deterministic_direction != Direction::kIndeterminate;
    cmp.agree = cmp.comparable && cmp.random_direction == cmp.deterministic_direction;
    return cmp;
}

}  // namespace ratchet
