#include <doctest.h>

#include <cmath>

#include "ratchet/transient.hpp"
#include "support/fixtures.hpp"

using namespace ratchet;

TEST_CASE("stationary pair is a fixed point of the implicit step") {
    RatchetParams params = fixtures::transport_fixture(1201);
    TransientState state;
    state.pair = solve_stationary(params);
    const ImplicitStepper stepper(params, 1e-3);
    const TransientState next = stepper.step(state);
    CHECK(l1_distance(next.pair, state.pair) <= 1e-9);
    CHECK(next.step_count == 1);
    CHECK(next.t == doctest::Approx(1e-3));
}

TEST_CASE("mass is conserved over a thousand steps") {
    RatchetParams params = fixtures::transport_fixture(801);
    TransientState state = uniform_start(params);
    const ImplicitStepper stepper(params, 1e-3);
    const double mass0 = total_mass(state.pair);
    double max_drift = 0.0;
    double prev = mass0;
    for (int s = 0; s < 1000; ++s) {
        state = stepper.step(state);
        const double m = total_mass(state.pair);
        max_drift = std::max(max_drift, std::abs(m - prev));
        prev = m;
        for (double v : state.pair.p.values) CHECK(v >= 0.0);
        if (s % 100 == 0)
            for (double v : state.pair.P.values) CHECK(v >= 0.0);
    }
    CHECK(std::abs(prev - mass0) <= 1e-9);
    CHECK(max_drift <= 1e-12);
}

TEST_CASE("conjugate-rates relaxation decreases monotonically at checkpoints") {
    RatchetParams params = fixtures::conjugate_fixture(801, 3);
    const DensityPair target = solve_stationary(params);
    TransientState state = uniform_start(params);
    const ImplicitStepper stepper(params, 1e-3);
    double prev_gap = l1_distance(state.pair, target);
    for (int checkpoint = 0; checkpoint < 10; ++checkpoint) {
        for (int s = 0; s < 100; ++s) state = stepper.step(state);
        const double gap = l1_distance(state.pair, target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("run_to_stationary on the conjugate instance") {
    RatchetParams params = fixtures::conjugate_fixture(801, 3);
    const RelaxationResult res = run_to_stationary(params, 1e-3, 1e-7, 100000);
    CHECK(res.converged);
    CHECK(res.history.back() < 1e-7);
    CHECK(res.max_mass_drift <= 1e-12);
    // strictly decreasing on the tail half
    const std::size_t half = res.history.size() / 2;
    for (std::size_t i = half; i + 1 < res.history.size(); ++i)
        CHECK(res.history[i + 1] < res.history[i]);
}

TEST_CASE("run_to_stationary accepts a stationary start") {
    RatchetParams params = fixtures::conjugate_fixture(801, 3);
    TransientState start;
    start.pair = solve_stationary(params);
    const RelaxationResult res = run_to_stationary(params, 1e-3, 1e-6, 100, start);
    CHECK(res.converged);
    CHECK(res.state.step_count == 0);
}

TEST_CASE("transport fixture relaxes to the stationary well masses") {
    RatchetParams params = fixtures::transport_fixture(1201);
    const RelaxationResult res = run_to_stationary(params, 1e-3, 1e-6, 100000);
    CHECK(res.converged);
    const WellMassReport direct = well_mass_report(solve_stationary(params), 2);
    const WellMassReport relaxed = well_mass_report(res.state.pair, 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(direct.p_hat[i] - relaxed.p_hat[i]) <= 1e-6);
        CHECK(std::abs(direct.P_hat[i] - relaxed.P_hat[i]) <= 1e-6);
    }
}

TEST_CASE("deterministic flashing: diffusion-only phase flattens the density") {
    GridPtr g = fixtures::unit_grid(1201, 2);
    Potential pot = make_smoothed_sawtooth(2, 0.2, 1.0, g);
    const FlashingSchedule schedule = make_schedule(10.0, 5.0);
    GridFn rho = constant_fn(g, 1.0);
    for (int i = 0; i < g->n; ++i) rho[i] = 1.0 + 0.4 * std::cos(3.14159265358979 * g->node(i));
    // start inside the off phase (t in (T_tr, T]) and stay there
    double t = 5.0;
    const double dt = 1e-2;
    for (int s = 0; s < 400; ++s) {
        rho = step_deterministic_flashing(rho, t, dt, pot, 0.05, schedule);
        t += dt;
    }
    for (int i = 0; i < g->n; ++i) CHECK(std::abs(rho[i] - 1.0) <= 1e-6);
}

TEST_CASE("deterministic flashing: on phase settles into the Boltzmann profile") {
    GridPtr g = fixtures::unit_grid(1201, 2);
    Potential pot = make_smoothed_sawtooth(2, 0.2, 1.0, g);
    const double sigma = 0.1;
    const FlashingSchedule schedule = make_schedule(1000.0, 999.0);  // effectively always on
    GridFn rho = constant_fn(g, 1.0);
    double t = 0.0;
    const double dt = 1e-2;
    for (int s = 0; s < 5000; ++s) {
        rho = step_deterministic_flashing(rho, t, dt, pot, sigma, schedule);
        t += dt;
    }
    GridFn target;
    target.grid = g;
    target.values.resize(static_cast<std::size_t>(g->n));
    for (int i = 0; i < g->n; ++i)
        target[i] = std::exp(-pot.samples[i] / sigma);
    const double z = integrate(target);
    for (double& v : target.values) v /= z;
    CHECK(max_abs_diff(rho, target) <= 1e-6);
}

TEST_CASE("cycle map converges and transports toward the short side") {
    GridPtr g = fixtures::unit_grid(1201, 2);
    const FlashingSchedule schedule = make_schedule(1.4, 0.4);
    SUBCASE("a < 1/(2k): left transport") {
        Potential pot = make_smoothed_sawtooth(2, 0.2, 1.0, g);
        const CycleResult res = run_flashing_cycles(pot, 0.01, schedule, 2e-3, 1e-8, 2000);
        CHECK(res.converged);
        const auto wells = well_integrals(res.rho, 2);
        CHECK(wells[0] > wells[1] + 1e-6);
    }
    SUBCASE("a > 1/(2k): right transport") {
        Potential pot = make_smoothed_sawtooth(2, 0.3, 1.0, g);
        const CycleResult res = run_flashing_cycles(pot, 0.01, schedule, 2e-3, 1e-8, 2000);
        CHECK(res.converged);
        const auto wells = well_integrals(res.rho, 2);
        CHECK(wells[1] > wells[0] + 1e-6);
    }
}

TEST_CASE("schedule invariants and the h(t) convention") {
    CHECK_THROWS_AS(make_schedule(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_schedule(1.0, 0.0), std::invalid_argument);
    const FlashingSchedule s = make_schedule(2.0, 0.5);
    CHECK(s.on_at(0.25));
    CHECK(s.on_at(0.5));
    CHECK_FALSE(s.on_at(0.75));
    CHECK_FALSE(s.on_at(2.0));   // nT sits at the end of the off phase
    CHECK(s.on_at(2.25));
}

TEST_CASE("compare_directions on the three reference instances") {
    const FlashingSchedule schedule = make_schedule(1.4, 0.4);

    SUBCASE("minimum between the active site and the well centre: opposite") {
        RatchetParams params = fixtures::disagreement_fixture(1201);
        const DirectionComparison cmp = compare_directions(params, schedule);
        CHECK(cmp.comparable);
        CHECK(cmp.random_direction == Direction::kRight);
        CHECK(cmp.deterministic_direction == Direction::kLeft);
        CHECK_FALSE(cmp.agree);
    }

    SUBCASE("symmetric rates, asymmetric potential: agree") {
        RatchetParams params = fixtures::agreement_fixture(1201);
        const DirectionComparison cmp = compare_directions(params, schedule);
        CHECK(cmp.comparable);
        CHECK(cmp.agree);
        CHECK(cmp.random_direction == Direction::kLeft);
    }

    SUBCASE("full symmetry: both indeterminate, agreement undefined") {
        RatchetParams params = fixtures::symmetric_fixture(1201);
        const DirectionComparison cmp = compare_directions(params, schedule);
        CHECK(cmp.random_direction == Direction::kIndeterminate);
        CHECK(cmp.deterministic_direction == Direction::kIndeterminate);
        CHECK_FALSE(cmp.comparable);
    }
}
