#include <doctest.h>

#include <cmath>
#include <random>

#include "ratchet/model.hpp"
#include "support/fixtures.hpp"

using namespace ratchet;

TEST_CASE("grid construction and helpers") {
    GridPtr g = make_grid(0.0, 1.0, 101);
    CHECK(g->n == 101);
    CHECK(g->h == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(g->node(0) == 0.0);
    CHECK(g->node(100) == 1.0);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 11), std::invalid_argument);

    CHECK(grid_size_for_k(2001, 2) == 2001);
    CHECK(grid_size_for_k(2001, 3) == 2005);   // 2004 = 6 * 334
    CHECK((grid_size_for_k(2001, 5) - 1) % 10 == 0);
    CHECK(grid_size_for_k(2001, 5) >= 2001);

    CHECK(nearest_node(*g, 0.503) == 50);
    CHECK_THROWS_AS(nearest_node(*g, 1.2), std::invalid_argument);
}

TEST_CASE("sawtooth: symmetric tooth when a = 1/(2k)") {
    GridPtr g = make_grid(0.0, 1.0, 2001);
    Potential p = make_smoothed_sawtooth(2, 0.25, 1.0, g);
    for (int i = 0; i < g->n; ++i)
        CHECK(std::abs(p.samples[i] - p.samples[g->n - 1 - i]) <= 1e-12);
}

TEST_CASE("sawtooth: strict monotonicity between extrema") {
    GridPtr g = make_grid(0.0, 1.0, 2001);
    Potential p = make_smoothed_sawtooth(2, 0.1, 1.0, g);
    const int m = (g->n - 1) / 2;
    const int ia = static_cast<int>(std::lround(p.a / g->h));
    for (int j = 0; j < ia; ++j) CHECK(p.samples[j + 1] < p.samples[j]);
    for (int j = ia; j < m; ++j) CHECK(p.samples[j + 1] > p.samples[j]);
}

TEST_CASE("sawtooth: 1/k-periodic for k=3") {
    GridPtr g = make_grid(0.0, 1.0, grid_size_for_k(2001, 3));
    Potential p = make_smoothed_sawtooth(3, 0.2, 2.0, g);
    const int m = (g->n - 1) / 3;
    for (int i = 0; i + m < g->n; ++i)
        CHECK(std::abs(p.samples[i] - p.samples[i + m]) <= 1e-12);
    CHECK(p.samples[0] == doctest::Approx(2.0));
    validate_potential(p);  // must not throw
}

TEST_CASE("sawtooth: rejects bad inputs") {
    GridPtr g = make_grid(0.0, 1.0, 2001);
    CHECK_THROWS_AS(make_smoothed_sawtooth(2, 0.5, 1.0, g), std::invalid_argument);   // a >= 1/k
    CHECK_THROWS_AS(make_smoothed_sawtooth(2, -0.1, 1.0, g), std::invalid_argument);
    CHECK_THROWS_AS(make_smoothed_sawtooth(1, 0.2, 1.0, g), std::invalid_argument);   // k <= 1
    CHECK_THROWS_AS(make_smoothed_sawtooth(2, 0.2, 0.0, g), std::invalid_argument);   // depth
    GridPtr half = make_grid(0.0, 0.5, 1001);
    CHECK_THROWS_AS(make_smoothed_sawtooth(2, 0.2, 1.0, half), std::invalid_argument);
}

TEST_CASE("peaked rate: per-period bump mass and argmax") {
    GridPtr g = make_grid(0.0, 1.0, 2001);
    RateProfile r = make_peaked_rate(2, 0.3, 0.01, 0.01, 1.0, g);
    const int m = (g->n - 1) / 2;
    double acc = 0.5 * ((r.samples[0] - 0.01) + (r.samples[m] - 0.01));
    for (int i = 1; i < m; ++i) acc += r.samples[i] - 0.01;
    acc *= g->h;
    CHECK(acc == doctest::Approx(1.0).epsilon(0.02));

    RateProfile r2 = make_peaked_rate(2, 0.15, 0.005, 0.01, 1.0, g);
    int argmax = 0;
    for (int i = 1; i <= m; ++i)
        if (r2.samples[i] > r2.samples[argmax]) argmax = i;
    CHECK(std::abs(g->node(argmax) - 0.15) <= g->h);
}

TEST_CASE("peaked rate: wide bump approaches a constant") {
    GridPtr g = make_grid(0.0, 1.0, 2001);
    RateProfile r = make_peaked_rate(2, 0.3, 1.0, 0.05, 1.0, g);
    double lo = r.samples[0], hi = r.samples[0];
    for (double v : r.samples.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo <= 1e-6 * hi);
}

TEST_CASE("peaked rate: rejects nonpositive width/base/mass") {
    GridPtr g = make_grid(0.0, 1.0, 2001);
    CHECK_THROWS_AS(make_peaked_rate(2, 0.3, 0.0, 0.01, 1.0, g), std::invalid_argument);
    CHECK_THROWS_AS(make_peaked_rate(2, 0.3, 0.01, 0.0, 1.0, g), std::invalid_argument);
    CHECK_THROWS_AS(make_peaked_rate(2, 0.3, 0.01, 0.01, -1.0, g), std::invalid_argument);
}

TEST_CASE("well integrals: constants, linear ramp, periodic potential") {
    GridPtr g = make_grid(0.0, 1.0, 2001);
    const auto ones = well_integrals(constant_fn(g, 1.0), 4);
    for (double v : ones) CHECK(v == doctest::Approx(0.25).epsilon(1e-13));

    GridFn ramp;
    ramp.grid = g;
    ramp.values.resize(2001);
    for (int i = 0; i < 2001; ++i) ramp[i] = g->node(i);
    const auto lin = well_integrals(ramp, 2);
    CHECK(lin[0] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(lin[1] == doctest::Approx(0.375).epsilon(1e-12));

    Potential p = make_smoothed_sawtooth(2, 0.15, 1.0, g);
    const auto wells = well_integrals(p.samples, 2);
    CHECK(std::abs(wells[0] - wells[1]) <= 1e-12);
}

TEST_CASE("well integrals: additivity over random samples") {
    std::mt19937 rng(991);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int k : {1, 2, 3, 5}) {
        GridPtr g = make_grid(0.0, 1.0, grid_size_for_k(801, k));
        GridFn f;
        f.grid = g;
        f.values.resize(static_cast<std::size_t>(g->n));
        for (double& v : f.values) v = uni(rng);
        const auto wells = well_integrals(f, k);
        double sum = 0.0;
        for (double v : wells) sum += v;
        CHECK(std::abs(sum - integrate(f)) <= 1e-12);
    }
}

TEST_CASE("well integrals: rejects grids missing well boundaries") {
    GridPtr g = make_grid(0.0, 1.0, 2001);  // 2000 cells, not divisible by 3
    CHECK_THROWS_AS(well_integrals(constant_fn(g, 1.0), 3), std::invalid_argument);
}

TEST_CASE("params validation and reflection") {
    RatchetParams params = fixtures::transport_fixture(401);
    validate_params(params);

    RatchetParams mirrored = reflect_params(params);
    validate_params(mirrored);
    CHECK(mirrored.potential.a == doctest::Approx(0.35));
    CHECK(mirrored.nu.samples[0] == params.nu.samples[params.grid().n - 1]);

    RatchetParams bad = params;
    bad.sigma = -1.0;
    CHECK_THROWS_AS(validate_params(bad), std::invalid_argument);

    RatchetParams mixed = params;
    mixed.nu = make_constant_rate(2, 1.0, make_grid(0.0, 1.0, 801));
    CHECK_THROWS_AS(validate_params(mixed), std::invalid_argument);
}

TEST_CASE("conjugate eta matches the pointwise definition") {
    RatchetParams params = fixtures::conjugate_fixture(801);
    for (int i = 0; i < params.grid().n; ++i) {
        const double expected = params.nu.samples[i] *
                                std::exp(params.kappa * params.potential.samples[i] / params.sigma);
        CHECK(params.eta.samples[i] == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("slope-to-detachment ratio vanishes at extrema with the right signs") {
    RatchetParams params = fixtures::transport_fixture(2001);
    const GridFn b = slope_to_detachment_ratio(params);
    const Grid& g = params.grid();
    const int m = (g.n - 1) / 2;
    const int ia = static_cast<int>(std::lround(params.potential.a / g.h));
    CHECK(b[0] == 0.0);
    CHECK(b[g.n - 1] == 0.0);
    CHECK(std::abs(b[ia]) <= 1e-6);       // minimum
    CHECK(std::abs(b[m]) <= 1e-6);        // interior maximum
    CHECK(b[ia / 2] < 0.0);               // descending arc
    CHECK(b[ia + (m - ia) / 2] > 0.0);    // ascending arc
}

TEST_CASE("flat potential allowed only as psi_alt") {
    GridPtr g = make_grid(0.0, 1.0, 801);
    Potential flat = make_flat_potential(2, g, 0.0);
    RatchetParams params = fixtures::transport_fixture(801);
    params.psi_alt = flat;
    validate_params(params);

    RatchetParams bad = params;
    bad.potential = flat;
    CHECK_THROWS_AS(validate_params(bad), std::invalid_argument);
}
