#include <doctest.h>

#include <cmath>
#include <random>

#include "ratchet/stationary.hpp"
#include "support/fixtures.hpp"

using namespace ratchet;

TEST_CASE("conjugate rates: exact Boltzmann pair, equal well masses") {
    RatchetParams params = fixtures::conjugate_fixture(2001, 3);
    StationaryDiagnostics diag;
    const DensityPair pair = solve_stationary(params, &diag);

    const WellMassReport rep = well_mass_report(pair, 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(rep.p_hat[i] + rep.P_hat[i] - 1.0 / 3.0) <= 1e-6);

    // P constant, p proportional to exp(-kappa psi / sigma)
    double pmin = pair.P[0], pmax = pair.P[0];
    for (double v : pair.P.values) {
        pmin = std::min(pmin, v);
        pmax = std::max(pmax, v);
    }
    CHECK(pmax - pmin <= 1e-8);

    const Grid& g = params.grid();
    double dev = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double boltz = pair.p[0] * std::exp(-params.kappa *
                                                  (params.potential.samples[i] - params.potential.samples[0]) /
                                                  params.sigma);
        dev = std::max(dev, std::abs(pair.p[i] - boltz));
    }
    CHECK(dev <= 1e-8 * pair.p[0]);

    CHECK(std::abs(total_mass(pair) - 1.0) <= 1e-10);
    CHECK(std::abs(diag.dropped_row_residual) <= 1e-8);
    CHECK(rep.chain_p == false);
}

TEST_CASE("symmetric instance: reflection symmetry of the pair") {
    RatchetParams params = fixtures::symmetric_fixture(2001);
    const DensityPair pair = solve_stationary(params);
    const int n = params.grid().n;
    double dev_p = 0.0, dev_P = 0.0;
    for (int i = 0; i < n; ++i) {
        dev_p = std::max(dev_p, std::abs(pair.p[i] - pair.p[n - 1 - i]));
        dev_P = std::max(dev_P, std::abs(pair.P[i] - pair.P[n - 1 - i]));
    }
    CHECK(dev_p <= 1e-8);
    CHECK(dev_P <= 1e-8);
}

TEST_CASE("transport fixture: strict chains at the frozen (sigma, kappa)") {
    RatchetParams params = fixtures::transport_fixture(2001);
    const DensityPair pair = solve_stationary(params);
    const WellMassReport rep = well_mass_report(pair, 2);
    CHECK(rep.chain_p);
    CHECK(rep.chain_P);
    CHECK(rep.shift_P_ok);
    CHECK(rep.min_margin > 1e-3);  // regression guard: prototype margin was ~3e-2
    CHECK(std::abs(rep.p_hat[0] + rep.p_hat[1] + rep.P_hat[0] + rep.P_hat[1] - 1.0) <= 1e-9);
}

TEST_CASE("reflection equivariance reverses the chains") {
    RatchetParams params = fixtures::transport_fixture(1201);
    const DensityPair fwd = solve_stationary(params);
    const DensityPair bwd = solve_stationary(reflect_params(params));
    const int n = params.grid().n;
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
        dev = std::max(dev, std::abs(bwd.p[i] - fwd.p[n - 1 - i]));
        dev = std::max(dev, std::abs(bwd.P[i] - fwd.P[n - 1 - i]));
    }
    CHECK(dev <= 1e-8);
    const WellMassReport rep = well_mass_report(bwd, 2);
    CHECK_FALSE(rep.chain_p);
    CHECK(rep.p_hat[1] > rep.p_hat[0]);
}

TEST_CASE("nonnegativity across the sweep corners") {
    RatchetParams params = fixtures::transport_fixture(1201);
    for (const auto& [s, k] : std::vector<std::pair<double, double>>{
             {1e-1, 1.0}, {1e-4, 200.0}, {1e-4, 1.0}, {1e-1, 200.0}}) {
        params.sigma = s;
        params.kappa = k;
        StationaryDiagnostics diag;
        const DensityPair pair = solve_stationary(params, &diag);
        CHECK(diag.min_p >= -1e-10);
        CHECK(diag.min_P >= -1e-10);
        CHECK(std::abs(total_mass(pair) - 1.0) <= 1e-9);
    }
}

TEST_CASE("collaborative variant") {
    SUBCASE("flat second potential reduces to the plain solver") {
        RatchetParams plain = fixtures::transport_fixture(1201);
        RatchetParams collab = plain;
        collab.psi_alt = make_flat_potential(2, plain.potential.samples.grid, 0.0);
        const DensityPair a = solve_stationary(plain);
        const DensityPair b = solve_collaborative(collab);
        CHECK(max_abs_diff(a.p, b.p) <= 1e-10);
        CHECK(max_abs_diff(a.P, b.P) <= 1e-10);
    }

    SUBCASE("psi_alt = psi, nu = eta, sigma = varsigma gives p = P") {
        GridPtr g = fixtures::unit_grid(1201, 2);
        Potential pot = make_smoothed_sawtooth(2, 0.15, 1.0, g);
        RateProfile nu = make_peaked_rate(2, 0.35, 0.05, 0.05, 1.0, g);
        RatchetParams params =
            make_params(0.01, 0.01, 3.0, pot, nu, nu, pot);
        const DensityPair pair = solve_collaborative(params);
        CHECK(max_abs_diff(pair.p, pair.P) <= 1e-8);
    }

    SUBCASE("generic smooth second potential conserves mass") {
        GridPtr g = fixtures::unit_grid(1201, 2);
        Potential pot = make_smoothed_sawtooth(2, 0.15, 1.0, g);
        Potential alt = make_smoothed_sawtooth(2, 0.3, 0.5, g);
        RateProfile nu = make_peaked_rate(2, 0.35, 0.05, 0.05, 1.0, g);
        RateProfile eta = make_constant_rate(2, 1.0, g);
        RatchetParams params = make_params(0.01, 0.5, 3.0, pot, nu, eta, alt);
        const DensityPair pair = solve_collaborative(params);
        CHECK(std::abs(total_mass(pair) - 1.0) <= 1e-10);
    }

    SUBCASE("psi_alt routing is enforced") {
        RatchetParams plain = fixtures::transport_fixture(801);
        CHECK_THROWS_AS(solve_collaborative(plain), std::invalid_argument);
        RatchetParams collab = plain;
        collab.psi_alt = make_flat_potential(2, plain.potential.samples.grid, 0.0);
        CHECK_THROWS_AS(solve_stationary(collab), std::invalid_argument);
    }
}

TEST_CASE("renormalize: balance identity and unit weighted integrals") {
    RatchetParams params = fixtures::transport_fixture(1201);
    const DensityPair pair = solve_stationary(params);
    const DensityPair renorm = renormalize(pair, params);
    CHECK(renorm.normalization_mode == NormalizationMode::kRenormalized);
    CHECK(integrate_product(params.eta.samples, renorm.p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_product(params.nu.samples, renorm.P) == doctest::Approx(1.0).epsilon(1e-9));

    SUBCASE("imbalance on the symmetric instance is machine-small") {
        RatchetParams sym = fixtures::symmetric_fixture(1201);
        const DensityPair sp = solve_stationary(sym);
        const double imbalance = integrate_product(sym.eta.samples, sp.p) -
                                 integrate_product(sym.nu.samples, sp.P);
        CHECK(std::abs(imbalance) <= 1e-10);
    }

    SUBCASE("renormalized conjugate pair keeps P constant") {
        RatchetParams conj = fixtures::conjugate_fixture(1201, 3);
        const DensityPair renc = renormalize(solve_stationary(conj), conj);
        double lo = renc.P[0], hi = renc.P[0];
        for (double v : renc.P.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi - lo <= 1e-8);
    }

    SUBCASE("double renormalization is rejected") {
        CHECK_THROWS_AS(renormalize(renorm, params), std::invalid_argument);
    }
}

TEST_CASE("transport verdict") {
    GridPtr g = fixtures::unit_grid(2001, 2);
    RateProfile eta = make_constant_rate(2, 1.0, g);

    SUBCASE("constant rate, a = 0.2 < S = 0.25: Left") {
        Potential pot = make_smoothed_sawtooth(2, 0.2, 1.0, g);
        RatchetParams p = make_params(1e-3, 1.0, 20.0, pot, make_constant_rate(2, 1.0, g), eta);
        const TransportVerdict v = transport_verdict(p);
        CHECK(v.direction == Direction::kLeft);
        CHECK(v.S == doctest::Approx(0.25).epsilon(1e-6));
    }

    SUBCASE("symmetric rate at a = 1/(2k): Indeterminate") {
        RatchetParams p = fixtures::symmetric_fixture(2001);
        const TransportVerdict v = transport_verdict(p);
        CHECK(v.direction == Direction::kIndeterminate);
        CHECK(std::abs(v.margin) <= 2.0 * p.grid().h);
    }

    SUBCASE("peaked rate at 0.35 with a = 0.4: Right") {
        Potential pot = make_smoothed_sawtooth(2, 0.4, 1.0, g);
        RateProfile nu = make_peaked_rate(2, 0.35, 0.05, 0.05, 1.0, g);
        RatchetParams p = make_params(1e-3, 1.0, 20.0, pot, nu, eta);
        const TransportVerdict v = transport_verdict(p);
        CHECK(v.direction == Direction::kRight);
    }
}

TEST_CASE("verdict agrees with the chain direction on the fixture") {
    RatchetParams params = fixtures::transport_fixture(2001);
    const TransportVerdict v = transport_verdict(params);
    const WellMassReport rep = well_mass_report(solve_stationary(params), 2);
    CHECK(v.direction == Direction::kLeft);
    CHECK(rep.chain_p);
    CHECK(rep.chain_P);
}
