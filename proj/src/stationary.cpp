#include "ratchet/stationary.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ratchet/banded.hpp"
#include "ratchet/diffusive_mean.hpp"
#include "ratchet/flux.hpp"

namespace ratchet {

namespace {

constexpr double kStrictSlack = 1e-9;
constexpr double kNegativityTol = 1e-10;

std::vector<double> dense_normalization_row(const Grid& g) {
    const std::vector<double> w = trapezoid_weights(g);
    std::vector<double> row(static_cast<std::size_t>(2 * g.n), 0.0);
    for (int i = 0; i < g.n; ++i) {
        row[static_cast<std::size_t>(2 * i)] = w[static_cast<std::size_t>(i)];
        row[static_cast<std::size_t>(2 * i + 1)] = w[static_cast<std::size_t>(i)];
    }
    return row;
}

DensityPair solve_coupled(const RatchetParams& params, bool collaborative,
                          StationaryDiagnostics* diag) {
    validate_params(params);
    const Grid& g = params.grid();
    const int n = g.n;

    const PentaMatrix A = assemble_coupled_operator(params, collaborative);

    // The 2n homogeneous equations are redundant (their weighted sum is zero),
    // so the last detached-density row is traded for the normalization.
    std::vector<double> rhs(static_cast<std::size_t>(2 * n), 0.0);
    rhs.back() = 1.0;
    const std::vector<double> norm_row = dense_normalization_row(g);
    const std::vector<double> u = solve_penta_bordered(A, norm_row, rhs);

    // Residual of every original equation, including the dropped one.
    const std::vector<double> Au = A.multiply(u);
    double scale = 0.0, umax = 0.0;
    for (int r = 0; r < 2 * n; ++r) {
        double row = 0.0;
        for (int d = 0; d < 5; ++d) row += std::abs(A.band[static_cast<std::size_t>(d)][static_cast<std::size_t>(r)]);
        scale = std::max(scale, row);
        umax = std::max(umax, std::abs(u[static_cast<std::size_t>(r)]));
    }
    double rmax = 0.0;
    for (int r = 0; r + 1 < 2 * n; ++r) rmax = std::max(rmax, std::abs(Au[static_cast<std::size_t>(r)]));
    const double rel = rmax / std::max(scale * umax, 1e-300);
    const double dropped = Au.back();
    if (rel > 1e-10)
        throw std::runtime_error("solve_stationary: relative residual " + std::to_string(rel) +
                                 " exceeds 1e-10");

    DensityPair pair;
    pair.normalization_mode = NormalizationMode::kTotalMass;
    pair.p.grid = params.potential.samples.grid;
    pair.P.grid = params.potential.samples.grid;
    pair.p.values.resize(static_cast<std::size_t>(n));
    pair.P.values.resize(static_cast<std::size_t>(n));
    double min_p = std::numeric_limits<double>::infinity();
    double min_P = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        pair.p[i] = u[static_cast<std::size_t>(2 * i)];
        pair.P[i] = u[static_cast<std::size_t>(2 * i + 1)];
        min_p = std::min(min_p, pair.p[i]);
        min_P = std::min(min_P, pair.P[i]);
    }
    if (min_p < -kNegativityTol || min_P < -kNegativityTol) {
        int worst = 0;
        double v = 0.0;
        for (int i = 0; i < n; ++i) {
            const double m = std::min(pair.p[i], pair.P[i]);
            if (m < v) {
                v = m;
                worst = i;
            }
        }
        throw std::runtime_error("solve_stationary: density negative beyond tolerance at node " +
                                 std::to_string(worst) + " (value " + std::to_string(v) +
                                 "); the grid under-resolves this parameter regime");
    }

    if (diag) {
        diag->dropped_row_residual = dropped;
        diag->max_relative_residual = rel;
        diag->min_p = min_p;
        diag->min_P = min_P;
    }
    return pair;
}

}  // namespace

DensityPair solve_stationary(const RatchetParams& params, StationaryDiagnostics* diag) {
    if (params.psi_alt)
        throw std::invalid_argument("solve_stationary: psi_alt present; use solve_collaborative");
    return solve_coupled(params, false, diag);
}

DensityPair solve_collaborative(const RatchetParams& params, StationaryDiagnostics* diag) {
    if (!params.psi_alt)
        throw std::invalid_argument("solve_collaborative: psi_alt missing");
    return solve_coupled(params, true, diag);
}

DensityPair renormalize(const DensityPair& pair, const RatchetParams& params) {
    if (pair.normalization_mode != NormalizationMode::kTotalMass)
        throw std::invalid_argument("renormalize: pair is not in total-mass normalization");
    const double Ieta = integrate_product(params.eta.samples, pair.p);
    const double Inu = integrate_product(params.nu.samples, pair.P);
    if (std::abs(Ieta - Inu) > 1e-8)
        throw std::runtime_error("renormalize: balance integral(eta p - nu P) = " +
                                 std::to_string(Ieta - Inu) + " violates the solver identity");
    const double scale = 2.0 / (Ieta + Inu);
    DensityPair out = pair;
    out.normalization_mode = NormalizationMode::kRenormalized;
    for (double& v : out.p.values) v *= scale;
    for (double& v : out.P.values) v *= scale;
    return out;
}

WellMassReport well_mass_report(const DensityPair& pair, int k) {
    WellMassReport rep;
    rep.p_hat = well_integrals(pair.p, k);
    rep.P_hat = well_integrals(pair.P, k);

    double min_margin = std::numeric_limits<double>::infinity();
    bool chain_p = true, chain_P = true;
    for (int i = 0; i + 1 < k; ++i) {
        const double dp = rep.p_hat[static_cast<std::size_t>(i)] - rep.p_hat[static_cast<std::size_t>(i + 1)];
        const double dP = rep.P_hat[static_cast<std::size_t>(i)] - rep.P_hat[static_cast<std::size_t>(i + 1)];
        chain_p = chain_p && dp > kStrictSlack;
        chain_P = chain_P && dP > kStrictSlack;
        min_margin = std::min({min_margin, dp, dP});
    }
    const int n = pair.P.n();
    const int m = (n - 1) / k;
    bool shift_ok = true;
    for (int j = 0; j + m < n; ++j) {
        const double d = pair.P[j] - pair.P[j + m];
        shift_ok = shift_ok && d > kStrictSlack;
        min_margin = std::min(min_margin, d);
    }
    rep.chain_p = chain_p;
    rep.chain_P = chain_P;
    rep.shift_P_ok = shift_ok;
    rep.min_margin = min_margin;
    return rep;
}

std::string to_string(Direction d) {
    switch (d) {
        case Direction::kLeft: return "Left";
        case Direction::kRight: return "Right";
        default: return "Indeterminate";
    }
}

TransportVerdict transport_verdict(const RatchetParams& params) {
    const Grid& g = params.grid();
    const int k = params.k();
    const int m = (g.n - 1) / k;

    // nu restricted to the first well [0, 1/k].
    GridFn phi;
    phi.grid = make_grid(0.0, 1.0 / k, m + 1);
    phi.values.assign(params.nu.samples.values.begin(),
                      params.nu.samples.values.begin() + m + 1);
    const DiffusiveMeanResult mean = diffusive_mean(phi, params.varsigma);

    TransportVerdict v;
    v.S = mean.s;
    v.a = params.potential.a;
    v.margin = v.S - v.a;
    if (v.margin > 2.0 * g.h)
        v.direction = Direction::kLeft;
    else if (v.margin < -2.0 * g.h)
        v.direction = Direction::kRight;
    else
        v.direction = Direction::kIndeterminate;
    return v;
}

}  // namespace ratchet
