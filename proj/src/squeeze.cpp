#include "ratchet/squeeze.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ratchet/sturm_liouville.hpp"

namespace ratchet {

std::vector<GridFn> green_basis(const RatchetParams& params) {
    const Grid& g = params.grid();
    const int k = params.k();
    const int m = (g.n - 1) / k;
    const int ia = static_cast<int>(std::lround(params.potential.a / g.h));
    SLOperator op = make_sl_operator(params.nu.samples, params.varsigma);
    std::vector<GridFn> basis;
    basis.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) basis.push_back(green_function(op, i * m + ia));
    return basis;
}

TransitionMatrix transition_matrix(const std::vector<GridFn>& basis, const RateProfile& nu,
                                   int k) {
    if (static_cast<int>(basis.size()) != k)
        throw std::invalid_argument("transition_matrix: basis size must equal k");
    TransitionMatrix P;
    P.k = k;
    P.entries.assign(static_cast<std::size_t>(k * k), 0.0);
    GridFn weighted;
    for (int i = 0; i < k; ++i) {
        weighted = basis[static_cast<std::size_t>(i)];
        for (int j = 0; j < weighted.n(); ++j) weighted[j] *= nu.samples[j];
        const std::vector<double> row = well_integrals(weighted, k);
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            const double v = row[static_cast<std::size_t>(j)];
            if (!(v > 0.0))
                throw std::runtime_error("transition_matrix: non-positive entry at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
            P.entries[static_cast<std::size_t>(i * k + j)] = v;
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-10)
            throw std::runtime_error("transition_matrix: row " + std::to_string(i) +
                                     " sums to " + std::to_string(sum));
    }
    return P;
}

std::vector<double> perron_weights(const TransitionMatrix& P, std::vector<double> start) {
    const int k = P.k;
    std::vector<double> xi = std::move(start);
    if (xi.empty()) xi.assign(static_cast<std::size_t>(k), 1.0 / k);
    if (static_cast<int>(xi.size()) != k)
        throw std::invalid_argument("perron_weights: start vector size mismatch");
    double norm = std::accumulate(xi.begin(), xi.end(), 0.0);
    for (double& v : xi) v /= norm;

    std::vector<double> next(static_cast<std::size_t>(k), 0.0);
    double diff = 0.0;
    for (int it = 0; it < 10000; ++it) {
        for (int j = 0; j < k; ++j) {
            double acc = 0.0;
            for (int i = 0; i < k; ++i) acc += xi[static_cast<std::size_t>(i)] * P.at(i, j);
            next[static_cast<std::size_t>(j)] = acc;
        }
        norm = std::accumulate(next.begin(), next.end(), 0.0);
        diff = 0.0;
        for (int j = 0; j < k; ++j) {
            next[static_cast<std::size_t>(j)] /= norm;
            diff = std::max(diff, std::abs(next[static_cast<std::size_t>(j)] -
                                           xi[static_cast<std::size_t>(j)]));
        }
        xi.swap(next);
        if (diff < 1e-13) return xi;
    }
    // Estimate the spectral gap from the last contraction ratio for the report.
    throw std::runtime_error("perron_weights: power iteration did not converge (last step " +
                             std::to_string(diff) + ")");
}

SqueezeSolution squeeze_solution(const RatchetParams& params) {
    const Grid& g = params.grid();
    const int k = params.k();
    const int n = g.n;
    const int m = (n - 1) / k;

    const std::vector<GridFn> basis = green_basis(params);
    const TransitionMatrix P = transition_matrix(basis, params.nu, k);

    SqueezeSolution sol;
    sol.xi = perron_weights(P);

    sol.Q.grid = params.potential.samples.grid;
    sol.Q.values.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) sol.Q[j] += sol.xi[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(i)][j];

    // Shift gaps of q = sum q_i and of Q itself.
    double gamma = std::numeric_limits<double>::infinity();
    double qgap = std::numeric_limits<double>::infinity();
    for (int j = 0; j + m < n; ++j) {
        double qj = 0.0, qjs = 0.0;
        for (int i = 0; i < k; ++i) {
            qj += basis[static_cast<std::size_t>(i)][j];
            qjs += basis[static_cast<std::size_t>(i)][j + m];
        }
        gamma = std::min(gamma, qj - qjs);
        qgap = std::min(qgap, sol.Q[j] - sol.Q[j + m]);
    }
    sol.gamma = gamma;
    sol.q_gap = qgap;

    double M = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) M = std::min(M, P.at(i, k - 1));
    sol.M = M;

    GridFn nuQ = sol.Q;
    for (int j = 0; j < n; ++j) nuQ[j] *= params.nu.samples[j];
    const std::vector<double> hats = well_integrals(nuQ, k);
    double resid = 0.0;
    for (int i = 0; i < k; ++i)
        resid = std::max(resid, std::abs(hats[static_cast<std::size_t>(i)] -
                                         sol.xi[static_cast<std::size_t>(i)]));
    sol.residual = resid;
    if (resid > 1e-8)
        throw std::runtime_error("squeeze_solution: fixed-point residual " +
                                 std::to_string(resid) + " exceeds 1e-8");
    return sol;
}

}  // namespace ratchet
