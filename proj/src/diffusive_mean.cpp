#include "ratchet/diffusive_mean.hpp"

#include <cmath>
#include <stdexcept>

#include "ratchet/sturm_liouville.hpp"

namespace ratchet {

GridFn diffusive_mean_profile(const GridFn& phi, double varsigma) {
    SLOperator op = make_sl_operator(phi, varsigma);
    const int n = op.grid().n;
    // G(A,x) = G(x,A) by self-adjointness, so one solve per endpoint covers
    // every node.
    const GridFn gA = green_function(op, 0);
    const GridFn gB = green_function(op, n - 1);
    GridFn g;
    g.grid = phi.grid;
    g.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = gA[i] - gB[i];
    return g;
}

DiffusiveMeanResult diffusive_mean(const GridFn& phi, double varsigma) {
    const GridFn g = diffusive_mean_profile(phi, varsigma);
    const Grid& grid = *g.grid;
    const int n = grid.n;
    if (!(g[0] > 0.0) || !(g[n - 1] < 0.0))
        throw std::runtime_error("diffusive_mean: g does not change sign across the interval");

    // g is strictly decreasing; bisect the node array for the bracketing cell.
    int lo = 0, hi = n - 1, iters = 0;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (g[mid] > 0.0)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }
    if (!(g[lo] > 0.0 && g[hi] <= 0.0))
        throw std::runtime_error("diffusive_mean: bracketing failed (non-monotone g)");

    const double t = g[lo] / (g[lo] - g[hi]);
    DiffusiveMeanResult out;
    out.s = grid.node(lo) + t * grid.h;
    out.g_residual = std::abs(g[lo] + t * (g[hi] - g[lo]));
    out.iterations = iters;
    return out;
}

std::pair<DiffusiveMeanResult, DiffusiveMeanResult> reflection_check(const GridFn& phi,
                                                                     double varsigma) {
    return {diffusive_mean(phi, varsigma), diffusive_mean(reflect(phi), varsigma)};
}

}  // namespace ratchet
