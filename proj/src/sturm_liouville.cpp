#include "ratchet/sturm_liouville.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ratchet {

SLOperator make_sl_operator(GridFn phi, double varsigma) {
    validate_grid_fn(phi, "SL operator coefficient");
    if (!(varsigma > 0.0)) throw std::invalid_argument("SL operator: varsigma must be positive");
    for (double v : phi.values)
        if (!(v > 0.0))
            throw std::invalid_argument("SL operator: zeroth-order coefficient must be positive");
    return SLOperator{std::move(phi), varsigma};
}

TridiagonalSystem assemble_sl(const SLOperator& op, const std::vector<double>& rhs) {
    const Grid& g = op.grid();
    const int n = g.n;
    const double c = op.varsigma / g.h;
    const std::vector<double> w = trapezoid_weights(g);

    TridiagonalSystem sys;
    sys.diag.assign(static_cast<std::size_t>(n), 0.0);
    sys.sub.assign(static_cast<std::size_t>(n - 1), 0.0);
    sys.super.assign(static_cast<std::size_t>(n - 1), 0.0);
    sys.rhs = rhs.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : rhs;

    for (int i = 0; i < n; ++i) {
        double d = op.phi[i];
        if (i > 0) {
            d += c / w[static_cast<std::size_t>(i)];
            sys.sub[static_cast<std::size_t>(i - 1)] = -c / w[static_cast<std::size_t>(i)];
        }
        if (i < n - 1) {
            d += c / w[static_cast<std::size_t>(i)];
            sys.super[static_cast<std::size_t>(i)] = -c / w[static_cast<std::size_t>(i)];
        }
        sys.diag[static_cast<std::size_t>(i)] = d;
    }
    return sys;
}

namespace {

double relative_residual(const TridiagonalSystem& sys, const std::vector<double>& u) {
    const int n = sys.size();
    double rmax = 0.0, scale = 0.0, umax = 0.0, bmax = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = sys.diag[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
        double row = std::abs(sys.diag[static_cast<std::size_t>(i)]);
        if (i > 0) {
            r += sys.sub[static_cast<std::size_t>(i - 1)] * u[static_cast<std::size_t>(i - 1)];
            row += std::abs(sys.sub[static_cast<std::size_t>(i - 1)]);
        }
        if (i < n - 1) {
            r += sys.super[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i + 1)];
            row += std::abs(sys.super[static_cast<std::size_t>(i)]);
        }
        rmax = std::max(rmax, std::abs(r - sys.rhs[static_cast<std::size_t>(i)]));
        scale = std::max(scale, row);
        umax = std::max(umax, std::abs(u[static_cast<std::size_t>(i)]));
        bmax = std::max(bmax, std::abs(sys.rhs[static_cast<std::size_t>(i)]));
    }
    return rmax / std::max(scale * umax + bmax, 1e-300);
}

}  // namespace

GridFn solve_sl_neumann(const SLOperator& op, const GridFn& rhs) {
    if (!same_grid(op.grid(), *rhs.grid))
        throw std::invalid_argument("solve_sl_neumann: rhs grid mismatch");
    TridiagonalSystem sys = assemble_sl(op, rhs.values);
    std::vector<double> u = solve_tridiagonal(sys);
    const double rel = relative_residual(sys, u);
    if (rel > 1e-12)
        throw std::runtime_error("solve_sl_neumann: discrete residual " + std::to_string(rel) +
                                 " exceeds tolerance");
    GridFn out;
    out.grid = rhs.grid;
    out.values = std::move(u);
    return out;
}

GridFn green_function(const SLOperator& op, int iy) {
    const Grid& g = op.grid();
    if (iy < 0 || iy >= g.n) throw std::invalid_argument("green_function: node index out of range");
    const std::vector<double> w = trapezoid_weights(g);
    GridFn rhs;
    rhs.grid = op.phi.grid;
    rhs.values.assign(static_cast<std::size_t>(g.n), 0.0);
    rhs[iy] = 1.0 / w[static_cast<std::size_t>(iy)];
    GridFn G = solve_sl_neumann(op, rhs);
    for (double v : G.values)
        if (!(v > 0.0)) throw std::runtime_error("green_function: non-positive value");
    return G;
}

GridFn green_function_at(const SLOperator& op, double y) {
    const Grid& g = op.grid();
    const int iy = nearest_node(g, y);
    if (std::abs(g.node(iy) - y) > 1e-12)
        throw std::invalid_argument("green_function: y = " + std::to_string(y) +
                                    " is not a grid node");
    return green_function(op, iy);
}

}  // namespace ratchet
