#pragma once

#include <memory>
#include <vector>

namespace ratchet {

/// Uniform grid over a closed interval [A, B].
struct Grid {
    int n = 0;                  // node count, >= 3
    double A = 0.0;
    double B = 1.0;
    double h = 0.0;             // spacing (B - A) / (n - 1)
    std::vector<double> nodes;  // ascending, nodes[0] == A, nodes[n-1] == B

    double node(int i) const { return nodes[static_cast<std::size_t>(i)]; }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a uniform grid; throws std::invalid_argument on n < 3 or B <= A.
GridPtr make_grid(double A, double B, int n);

/// Smallest node count >= n_request with (n - 1) divisible by 2k, so that all
/// well boundaries and well midpoints land on nodes.
int grid_size_for_k(int n_request, int k);

/// Index of the node nearest to x; throws if x lies outside [A, B] by more
/// than half a cell.
int nearest_node(const Grid& grid, double x);

/// True if the two grids describe the same discretization (n, A, B equal to
/// roundoff).
bool same_grid(const Grid& a, const Grid& b);

/// A function sampled at the nodes of a grid.
struct GridFn {
    GridPtr grid;
    std::vector<double> values;

    int n() const { return grid->n; }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
};

/// GridFn with every value equal to c.
GridFn constant_fn(GridPtr grid, double c);

/// Checks finiteness and length consistency; throws on violation.
void validate_grid_fn(const GridFn& f, const char* what);

/// Trapezoidal weights: h at interior nodes, h/2 at the two ends.
std::vector<double> trapezoid_weights(const Grid& grid);

/// Trapezoidal integral of f over its whole grid.
double integrate(const GridFn& f);

/// Trapezoidal integral of the nodewise product f*g (shared grid).
double integrate_product(const GridFn& f, const GridFn& g);

/// Nodewise reversal: r(x) = f(A + B - x) on the same grid.
GridFn reflect(const GridFn& f);

/// max_i |f_i - g_i| for functions on the same grid.
double max_abs_diff(const GridFn& f, const GridFn& g);

/// Linear interpolation of a sampled function at position x (clamped to [A,B]).
double interpolate(const GridFn& f, double x);

}  // namespace ratchet
