#include "ratchet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ratchet {

GridPtr make_grid(double A, double B, int n) {
    if (n < 3) throw std::invalid_argument("grid: node count must be >= 3, got " + std::to_string(n));
    if (!(B > A)) throw std::invalid_argument("grid: B must exceed A");
    auto g = std::make_shared<Grid>();
    g->n = n;
    g->A = A;
    g->B = B;
    g->h = (B - A) / (n - 1);
    g->nodes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g->nodes[static_cast<std::size_t>(i)] = A + i * g->h;
    g->nodes.back() = B;  // avoid roundoff at the far end
    return g;
}

int grid_size_for_k(int n_request, int k) {
    if (k < 1) throw std::invalid_argument("grid_size_for_k: k must be >= 1");
    if (n_request < 3) n_request = 3;
    const int m = 2 * k;
    const int cells = ((n_request - 2 + m) / m) * m;  // round (n_request - 1) up to a multiple of m
    return cells + 1;
}

int nearest_node(const Grid& grid, double x) {
    const double t = (x - grid.A) / grid.h;
    const int i = static_cast<int>(std::lround(t));
    if (i < 0 || i >= grid.n || std::abs(x - grid.node(std::clamp(i, 0, grid.n - 1))) > 0.5 * grid.h + 1e-12)
        throw std::invalid_argument("nearest_node: position outside grid");
    return i;
}

bool same_grid(const Grid& a, const Grid& b) {
    return a.n == b.n && std::abs(a.A - b.A) < 1e-12 && std::abs(a.B - b.B) < 1e-12;
}

GridFn constant_fn(GridPtr grid, double c) {
    GridFn f;
    f.values.assign(static_cast<std::size_t>(grid->n), c);
    f.grid = std::move(grid);
    return f;
}

void validate_grid_fn(const GridFn& f, const char* what) {
    if (!f.grid) throw std::invalid_argument(std::string(what) + ": missing grid");
    if (static_cast<int>(f.values.size()) != f.grid->n)
        throw std::invalid_argument(std::string(what) + ": value count does not match grid");
    for (double v : f.values)
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

std::vector<double> trapezoid_weights(const Grid& grid) {
    std::vector<double> w(static_cast<std::size_t>(grid.n), grid.h);
    w.front() = 0.5 * grid.h;
    w.back() = 0.5 * grid.h;
    return w;
}

double integrate(const GridFn& f) {
    const int n = f.n();
    const double h = f.grid->h;
    double acc = 0.5 * (f[0] + f[n - 1]);
    for (int i = 1; i < n - 1; ++i) acc += f[i];
    return acc * h;
}

double integrate_product(const GridFn& f, const GridFn& g) {
    const int n = f.n();
    const double h = f.grid->h;
    double acc = 0.5 * (f[0] * g[0] + f[n - 1] * g[n - 1]);
    for (int i = 1; i < n - 1; ++i) acc += f[i] * g[i];
    return acc * h;
}

GridFn reflect(const GridFn& f) {
    GridFn r = f;
    std::reverse(r.values.begin(), r.values.end());
    return r;
}

double max_abs_diff(const GridFn& f, const GridFn& g) {
    double m = 0.0;
    for (int i = 0; i < f.n(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
}

double interpolate(const GridFn& f, double x) {
    const Grid& g = *f.grid;
    double t = (x - g.A) / g.h;
    t = std::clamp(t, 0.0, static_cast<double>(g.n - 1));
    const int j = std::min(static_cast<int>(t), g.n - 2);
    const double frac = t - j;
    return f[j] * (1.0 - frac) + f[j + 1] * frac;
}

}  // namespace ratchet
