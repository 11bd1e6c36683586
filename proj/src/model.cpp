#include "ratchet/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ratchet {

namespace {

constexpr double kPeriodicityTol = 1e-10;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void require_unit_interval(const Grid& g, const char* who) {
    if (std::abs(g.A) > 1e-12 || std::abs(g.B - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": grid must cover [0,1]");
}

int period_cells(const Grid& g, int k, const char* who) {
    const int cells = g.n - 1;
    if (cells % k != 0)
        throw std::invalid_argument(std::string(who) + ": grid cells (" + std::to_string(cells) +
                                    ") not divisible by k = " + std::to_string(k));
    return cells / k;
}

}  // namespace

Potential make_smoothed_sawtooth(int k, double a, double depth, GridPtr grid) {
    require(k > 1, "potential: tooth count k must exceed 1, got " + std::to_string(k));
    require(depth > 0.0, "potential: depth must be positive");
    require_unit_interval(*grid, "potential");
    const double per = 1.0 / k;
    require(a > 0.0 && a < per, "potential: minimum offset a must lie in (0, 1/k)");
    const int m = period_cells(*grid, k, "potential");
    require(m % 2 == 0, "potential: grid cells per period must be even (n-1 divisible by 2k)");

    const double h = grid->h;
    const int ia = static_cast<int>(std::lround(a / h));
    require(ia >= 1 && ia <= m - 1, "potential: a snaps onto a well boundary; refine the grid");
    const double a_snapped = ia * h;

    // One tooth: descending Hermite arc on [0, a], ascending on [a, 1/k].
    std::vector<double> tooth(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) {
        const double t = j * h;
        double v;
        if (j <= ia) {
            const double s = t / a_snapped;
            v = depth * (2.0 * s * s * s - 3.0 * s * s + 1.0);
        } else {
            const double s = (t - a_snapped) / (per - a_snapped);
            v = depth * (3.0 * s * s - 2.0 * s * s * s);
        }
        tooth[static_cast<std::size_t>(j)] = v;
    }

    Potential p;
    p.k = k;
    p.a = a_snapped;
    p.samples.grid = grid;
    p.samples.values.resize(static_cast<std::size_t>(grid->n));
    for (int i = 0; i < grid->n; ++i)
        p.samples.values[static_cast<std::size_t>(i)] = tooth[static_cast<std::size_t>(i % m)];
    p.samples.values.back() = tooth[static_cast<std::size_t>(m)];
    validate_potential(p);
    return p;
}

Potential make_flat_potential(int k, GridPtr grid, double level) {
    require(k >= 1, "flat potential: k must be >= 1");
    require_unit_interval(*grid, "flat potential");
    Potential p;
    p.k = k;
    p.a = 0.5 / k;
    p.samples = constant_fn(std::move(grid), level);
    return p;
}

RateProfile make_peaked_rate(int k, double s_star, double width, double base, double mass,
                             GridPtr grid) {
    require(k >= 1, "rate: period count k must be >= 1");
    require(width > 0.0, "rate: width must be positive");
    require(base > 0.0, "rate: base level must be positive");
    require(mass > 0.0, "rate: bump mass must be positive");
    require_unit_interval(*grid, "rate");
    const double per = 1.0 / k;
    require(s_star > 0.0 && s_star < per, "rate: site offset s_star must lie in (0, 1/k)");
    const int m = period_cells(*grid, k, "rate");

    const double h = grid->h;
    const double s_snapped = std::lround(s_star / h) * h;
    const int n = grid->n;

    // Sum of periodic Gaussian images, truncated at 6*width.
    std::vector<double> bump(static_cast<std::size_t>(n), 0.0);
    const int jspan = static_cast<int>(std::ceil(6.0 * width / per)) + 1;
    for (int img = -jspan; img <= k + jspan; ++img) {
        const double c = s_snapped + img * per;
        for (int i = 0; i < n; ++i) {
            const double d = grid->node(i) - c;
            if (std::abs(d) <= 6.0 * width)
                bump[static_cast<std::size_t>(i)] += std::exp(-0.5 * d * d / (width * width));
        }
    }

    // Renormalize so each period carries bump mass `mass` (discrete trapezoid).
    double raw = 0.5 * (bump[0] + bump[static_cast<std::size_t>(m)]);
    for (int i = 1; i < m; ++i) raw += bump[static_cast<std::size_t>(i)];
    raw *= h;
    require(raw > 0.0, "rate: bump integral vanished");
    const double scale = mass / raw;

    RateProfile r;
    r.k = k;
    r.samples.grid = std::move(grid);
    r.samples.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        r.samples.values[static_cast<std::size_t>(i)] = base + scale * bump[static_cast<std::size_t>(i)];
    validate_rate_profile(r);
    return r;
}

RateProfile make_constant_rate(int k, double value, GridPtr grid) {
    require(k >= 1, "rate: period count k must be >= 1");
    require(value > 0.0, "rate: constant value must be positive");
    require_unit_interval(*grid, "rate");
    period_cells(*grid, k, "rate");
    RateProfile r;
    r.k = k;
    r.samples = constant_fn(std::move(grid), value);
    return r;
}

RateProfile make_conjugate_eta(const RateProfile& nu, const Potential& potential, double kappa,
                               double sigma) {
    require(kappa > 0.0 && sigma > 0.0, "conjugate eta: kappa and sigma must be positive");
    require(same_grid(*nu.samples.grid, *potential.samples.grid) && nu.k == potential.k,
            "conjugate eta: nu and potential must share grid and k");
    RateProfile eta;
    eta.k = nu.k;
    eta.samples.grid = nu.samples.grid;
    eta.samples.values.resize(nu.samples.values.size());
    for (int i = 0; i < nu.samples.n(); ++i)
        eta.samples.values[static_cast<std::size_t>(i)] =
            nu.samples[i] * std::exp(kappa * potential.samples[i] / sigma);
    validate_rate_profile(eta);
    return eta;
}

void validate_potential(const Potential& p) {
    validate_grid_fn(p.samples, "potential");
    require(p.k > 1, "potential: k must exceed 1");
    const Grid& g = *p.samples.grid;
    require_unit_interval(g, "potential");
    const int m = period_cells(g, p.k, "potential");
    const double h = g.h;
    const double per = 1.0 / p.k;
    const int ia = static_cast<int>(std::lround(p.a / h));
    require(std::abs(p.a - ia * h) < 1e-12 && ia >= 1 && ia <= m - 1,
            "potential: a must be an interior node of each period");

    // 1/k-periodicity of the samples.
    for (int i = 0; i + m < g.n; ++i)
        require(std::abs(p.samples[i] - p.samples[i + m]) <= kPeriodicityTol,
                "potential: samples are not 1/k-periodic");

    // Extrema at the stated nodes; strict monotonicity between them.
    for (int tooth = 0; tooth < p.k; ++tooth) {
        const int i0 = tooth * m;
        for (int j = 0; j < ia; ++j)
            require(p.samples[i0 + j + 1] < p.samples[i0 + j],
                    "potential: descending arc is not strictly decreasing");
        for (int j = ia; j < m; ++j)
            require(p.samples[i0 + j + 1] > p.samples[i0 + j],
                    "potential: ascending arc is not strictly increasing");
    }

    // Flat extrema: the face slopes adjacent to each extremum must be
    // second-order small next to the arc's steepest face.
    const double left_len = ia * h;
    const double right_len = per - left_len;
    double steep_left = 0.0, steep_right = 0.0;
    for (int j = 0; j < ia; ++j)
        steep_left = std::max(steep_left, std::abs(p.samples[j + 1] - p.samples[j]) / h);
    for (int j = ia; j < m; ++j)
        steep_right = std::max(steep_right, std::abs(p.samples[j + 1] - p.samples[j]) / h);
    const auto face = [&](int j) { return std::abs(p.samples[j + 1] - p.samples[j]) / h; };
    require(face(0) <= 4.0 * h / left_len * steep_left,
            "potential: slope does not vanish at the maxima");
    require(face(ia - 1) <= 4.0 * h / left_len * steep_left &&
                face(ia) <= 4.0 * h / right_len * steep_right,
            "potential: slope does not vanish at the minima");
    require(face(m - 1) <= 4.0 * h / right_len * steep_right,
            "potential: slope does not vanish at the maxima");
}

void validate_rate_profile(const RateProfile& r) {
    validate_grid_fn(r.samples, "rate profile");
    require(r.k >= 1, "rate profile: k must be >= 1");
    const Grid& g = *r.samples.grid;
    require_unit_interval(g, "rate profile");
    const int m = period_cells(g, r.k, "rate profile");
    for (double v : r.samples.values)
        require(v > 0.0, "rate profile: values must be strictly positive");
    for (int i = 0; i + m < g.n; ++i)
        require(std::abs(r.samples[i] - r.samples[i + m]) <= kPeriodicityTol,
                "rate profile: samples are not 1/k-periodic");
}

void validate_params(const RatchetParams& params) {
    require(params.sigma > 0.0, "params: sigma must be positive");
    require(params.varsigma > 0.0, "params: varsigma must be positive");
    require(params.kappa > 0.0, "params: kappa must be positive");
    validate_potential(params.potential);
    validate_rate_profile(params.nu);
    validate_rate_profile(params.eta);
    const Grid& g = params.grid();
    require(same_grid(g, *params.nu.samples.grid) && same_grid(g, *params.eta.samples.grid),
            "params: potential, nu and eta must share one grid");
    require(params.potential.k == params.nu.k && params.potential.k == params.eta.k,
            "params: potential, nu and eta must share k");
    if (params.psi_alt) {
        const Potential& alt = *params.psi_alt;
        validate_grid_fn(alt.samples, "psi_alt");
        require(same_grid(g, *alt.samples.grid), "params: psi_alt must share the grid");
        require(alt.k == params.potential.k, "params: psi_alt must share k");
        const auto [lo, hi] =
            std::minmax_element(alt.samples.values.begin(), alt.samples.values.end());
        if (*hi - *lo > 1e-14) validate_potential(alt);  // flat second potential is allowed
    }
}

RatchetParams make_params(double sigma, double varsigma, double kappa, Potential potential,
                          RateProfile nu, RateProfile eta, std::optional<Potential> psi_alt) {
    RatchetParams p;
    p.sigma = sigma;
    p.varsigma = varsigma;
    p.kappa = kappa;
    p.potential = std::move(potential);
    p.nu = std::move(nu);
    p.eta = std::move(eta);
    p.psi_alt = std::move(psi_alt);
    validate_params(p);
    return p;
}

RatchetParams reflect_params(const RatchetParams& params) {
    RatchetParams r = params;
    r.potential.samples = reflect(params.potential.samples);
    r.potential.a = params.potential.tooth_width() - params.potential.a;
    r.nu.samples = reflect(params.nu.samples);
    r.eta.samples = reflect(params.eta.samples);
    if (params.psi_alt) {
        r.psi_alt->samples = reflect(params.psi_alt->samples);
        r.psi_alt->a = params.psi_alt->tooth_width() - params.psi_alt->a;
    }
    return r;
}

std::vector<double> well_integrals(const GridFn& f, int k) {
    validate_grid_fn(f, "well_integrals");
    const Grid& g = *f.grid;
    const int m = period_cells(g, k, "well_integrals");
    const double h = g.h;
    std::vector<double> out(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        const int i0 = i * m;
        double acc = 0.5 * (f[i0] + f[i0 + m]);
        for (int j = 1; j < m; ++j) acc += f[i0 + j];
        out[static_cast<std::size_t>(i)] = acc * h;
    }
    return out;
}

GridFn potential_slope(const Potential& p) {
    const Grid& g = *p.samples.grid;
    GridFn s;
    s.grid = p.samples.grid;
    s.values.assign(static_cast<std::size_t>(g.n), 0.0);
    for (int i = 1; i < g.n - 1; ++i)
        s[i] = (p.samples[i + 1] - p.samples[i - 1]) / (2.0 * g.h);
    // The ends are maxima of the potential, where the slope vanishes.
    return s;
}

GridFn slope_to_detachment_ratio(const RatchetParams& params) {
    GridFn b = potential_slope(params.potential);
    for (int i = 0; i < b.n(); ++i) b[i] /= params.eta.samples[i];
    return b;
}

}  // namespace ratchet
