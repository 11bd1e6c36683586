#include "ratchet/flux.hpp"

#include <cmath>

namespace ratchet {

double bernoulli(double z) {
    if (std::abs(z) < 1e-10) return 1.0 - 0.5 * z;
    const double e = std::expm1(z);
    if (std::isinf(e)) return 0.0;
    return z / e;
}

namespace {

/// Adds the finite-volume divergence of the exponential-fitted flux
///   F = diff * u_x + drift_increments * u
/// to the rows of `A` at stride-2 positions starting from `offset`
/// (offset 0 = attached block, 1 = detached block).  `pot` may be null for
/// a pure-diffusion block.
void add_drift_diffusion_block(PentaMatrix& A, const Grid& g, double diff, const GridFn* pot,
                               double kappa, int offset) {
    const int n = g.n;
    const double h = g.h;
    const std::vector<double> w = trapezoid_weights(g);
    for (int i = 0; i < n; ++i) {
        const int r = 2 * i + offset;
        const double inv = 1.0 / w[static_cast<std::size_t>(i)];
        if (i < n - 1) {
            const double z = pot ? kappa * ((*pot)[i + 1] - (*pot)[i]) / diff : 0.0;
            const double c = diff / h * inv;
            A.at(r, r + 2) += -c * bernoulli(-z);
            A.at(r, r) += c * bernoulli(z);
        }
        if (i > 0) {
            const double z = pot ? kappa * ((*pot)[i] - (*pot)[i - 1]) / diff : 0.0;
            const double c = diff / h * inv;
            A.at(r, r - 2) += -c * bernoulli(z);
            A.at(r, r) += c * bernoulli(-z);
        }
    }
}

}  // namespace

PentaMatrix assemble_coupled_operator(const RatchetParams& params, bool collaborative) {
    const Grid& g = params.grid();
    const int n = g.n;
    PentaMatrix A(2 * n);

    add_drift_diffusion_block(A, g, params.sigma, &params.potential.samples, params.kappa, 0);
    const GridFn* alt = collaborative ? &params.psi_alt->samples : nullptr;
    add_drift_diffusion_block(A, g, params.varsigma, alt, params.kappa, 1);

    for (int i = 0; i < n; ++i) {
        const double nu = params.nu.samples[i];
        const double eta = params.eta.samples[i];
        A.at(2 * i, 2 * i) += eta;
        A.at(2 * i, 2 * i + 1) += -nu;
        A.at(2 * i + 1, 2 * i + 1) += nu;
        A.at(2 * i + 1, 2 * i) += -eta;
    }
    return A;
}

TridiagonalSystem assemble_flashing_operator(const Potential& potential, double sigma, bool on) {
    const Grid& g = *potential.samples.grid;
    const int n = g.n;
    const double h = g.h;
    const std::vector<double> w = trapezoid_weights(g);
    const double drive = on ? 1.0 : 0.0;

    TridiagonalSystem sys;
    sys.diag.assign(static_cast<std::size_t>(n), 0.0);
    sys.sub.assign(static_cast<std::size_t>(n - 1), 0.0);
    sys.super.assign(static_cast<std::size_t>(n - 1), 0.0);
    sys.rhs.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double inv = 1.0 / w[static_cast<std::size_t>(i)];
        if (i < n - 1) {
            const double z = drive * (potential.samples[i + 1] - potential.samples[i]) / sigma;
            const double c = sigma / h * inv;
            sys.super[static_cast<std::size_t>(i)] += -c * bernoulli(-z);
            sys.diag[static_cast<std::size_t>(i)] += c * bernoulli(z);
        }
        if (i > 0) {
            const double z = drive * (potential.samples[i] - potential.samples[i - 1]) / sigma;
            const double c = sigma / h * inv;
            sys.sub[static_cast<std::size_t>(i - 1)] += -c * bernoulli(z);
            sys.diag[static_cast<std::size_t>(i)] += c * bernoulli(-z);
        }
    }
    return sys;
}

}  // namespace ratchet
