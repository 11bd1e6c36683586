#include "ratchet/particles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "ratchet/threads.hpp"

namespace ratchet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Per-particle random stream: mt19937_64 with explicit Box-Muller normals so
/// the draw sequence does not depend on the standard library implementation.
class ParticleRng {
public:
    explicit ParticleRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // in (0,1]
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

double reflect_into_unit(double x) {
    while (x < 0.0 || x > 1.0) {
        if (x < 0.0) x = -x;
        if (x > 1.0) x = 2.0 - x;
    }
    return x;
}

}  // namespace

ParticleEnsemble simulate_ensemble(const RatchetParams& params, const ParticleOptions& opts) {
    if (opts.n_particles < 1) throw std::invalid_argument("particles: need at least one particle");
    if (!(opts.dt > 0.0) || !(opts.t_end > 0.0))
        throw std::invalid_argument("particles: dt and t_end must be positive");
    double rate_max = 0.0;
    for (int i = 0; i < params.grid().n; ++i)
        rate_max = std::max({rate_max, params.nu.samples[i], params.eta.samples[i]});
    if (!(rate_max * opts.dt < 0.1))
        throw std::invalid_argument("particles: max(nu,eta)*dt must stay below 0.1");

    const GridFn slope = potential_slope(params.potential);
    const GridFn& nu = params.nu.samples;
    const GridFn& eta = params.eta.samples;
    const long steps = std::lround(opts.t_end / opts.dt);
    const double dt = opts.dt;
    const double kappa = params.kappa;
    const double step_att = std::sqrt(2.0 * params.sigma * dt);
    const double step_det = std::sqrt(2.0 * params.varsigma * dt);

    ParticleEnsemble ens;
    ens.rng_seed = opts.seed;
    ens.positions.assign(static_cast<std::size_t>(opts.n_particles), 0.0);
    ens.attached.assign(static_cast<std::size_t>(opts.n_particles), 0);

    const auto worker = [&](long lo, long hi) {
        for (long idx = lo; idx < hi; ++idx) {
            ParticleRng rng(splitmix64(opts.seed + static_cast<std::uint64_t>(idx)));
            double x = rng.uniform();
            if (x > 1.0) x = 1.0;
            bool att = rng.uniform() <= 0.5;
            for (long s = 0; s < steps; ++s) {
                const double g = rng.normal();
                if (att)
                    x += -kappa * interpolate(slope, x) * dt + step_att * g;
                else
                    x += step_det * g;
                x = reflect_into_unit(x);
                const double u = rng.uniform();
                const double rate = att ? interpolate(eta, x) : interpolate(nu, x);
                if (u < rate * dt) att = !att;
            }
            ens.positions[static_cast<std::size_t>(idx)] = x;
            ens.attached[static_cast<std::size_t>(idx)] = att ? 1 : 0;
        }
    };
    parallel_ranges(opts.n_particles, opts.threads, worker);
    return ens;
}

ParticleHistogram simulate_particles(const RatchetParams& params, const ParticleOptions& opts) {
    const ParticleEnsemble ens = simulate_ensemble(params, opts);
    const int k = params.k();
    const int bins = std::max(1, opts.bins);

    ParticleHistogram h;
    h.k = k;
    h.n_particles = opts.n_particles;
    h.t_end = opts.t_end;
    h.dt = opts.dt;
    h.seed = opts.seed;
    h.rng_algorithm = "mt19937_64 per-particle streams (splitmix64-derived seeds), Box-Muller";
    h.attached_counts.assign(static_cast<std::size_t>(bins), 0);
    h.detached_counts.assign(static_cast<std::size_t>(bins), 0);
    std::vector<std::uint64_t> wa(static_cast<std::size_t>(k), 0), wd(static_cast<std::size_t>(k), 0);

    for (std::size_t i = 0; i < ens.positions.size(); ++i) {
        const double x = ens.positions[i];
        const int b = std::min(static_cast<int>(x * bins), bins - 1);
        const int wi = std::min(static_cast<int>(x * k), k - 1);
        if (ens.attached[i]) {
            ++h.attached_counts[static_cast<std::size_t>(b)];
            ++wa[static_cast<std::size_t>(wi)];
        } else {
            ++h.detached_counts[static_cast<std::size_t>(b)];
            ++wd[static_cast<std::size_t>(wi)];
        }
    }

    const double width = 1.0 / bins;
    const double N = static_cast<double>(opts.n_particles);
    h.bin_centers.resize(static_cast<std::size_t>(bins));
    h.attached_density.resize(static_cast<std::size_t>(bins));
    h.detached_density.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        h.bin_centers[static_cast<std::size_t>(b)] = (b + 0.5) * width;
        h.attached_density[static_cast<std::size_t>(b)] =
            static_cast<double>(h.attached_counts[static_cast<std::size_t>(b)]) / (N * width);
        h.detached_density[static_cast<std::size_t>(b)] =
            static_cast<double>(h.detached_counts[static_cast<std::size_t>(b)]) / (N * width);
    }
    h.attached_well_mass.resize(static_cast<std::size_t>(k));
    h.detached_well_mass.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        h.attached_well_mass[static_cast<std::size_t>(i)] = static_cast<double>(wa[static_cast<std::size_t>(i)]) / N;
        h.detached_well_mass[static_cast<std::size_t>(i)] = static_cast<double>(wd[static_cast<std::size_t>(i)]) / N;
    }
    return h;
}

WellComparison compare_histogram(const ParticleHistogram& empirical, const DensityPair& reference,
                                 int k) {
    if (empirical.k != k) throw std::invalid_argument("compare_histogram: k mismatch");
    const std::vector<double> ref_p = well_integrals(reference.p, k);
    const std::vector<double> ref_P = well_integrals(reference.P, k);
    const double N = static_cast<double>(empirical.n_particles);

    WellComparison cmp;
    cmp.pass = true;
    cmp.attached_deviation.resize(static_cast<std::size_t>(k));
    cmp.detached_deviation.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double da = std::abs(empirical.attached_well_mass[static_cast<std::size_t>(i)] -
                                   ref_p[static_cast<std::size_t>(i)]);
        const double dd = std::abs(empirical.detached_well_mass[static_cast<std::size_t>(i)] -
                                   ref_P[static_cast<std::size_t>(i)]);
        cmp.attached_deviation[static_cast<std::size_t>(i)] = da;
        cmp.detached_deviation[static_cast<std::size_t>(i)] = dd;
        cmp.max_well_deviation = std::max({cmp.max_well_deviation, da, dd});
        const double m_a = std::clamp(ref_p[static_cast<std::size_t>(i)], 0.0, 1.0);
        const double m_d = std::clamp(ref_P[static_cast<std::size_t>(i)], 0.0, 1.0);
        const double se_a = std::sqrt(std::max(m_a * (1.0 - m_a), 1e-12) / N);
        const double se_d = std::sqrt(std::max(m_d * (1.0 - m_d), 1e-12) / N);
        cmp.pass = cmp.pass && da <= 3.0 * se_a && dd <= 3.0 * se_d;
    }
    return cmp;
}

}  // namespace ratchet
