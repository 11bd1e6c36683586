#include "ratchet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "ratchet/diffusive_mean.hpp"
#include "ratchet/particles.hpp"
#include "ratchet/squeeze.hpp"
#include "ratchet/threads.hpp"
#include "ratchet/transient.hpp"

namespace ratchet {

namespace {

namespace fs = std::filesystem;

class ArtifactWriter {
public:
    explicit ArtifactWriter(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

    std::ofstream open(const std::string& name) const {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + (dir_ / name).string());
        return out;
    }

private:
    fs::path dir_;
};

void write_summary_line(std::ofstream& out, const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
}

void write_summary_line(std::ofstream& out, const std::string& key, double value) {
    out << key << " = " << format_float(value) << "\n";
}

void write_densities(const ArtifactWriter& w, const DensityPair* pair, const GridFn* Q) {
    std::ofstream out = w.open("densities.csv");
    const GridFn& ref = pair ? pair->p : *Q;
    out << "x,p";
    if (pair) out << ",P";
    if (Q) out << ",Q";
    out << "\n";
    for (int i = 0; i < ref.n(); ++i) {
        out << format_float(ref.grid->node(i));
        out << "," << format_float(pair ? pair->p[i] : (*Q)[i]);
        if (pair) out << "," << format_float(pair->P[i]);
        if (Q) out << "," << format_float((*Q)[i]);
        out << "\n";
    }
}

void write_wells(const ArtifactWriter& w, const std::vector<double>& p_hat,
                 const std::vector<double>* P_hat, const std::vector<double>* xi) {
    std::ofstream out = w.open("wells.csv");
    out << "i,p_hat";
    if (P_hat) out << ",P_hat";
    if (xi) out << ",xi";
    out << "\n";
    for (std::size_t i = 0; i < p_hat.size(); ++i) {
        out << (i + 1) << "," << format_float(p_hat[i]);
        if (P_hat) out << "," << format_float((*P_hat)[i]);
        if (xi) out << "," << format_float((*xi)[i]);
        out << "\n";
    }
}

void write_verdict(std::ofstream& out, const TransportVerdict& v) {
    write_summary_line(out, "S", v.S);
    write_summary_line(out, "a", v.a);
    write_summary_line(out, "margin", v.margin);
    write_summary_line(out, "direction", to_string(v.direction));
}

void write_common_header(std::ofstream& out, const ExperimentConfig& cfg) {
    write_summary_line(out, "model", to_string(cfg.model));
    write_summary_line(out, "grid_n", static_cast<double>(cfg.grid_n));
    write_summary_line(out, "k", static_cast<double>(cfg.params.k()));
    write_summary_line(out, "sigma", cfg.params.sigma);
    write_summary_line(out, "varsigma", cfg.params.varsigma);
    write_summary_line(out, "kappa", cfg.params.kappa);
    write_summary_line(out, "seed", static_cast<double>(cfg.seed));
}

int run_density_model(const ExperimentConfig& cfg) {
    const ArtifactWriter w(cfg.output_dir);
    const bool collaborative = cfg.model == ModelKind::kCollaborative;
    const bool squeezing = cfg.model == ModelKind::kSqueezing;

    StationaryDiagnostics diag;
    const DensityPair pair =
        collaborative ? solve_collaborative(cfg.params, &diag) : solve_stationary(cfg.params, &diag);
    renormalize(pair, cfg.params);  // balance identity check (throws on violation)
    const WellMassReport wells = well_mass_report(pair, cfg.params.k());
    const TransportVerdict verdict = transport_verdict(cfg.params);
    const SqueezeSolution squeeze = squeeze_solution(cfg.params);

    write_densities(w, &pair, squeezing ? &squeeze.Q : nullptr);
    write_wells(w, wells.p_hat, &wells.P_hat, squeezing ? &squeeze.xi : nullptr);

    std::ofstream out = w.open("summary.txt");
    write_common_header(out, cfg);
    write_verdict(out, verdict);
    write_summary_line(out, "gamma", squeeze.gamma);
    write_summary_line(out, "M", squeeze.M);
    write_summary_line(out, "Q_shift_gap", squeeze.q_gap);
    write_summary_line(out, "chain_p", std::string(wells.chain_p ? "1" : "0"));
    write_summary_line(out, "chain_P", std::string(wells.chain_P ? "1" : "0"));
    write_summary_line(out, "shift_P_ok", std::string(wells.shift_P_ok ? "1" : "0"));
    write_summary_line(out, "min_margin", wells.min_margin);
    write_summary_line(out, "mass", total_mass(pair));
    write_summary_line(out, "dropped_row_residual", diag.dropped_row_residual);
    return 0;
}

int run_diffusive_mean_model(const ExperimentConfig& cfg) {
    const ArtifactWriter w(cfg.output_dir);
    const auto [fwd, refl] = reflection_check(cfg.params.nu.samples, cfg.params.varsigma);
    const TransportVerdict verdict = transport_verdict(cfg.params);

    std::ofstream out = w.open("summary.txt");
    write_common_header(out, cfg);
    write_summary_line(out, "s_full_interval", fwd.s);
    write_summary_line(out, "s_reflected", refl.s);
    write_summary_line(out, "reflection_defect", fwd.s + refl.s - 1.0);
    write_verdict(out, verdict);
    return 0;
}

int run_deterministic_model(const ExperimentConfig& cfg) {
    const ArtifactWriter w(cfg.output_dir);
    const FlashingSchedule schedule = make_schedule(cfg.schedule_period, cfg.schedule_on);
    const CycleResult cyc = run_flashing_cycles(cfg.params.potential, cfg.params.sigma, schedule,
                                                cfg.dt, cfg.tol, static_cast<int>(cfg.max_steps));
    if (!cyc.converged)
        throw std::runtime_error("deterministic flashing: cycle map did not converge (last diff " +
                                 format_float(cyc.last_diff) + ")");
    const DirectionComparison cmp =
        compare_directions(cfg.params, schedule, cfg.dt, cfg.tol, static_cast<int>(cfg.max_steps));
    const std::vector<double> wells = well_integrals(cyc.rho, cfg.params.k());

    std::ofstream dens = w.open("densities.csv");
    dens << "x,p\n";
    for (int i = 0; i < cyc.rho.n(); ++i)
        dens << format_float(cyc.rho.grid->node(i)) << "," << format_float(cyc.rho[i]) << "\n";
    write_wells(w, wells, nullptr, nullptr);

    std::ofstream out = w.open("summary.txt");
    write_common_header(out, cfg);
    write_summary_line(out, "schedule_period", schedule.T);
    write_summary_line(out, "schedule_on_duration", schedule.T_tr);
    write_summary_line(out, "cycles", static_cast<double>(cyc.cycles));
    write_summary_line(out, "cycle_end_diff", cyc.last_diff);
    write_summary_line(out, "deterministic_direction", to_string(cmp.deterministic_direction));
    write_summary_line(out, "random_direction", to_string(cmp.random_direction));
    write_summary_line(out, "comparable", std::string(cmp.comparable ? "1" : "0"));
    write_summary_line(out, "agree", std::string(cmp.comparable ? (cmp.agree ? "1" : "0") : "undefined"));
    return 0;
}

int run_particles_model(const ExperimentConfig& cfg) {
    const ArtifactWriter w(cfg.output_dir);
    ParticleOptions opts;
    opts.n_particles = cfg.n_particles;
    opts.t_end = cfg.t_end;
    opts.dt = cfg.dt;
    opts.seed = cfg.seed;
    opts.bins = cfg.bins;
    const ParticleHistogram hist = simulate_particles(cfg.params, opts);
    const DensityPair reference = solve_stationary(cfg.params);
    const WellComparison cmp = compare_histogram(hist, reference, cfg.params.k());

    std::ofstream dens = w.open("densities.csv");
    dens << "x,p,P\n";
    for (std::size_t b = 0; b < hist.bin_centers.size(); ++b)
        dens << format_float(hist.bin_centers[b]) << "," << format_float(hist.attached_density[b])
             << "," << format_float(hist.detached_density[b]) << "\n";
    write_wells(w, hist.attached_well_mass, &hist.detached_well_mass, nullptr);

    std::ofstream out = w.open("summary.txt");
    write_common_header(out, cfg);
    write_summary_line(out, "n_particles", static_cast<double>(hist.n_particles));
    write_summary_line(out, "t_end", hist.t_end);
    write_summary_line(out, "dt", hist.dt);
    write_summary_line(out, "rng", hist.rng_algorithm);
    write_summary_line(out, "max_well_deviation", cmp.max_well_deviation);
    write_summary_line(out, "reference_pass_3se", std::string(cmp.pass ? "1" : "0"));
    return 0;
}

}  // namespace

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SweepResult run_sweep_lattice(const ExperimentConfig& cfg, unsigned threads) {
    std::vector<double> sigmas = cfg.sweep_sigma;
    std::vector<double> kappas = cfg.sweep_kappa;
    std::sort(sigmas.rbegin(), sigmas.rend());  // largest sigma first
    std::sort(kappas.begin(), kappas.end());    // smallest kappa first

    SweepResult res;
    res.points.resize(sigmas.size() * kappas.size());
    const long total = static_cast<long>(res.points.size());
    parallel_ranges(total, threads, [&](long lo, long hi) {
        for (long idx = lo; idx < hi; ++idx) {
            const std::size_t si = static_cast<std::size_t>(idx) / kappas.size();
            const std::size_t ki = static_cast<std::size_t>(idx) % kappas.size();
            RatchetParams p = cfg.params;
            p.sigma = sigmas[si];
            p.kappa = kappas[ki];
            SweepPoint& pt = res.points[static_cast<std::size_t>(idx)];
            pt.sigma = p.sigma;
            pt.kappa = p.kappa;
            try {
                const DensityPair pair = solve_stationary(p);
                const WellMassReport rep = well_mass_report(pair, p.k());
                pt.chain_p = rep.chain_p;
                pt.chain_P = rep.chain_P;
                pt.shift_P_ok = rep.shift_P_ok;
                pt.min_margin = rep.min_margin;
            } catch (const std::exception&) {
                pt.solve_failed = true;
                pt.min_margin = -std::numeric_limits<double>::infinity();
            }
        }
    });

    res.best_margin = -std::numeric_limits<double>::infinity();
    for (const SweepPoint& pt : res.points) {
        if (pt.solve_failed) continue;
        res.best_margin = std::max(res.best_margin, pt.min_margin);
        const bool ok = pt.chain_p && pt.chain_P && pt.shift_P_ok && pt.min_margin > 1e-6;
        if (ok && !res.first_satisfying) res.first_satisfying = pt;
    }
    return res;
}

int run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.model) {
        case ModelKind::kRandomFlashing:
        case ModelKind::kCollaborative:
        case ModelKind::kSqueezing:
            return run_density_model(cfg);
        case ModelKind::kDiffusiveMean:
            return run_diffusive_mean_model(cfg);
        case ModelKind::kDeterministicFlashing:
            return run_deterministic_model(cfg);
        case ModelKind::kParticles:
            return run_particles_model(cfg);
    }
    throw std::runtime_error("run_experiment: unhandled model");
}

int run_sweep(const ExperimentConfig& cfg) {
    const ArtifactWriter w(cfg.output_dir);
    const SweepResult res = run_sweep_lattice(cfg);

    std::ofstream csv = w.open("sweep.csv");
    csv << "sigma,kappa,chain_p,chain_P,shift_P_ok,min_margin\n";
    for (const SweepPoint& pt : res.points)
        csv << format_float(pt.sigma) << "," << format_float(pt.kappa) << ","
            << (pt.chain_p ? 1 : 0) << "," << (pt.chain_P ? 1 : 0) << ","
            << (pt.shift_P_ok ? 1 : 0) << "," << format_float(pt.min_margin) << "\n";

    std::ofstream out = w.open("summary.txt");
    write_common_header(out, cfg);
    write_summary_line(out, "sweep_points", static_cast<double>(res.points.size()));
    write_summary_line(out, "best_margin", res.best_margin);
    if (res.first_satisfying) {
        const SweepPoint& pt = *res.first_satisfying;
        write_summary_line(out, "satisfying", std::string("1"));
        write_summary_line(out, "fixture_sigma", pt.sigma);
        write_summary_line(out, "fixture_kappa", pt.kappa);

        std::ofstream fx = w.open("fixture.toml");
        fx << "# first satisfying sweep point (largest sigma, smallest kappa)\n";
        fx << "model = \"random-flashing\"\n";
        fx << "seed = " << cfg.seed << "\n";
        fx << "output_dir = \"" << cfg.output_dir << "\"\n\n";
        fx << "[grid]\nn = " << cfg.grid_n << "\n\n";
        fx << "[params]\n";
        fx << "sigma = " << format_float(pt.sigma) << "\n";
        fx << "kappa = " << format_float(pt.kappa) << "\n";
        fx << "varsigma = " << format_float(cfg.params.varsigma) << "\n\n";
        fx << "[potential]\n";
        fx << "k = " << cfg.potential_spec.k << "\n";
        fx << "a = " << format_float(cfg.potential_spec.a) << "\n";
        fx << "depth = " << format_float(cfg.potential_spec.depth) << "\n\n";
        const auto emit_rate = [&fx](const char* name, const RateSpec& s) {
            fx << "[" << name << "]\n";
            fx << "kind = \"" << s.kind << "\"\n";
            if (s.kind == "constant") {
                fx << "value = " << format_float(s.value) << "\n";
            } else if (s.kind == "peaked") {
                fx << "s_star = " << format_float(s.s_star) << "\n";
                fx << "width = " << format_float(s.width) << "\n";
                fx << "base = " << format_float(s.base) << "\n";
                fx << "mass = " << format_float(s.mass) << "\n";
            }
            fx << "\n";
        };
        emit_rate("nu", cfg.nu_spec);
        emit_rate("eta", cfg.eta_spec);
    } else {
        write_summary_line(out, "satisfying", std::string("0"));
    }
    return 0;
}

}  // namespace ratchet
