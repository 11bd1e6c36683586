#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ratchet/model.hpp"

namespace ratchet {

/// Parse or validation failure, carrying the config line it points at
/// (0 when the problem is not tied to a single line).
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    int line;
};

/// Minimal TOML-style config file: [section] headers, key = value pairs,
/// strings, numbers, booleans and flat numeric arrays, # comments.
class ConfigFile {
public:
    using Value = std::variant<double, std::string, bool, std::vector<double>>;

    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& name = "<config>");

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    long integer(const std::string& key) const;
    long integer_or(const std::string& key, long fallback) const;
    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::vector<double> number_list(const std::string& key) const;

    /// Keys present in the file but never read; used to reject typos.
    std::vector<std::string> unread_keys() const;
    int line_of(const std::string& key) const;

private:
    struct Entry {
        Value value;
        int line = 0;
        mutable bool read = false;
    };
    std::map<std::string, Entry> entries_;
    std::string name_;

    const Entry& fetch(const std::string& key) const;
};

enum class ModelKind {
    kRandomFlashing,
    kDeterministicFlashing,
    kCollaborative,
    kSqueezing,
    kDiffusiveMean,
    kParticles,
};

std::string to_string(ModelKind m);

/// Constructor choices as written in the config, kept so that sweep fixtures
/// can be re-emitted as complete runnable configs.
struct RateSpec {
    std::string kind = "constant";  // constant | peaked | conjugate (eta only)
    double value = 1.0;
    double s_star = 0.0;
    double width = 0.0;
    double base = 0.05;
    double mass = 1.0;
};

struct PotentialSpec {
    int k = 2;
    double a = 0.25;
    double depth = 1.0;
};

/// Fully validated experiment description assembled from a config file.
struct ExperimentConfig {
    ModelKind model = ModelKind::kRandomFlashing;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int grid_n = 2001;

    RatchetParams params;
    PotentialSpec potential_spec;
    RateSpec nu_spec;
    RateSpec eta_spec;

    std::vector<double> sweep_sigma;  // defaults when the section is absent
    std::vector<double> sweep_kappa;

    double dt = 1e-3;
    double tol = 1e-6;
    long max_steps = 200000;
    double t_end = 6.0;
    long n_particles = 100000;
    int bins = 100;

    double schedule_period = 1.4;
    double schedule_on = 0.4;
};

struct ConfigOverrides {
    std::optional<int> grid_n;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
};

/// Builds the experiment (including the model-core objects) from a parsed
/// file; every violated invariant is reported as a ConfigError naming it.
ExperimentConfig build_experiment(const ConfigFile& file, const ConfigOverrides& overrides = {});

/// Default sweep lattice: 10 logarithmic sigma steps 1e-1..1e-4 and 8
/// logarithmic kappa steps 1..200.
std::vector<double> default_sweep_sigma();
std::vector<double> default_sweep_kappa();

}  // namespace ratchet
