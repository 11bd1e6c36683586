#include "ratchet/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ratchet {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

double parse_number(const std::string& tok, int line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + tok + "'", line_no);
    }
    if (used != tok.size()) throw ConfigError("trailing characters after number '" + tok + "'", line_no);
    return v;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& name) {
    ConfigFile cfg;
    cfg.name_ = name;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (val.empty()) throw ConfigError("missing value for key '" + key + "'", line_no);
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.entries_.count(full)) throw ConfigError("duplicate key '" + full + "'", line_no);

        Entry e;
        e.line = line_no;
        if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"')
                throw ConfigError("unterminated string for key '" + key + "'", line_no);
            e.value = val.substr(1, val.size() - 2);
        } else if (val == "true" || val == "false") {
            e.value = (val == "true");
        } else if (val.front() == '[') {
            if (val.back() != ']') throw ConfigError("unterminated array for key '" + key + "'", line_no);
            std::vector<double> items;
            std::string body = val.substr(1, val.size() - 2);
            std::istringstream bs(body);
            std::string tok;
            while (std::getline(bs, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) throw ConfigError("empty array element for key '" + key + "'", line_no);
                items.push_back(parse_number(tok, line_no));
            }
            e.value = std::move(items);
        } else {
            e.value = parse_number(val, line_no);
        }
        cfg.entries_.emplace(full, std::move(e));
    }
    return cfg;
}

const ConfigFile::Entry& ConfigFile::fetch(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
    it->second.read = true;
    return it->second;
}

bool ConfigFile::has(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it != entries_.end()) it->second.read = true;
    return it != entries_.end();
}

double ConfigFile::number(const std::string& key) const {
    const Entry& e = fetch(key);
    if (const double* v = std::get_if<double>(&e.value)) return *v;
    throw ConfigError("key '" + key + "' must be a number", e.line);
}

double ConfigFile::number_or(const std::string& key, double fallback) const {
    return entries_.count(key) ? number(key) : fallback;
}

long ConfigFile::integer(const std::string& key) const {
    const Entry& e = fetch(key);
    const double v = number(key);
    if (std::abs(v - std::round(v)) > 1e-9)
        throw ConfigError("key '" + key + "' must be an integer", e.line);
    return std::lround(v);
}

long ConfigFile::integer_or(const std::string& key, long fallback) const {
    return entries_.count(key) ? integer(key) : fallback;
}

std::string ConfigFile::str(const std::string& key) const {
    const Entry& e = fetch(key);
    if (const std::string* v = std::get_if<std::string>(&e.value)) return *v;
    throw ConfigError("key '" + key + "' must be a string", e.line);
}

std::string ConfigFile::str_or(const std::string& key, const std::string& fallback) const {
    return entries_.count(key) ? str(key) : fallback;
}

bool ConfigFile::boolean_or(const std::string& key, bool fallback) const {
    if (!entries_.count(key)) return fallback;
    const Entry& e = fetch(key);
    if (const bool* v = std::get_if<bool>(&e.value)) return *v;
    throw ConfigError("key '" + key + "' must be true or false", e.line);
}

std::vector<double> ConfigFile::number_list(const std::string& key) const {
    const Entry& e = fetch(key);
    if (const auto* v = std::get_if<std::vector<double>>(&e.value)) return *v;
    throw ConfigError("key '" + key + "' must be an array of numbers", e.line);
}

std::vector<std::string> ConfigFile::unread_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, e] : entries_)
        if (!e.read) out.push_back(k);
    return out;
}

int ConfigFile::line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::kRandomFlashing: return "random-flashing";
        case ModelKind::kDeterministicFlashing: return "deterministic-flashing";
        case ModelKind::kCollaborative: return "collaborative";
        case ModelKind::kSqueezing: return "squeezing";
        case ModelKind::kDiffusiveMean: return "diffusive-mean";
        case ModelKind::kParticles: return "particles";
    }
    return "?";
}

std::vector<double> default_sweep_sigma() {
    std::vector<double> out;
    for (int i = 0; i < 10; ++i) out.push_back(std::pow(10.0, -1.0 - 3.0 * i / 9.0));
    return out;
}

std::vector<double> default_sweep_kappa() {
    std::vector<double> out;
    const double top = std::log10(200.0);
    for (int i = 0; i < 8; ++i) out.push_back(std::pow(10.0, top * i / 7.0));
    return out;
}

namespace {

ModelKind parse_model(const ConfigFile& f) {
    const std::string m = f.str("model");
    if (m == "random-flashing") return ModelKind::kRandomFlashing;
    if (m == "deterministic-flashing") return ModelKind::kDeterministicFlashing;
    if (m == "collaborative") return ModelKind::kCollaborative;
    if (m == "squeezing") return ModelKind::kSqueezing;
    if (m == "diffusive-mean") return ModelKind::kDiffusiveMean;
    if (m == "particles") return ModelKind::kParticles;
    throw ConfigError("unknown model '" + m + "'", f.line_of("model"));
}

RateProfile build_rate(const ConfigFile& f, const std::string& section, int k, GridPtr grid,
                       const Potential& potential, double kappa, double sigma, RateSpec* spec) {
    const std::string kind = f.str_or(section + ".kind", "constant");
    if (spec) spec->kind = kind;
    try {
        if (kind == "constant") {
            const double value = f.number_or(section + ".value", 1.0);
            if (spec) spec->value = value;
            return make_constant_rate(k, value, grid);
        }
        if (kind == "peaked") {
            RateSpec s;
            s.kind = kind;
            s.s_star = f.number(section + ".s_star");
            s.width = f.number(section + ".width");
            s.base = f.number_or(section + ".base", 0.05);
            s.mass = f.number_or(section + ".mass", 1.0);
            if (spec) *spec = s;
            return make_peaked_rate(k, s.s_star, s.width, s.base, s.mass, grid);
        }
        if (kind == "conjugate") {
            if (section != "eta")
                throw ConfigError("conjugate kind is only valid for [eta]", f.line_of(section + ".kind"));
            RateProfile nu = build_rate(f, "nu", k, grid, potential, kappa, sigma, nullptr);
            return make_conjugate_eta(nu, potential, kappa, sigma);
        }
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("[") + section + "] " + err.what(), f.line_of(section + ".kind"));
    }
    throw ConfigError("unknown rate kind '" + kind + "' in [" + section + "]",
                      f.line_of(section + ".kind"));
}

}  // namespace

ExperimentConfig build_experiment(const ConfigFile& f, const ConfigOverrides& overrides) {
    ExperimentConfig cfg;
    cfg.model = parse_model(f);
    cfg.seed = overrides.seed ? *overrides.seed
                              : static_cast<std::uint64_t>(f.integer_or("seed", 1));
    cfg.output_dir = overrides.output_dir ? *overrides.output_dir : f.str_or("output_dir", "out");

    const int k = static_cast<int>(f.integer_or("potential.k", 2));
    const int n_file = static_cast<int>(f.integer_or("grid.n", 2001));
    const int n_req = overrides.grid_n ? *overrides.grid_n : n_file;
    if (n_req < 3) throw ConfigError("grid.n must be at least 3", f.line_of("grid.n"));
    cfg.grid_n = grid_size_for_k(n_req, k);
    GridPtr grid;
    try {
        grid = make_grid(0.0, 1.0, cfg.grid_n);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what(), f.line_of("grid.n"));
    }

    const double sigma = f.number_or("params.sigma", 1e-3);
    const double varsigma = f.number_or("params.varsigma", 1.0);
    const double kappa = f.number_or("params.kappa", 20.0);

    Potential pot;
    cfg.potential_spec.k = k;
    cfg.potential_spec.a = f.number("potential.a");
    cfg.potential_spec.depth = f.number_or("potential.depth", 1.0);
    try {
        pot = make_smoothed_sawtooth(k, cfg.potential_spec.a, cfg.potential_spec.depth, grid);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("[potential] ") + err.what(), f.line_of("potential.a"));
    }

    RateProfile nu = build_rate(f, "nu", k, grid, pot, kappa, sigma, &cfg.nu_spec);
    RateProfile eta = build_rate(f, "eta", k, grid, pot, kappa, sigma, &cfg.eta_spec);

    std::optional<Potential> alt;
    if (f.has("potential_alt.kind")) {
        const std::string kind = f.str("potential_alt.kind");
        try {
            if (kind == "flat")
                alt = make_flat_potential(k, grid, f.number_or("potential_alt.level", 0.0));
            else if (kind == "sawtooth")
                alt = make_smoothed_sawtooth(k, f.number("potential_alt.a"),
                                             f.number_or("potential_alt.depth", 1.0), grid);
            else
                throw ConfigError("unknown potential_alt kind '" + kind + "'",
                                  f.line_of("potential_alt.kind"));
        } catch (const std::invalid_argument& err) {
            throw ConfigError(std::string("[potential_alt] ") + err.what(),
                              f.line_of("potential_alt.kind"));
        }
    }
    if (cfg.model == ModelKind::kCollaborative && !alt)
        throw ConfigError("collaborative model requires a [potential_alt] section");
    if (cfg.model != ModelKind::kCollaborative && alt)
        throw ConfigError("[potential_alt] is only valid for the collaborative model",
                          f.line_of("potential_alt.kind"));

    try {
        cfg.params = make_params(sigma, varsigma, kappa, std::move(pot), std::move(nu),
                                 std::move(eta), std::move(alt));
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("[params] ") + err.what());
    }

    cfg.sweep_sigma = f.has("sweep.sigma") ? f.number_list("sweep.sigma") : default_sweep_sigma();
    cfg.sweep_kappa = f.has("sweep.kappa") ? f.number_list("sweep.kappa") : default_sweep_kappa();
    for (double s : cfg.sweep_sigma)
        if (!(s > 0.0)) throw ConfigError("sweep.sigma entries must be positive", f.line_of("sweep.sigma"));
    for (double kv : cfg.sweep_kappa)
        if (!(kv > 0.0)) throw ConfigError("sweep.kappa entries must be positive", f.line_of("sweep.kappa"));

    cfg.dt = f.number_or("run.dt", cfg.model == ModelKind::kParticles ? 2e-4 : 1e-3);
    cfg.tol = f.number_or("run.tol", 1e-6);
    cfg.max_steps = f.integer_or("run.max_steps", 200000);
    cfg.t_end = f.number_or("run.t_end", 6.0);
    cfg.n_particles = f.integer_or("run.n_particles", 100000);
    cfg.bins = static_cast<int>(f.integer_or("run.bins", 100));
    if (!(cfg.dt > 0.0)) throw ConfigError("run.dt must be positive", f.line_of("run.dt"));
    if (!(cfg.tol > 0.0)) throw ConfigError("run.tol must be positive", f.line_of("run.tol"));
    if (cfg.n_particles < 1) throw ConfigError("run.n_particles must be positive", f.line_of("run.n_particles"));

    cfg.schedule_period = f.number_or("schedule.period", 1.4);
    cfg.schedule_on = f.number_or("schedule.on_duration", 0.4);
    if (cfg.model == ModelKind::kDeterministicFlashing &&
        !(cfg.schedule_on > 0.0 && cfg.schedule_on < cfg.schedule_period))
        throw ConfigError("schedule: need 0 < on_duration < period", f.line_of("schedule.period"));

    const std::vector<std::string> stray = f.unread_keys();
    if (!stray.empty())
        throw ConfigError("unknown key '" + stray.front() + "'", f.line_of(stray.front()));
    return cfg;
}

}  // namespace ratchet
