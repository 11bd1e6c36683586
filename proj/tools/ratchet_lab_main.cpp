#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "acceptance/acceptance.hpp"
#include "ratchet/config.hpp"
#include "ratchet/experiment.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<int> grid_n;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("config", flags.config_path, "experiment config file")->required();
    cmd->add_option("--grid-n", flags.grid_n, "override grid.n");
    cmd->add_option("--out", flags.out, "override output_dir");
    cmd->add_option("--seed", flags.seed, "override seed");
}

ratchet::ExperimentConfig load(const CommonFlags& flags) {
    ratchet::ConfigOverrides ov;
    ov.grid_n = flags.grid_n;
    ov.output_dir = flags.out;
    ov.seed = flags.seed;
    return ratchet::build_experiment(ratchet::ConfigFile::parse_file(flags.config_path), ov);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ratchet-lab: flashing-ratchet transport experiments"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "run one experiment from a config file");
    add_common(run_cmd, run_flags);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate the sigma x kappa sweep lattice");
    add_common(sweep_cmd, sweep_flags);
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return ratchet::run_experiment(load(run_flags));
        if (sweep_cmd->parsed()) return ratchet::run_sweep(load(sweep_flags));
        if (selftest_cmd->parsed()) {
            const auto results = ratchet::acceptance::run_all(std::cout);
            return ratchet::acceptance::all_passed(results) ? 0 : 3;
        }
    } catch (const ratchet::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
