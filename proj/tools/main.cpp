// main.cpp — liouspec command-line front end
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liouspec/commands.hpp"
#include "liouspec/version.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::string out_dir;
    std::string format;
    int workers = -1;
    int seed = 0;  // reserved for future stochastic tasks
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", flags.out_dir, "Output directory (overrides output.path)");
    cmd->add_option("--workers", flags.workers, "Worker threads; 0 means one per core");
    cmd->add_option("--seed", flags.seed, "Reserved");
    cmd->add_option("--format", flags.format, "Output format: dsv or structured")
        ->check(CLI::IsMember({"dsv", "structured"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("liouspec ") + liouspec::kVersion +
                 " - Liouvillian spectra of parametric oscillators"};
    app.require_subcommand(1);

    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"spectrum", "Eigenvalue table with oracle and ladder labels"},
        {"sweep", "Observables over a parameter grid"},
        {"qpt", "Scaled-model transition pipeline with scaling fits"},
        {"relaxation", "Relaxation time over an (eta, xi) grid"},
        {"classify", "Ladder classification table for one j"},
        {"converge", "Truncation size search"},
    };
    for (const auto& [name, description] : commands)
        add_common_flags(app.add_subcommand(name, description), flags);

    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();

    liouspec::cli::RunConfig config;
    try {
        config = liouspec::cli::load_run_config(flags.config_path);
        if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
        if (!flags.format.empty()) config.format = flags.format;
        if (flags.workers >= 0) config.workers = flags.workers;
    } catch (const liouspec::cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }

    try {
        liouspec::cli::run_command(name, config);
    } catch (const liouspec::cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
