#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dslit/config.hpp"
#include "dslit/errors.hpp"
#include "dslit/experiments.hpp"

namespace {

constexpr const char* kSubcommands[] = {"pattern",      "currents", "entangling",
                                        "phaseshift",   "modular",  "trajectories",
                                        "cml",          "validate"};

constexpr const char* kDescriptions[] = {
    "interference intensity P_tot over the space-time grid",
    "average current components and the velocity field",
    "entangling current J_e over the space-time grid",
    "ramped-phase fields: intensity, J_e and the relative phase",
    "modular momentum decomposition swept over probe points and times",
    "ensemble of averaged trajectories through the interference region",
    "lattice diffusion series: variance, mass, kurtosis against time",
    "run every internal consistency check and write a report"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-slit sub-quantum kinematics simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;
    for (size_t i = 0; i < std::size(kSubcommands); ++i) {
        CLI::App* sub = app.add_subcommand(kSubcommands[i], kDescriptions[i]);
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
        sub->add_option("--format", format, "output format (overrides output.format)")
            ->check(CLI::IsMember({"csv", "pgm", "both"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        dslit::ExperimentConfig cfg = dslit::load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (format == "csv") cfg.format = dslit::OutputFormat::csv;
        if (format == "pgm") cfg.format = dslit::OutputFormat::pgm;
        if (format == "both") cfg.format = dslit::OutputFormat::both;
        return dslit::run_subcommand(app.get_subcommands().front()->get_name(), cfg);
    } catch (const dslit::ParseError& e) {
        std::cerr << "config error at line " << e.line << " near `" << e.token
                  << "`: " << e.what() << "\n";
        return 2;
    } catch (const dslit::ValidationError& e) {
        std::cerr << "invalid configuration (" << e.invariant << "): " << e.what() << "\n";
        return 2;
    } catch (const dslit::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
