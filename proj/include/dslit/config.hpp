#pragma once

#include <string>
#include <string_view>

#include "dslit/cml.hpp"
#include "dslit/doubleslit.hpp"
#include "dslit/errors.hpp"
#include "dslit/trajectories.hpp"

namespace dslit {

enum class OutputFormat { csv, pgm, both };

// Everything a run needs, grouped the same way the config file is. A default
// constructed instance is a complete, valid experiment.
struct ExperimentConfig {
    SlitConfig slits;  // carries constants and the optional ramp
    GridSpec grid;
    TrajectorySpec trajectories;
    LatticeSpec lattice;
    double lattice_t_end = 8.0;
    std::string output_dir = "out";
    OutputFormat format = OutputFormat::csv;

    void validate() const;
};

// Line-based `key = value` text. '#' starts a comment, blank lines are
// skipped, unknown or duplicate keys are errors. Defaults that depend on
// sigma0 (trajectory dt, lattice dx) are filled after all keys are read.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::string& path);

// Canonical form: every key, fixed order, shortest round-trip numerals.
// parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const ExperimentConfig& cfg);

// FNV-1a-64 over the canonical form, as 16 hex digits. Stamped into every
// output file header so data can be traced back to its configuration.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace dslit
