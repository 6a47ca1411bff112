#pragma once

#include <string>

#include "dslit/config.hpp"

namespace dslit {

// Runs one named experiment against the config, writing its files into
// cfg.output_dir. Returns a process exit status: 0 success, 2 unknown
// subcommand, 3 validation breach. I/O trouble surfaces as IoError.
int run_subcommand(const std::string& name, const ExperimentConfig& cfg);

}  // namespace dslit
