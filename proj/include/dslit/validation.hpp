#pragma once

#include <string>
#include <vector>

#include "dslit/config.hpp"

namespace dslit {

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;   // the measured figure of merit
    double threshold = 0.0;  // what it was held against
    std::string detail;
};

// The two independent current routes (velocity-weighted densities vs the
// complex wavefunction) agree wherever the density is meaningful.
CheckResult check_oracle_equivalence(const SlitConfig& cfg, const GridSpec& grid);

// sigma^2(t) - sigma0^2 equals the ballistic-diffusion product D_t * t.
CheckResult check_dispersion_identity(const PacketParams& p, double t_max);

// The single-packet marginal integrates to one at every time.
CheckResult check_normalization(const PacketParams& p, double t_max);

// Density-weighted osmotic momentum integrates to zero.
CheckResult check_osmotic_mean_zero(const PacketParams& p, double t_max);

// A constant 2*pi relative phase offset changes no observable field.
CheckResult check_modular_invariance(const SlitConfig& cfg, const GridSpec& grid);

// No trajectory crosses the axis and the initial ordering is preserved.
CheckResult check_no_crossing(const SlitConfig& cfg, const TrajectorySpec& spec);

// Lattice variance follows sigma0^2 + u0^2 t^2.
CheckResult check_cml_variance(const LatticeSpec& spec, const PacketParams& p, double t_end);

// All seven, in a fixed order, against the experiment's own parameters.
std::vector<CheckResult> run_validation_suite(const ExperimentConfig& cfg);

}  // namespace dslit
