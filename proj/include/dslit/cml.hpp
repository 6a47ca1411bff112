#pragma once

#include <vector>

#include "dslit/packet.hpp"

namespace dslit {

enum class Boundary { absorbing, reflecting };

struct LatticeSpec {
    int n_cells = 2048;
    double dx = 0.02;  // config loader defaults this to sigma0/50
    double dt = 0.01;  // outer step; substeps keep the stencil stable
    Boundary boundary = Boundary::reflecting;

    void validate() const;
};

// Cell-centered densities; cell i sits at x_lo + (i + 1/2) dx.
struct LatticeState {
    std::vector<double> values;
    double t = 0.0;
    double x_lo = 0.0;

    double cell_center(int i, double dx) const { return x_lo + (i + 0.5) * dx; }
};

struct LatticeMoments {
    double mass = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0;
};

struct DispersionPoint {
    double t = 0.0;
    double variance = 0.0;
    double mass = 0.0;
    double excess_kurtosis = 0.0;
};

// Midpoint-sampled Gaussian, renormalized to unit mass * dx. The domain is
// centered on the packet and must span at least +-10 sigma0.
LatticeState init_gaussian(const LatticeSpec& spec, const PacketParams& params);

// One explicit diffusion step over [t, t + dt] with the chord diffusivity
// u0^2 (t + dt/2). Refuses to run outside r = D dt / dx^2 <= 1/2.
LatticeState step(const LatticeState& state, const LatticeSpec& spec,
                  const PacketParams& params);

LatticeMoments lattice_moments(const LatticeState& state, const LatticeSpec& spec);

// March to t_end in outer dt strides, auto-subdividing each stride so every
// substep honors the stability bound; records moments after every stride.
std::vector<DispersionPoint> run_dispersion(const LatticeSpec& spec,
                                            const PacketParams& params, double t_end);

// Final lattice after the same march; used for profile comparisons.
LatticeState run_to(const LatticeSpec& spec, const PacketParams& params, double t_end);

}  // namespace dslit
