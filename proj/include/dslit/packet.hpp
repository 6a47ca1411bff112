#pragma once

#include "dslit/errors.hpp"

namespace dslit {

// Unit system for a run. The diffusivity is not a free parameter: it is tied
// to hbar and the mass by the Einstein relation D = hbar/(2m).
struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;

    double diffusivity() const { return hbar / (2.0 * mass); }
    void validate() const;
};

// One free Gaussian packet: initial width sigma0, centroid center0 moving at
// drift velocity v_x. The initial velocity-fluctuation spread u0 = D/sigma0
// is derived, never stored.
struct PacketParams {
    PhysicalConstants constants;
    double sigma0 = 1.0;
    double center0 = 0.0;
    double v_x = 0.0;

    double u0() const { return constants.diffusivity() / sigma0; }
    double mean_at(double t) const { return center0 + v_x * t; }
    void validate() const;
};

// Average energy put into the packet by the source; enters the action only.
struct EnergyInput {
    double total_energy = 0.0;
};

enum class OsmoticBranch { plus, minus };

// sigma(t) = sqrt(sigma0^2 + u0^2 t^2). Even in t; negative t is fine.
double sigma_at(const PacketParams& p, double t);

// Ballistic diffusion coefficient D_t = u0^2 t. Rejects t < 0: the spreading
// bookkeeping is defined forward in time only.
double diffusivity_at(const PacketParams& p, double t);

// Joint density over (x, p) evolved by the free Liouville flow from the
// initial product of position and momentum Gaussians.
double phase_space_density(const PacketParams& p, double x, double mom, double t);

// Position marginal: Gaussian with mean center0 + v_x t and spread sigma(t).
double marginal_density(const PacketParams& p, double x, double t);

// Osmotic velocity u_± = ∓(hbar/2m) ∇P/P = ±D (x - mean)/sigma^2.
double osmotic_velocity(const PacketParams& p, double x, double t, OsmoticBranch branch);

// Channel-average osmotic field u = -(hbar/m) ∇R/R, i.e. the plus branch.
// This is the form every downstream current formula uses.
double average_osmotic_velocity(const PacketParams& p, double x, double t);

// Total average velocity v(x,t) = v_x + (x - center0 - v_x t) u0^2 t / sigma^2.
double mean_velocity_field(const PacketParams& p, double x, double t);

// Trajectory of a point that started at deviation x0 from the centroid:
// x(t) = center0 + v_x t + x0 sigma(t)/sigma0. Deviations scale with sigma.
double smoothed_position(const PacketParams& p, double x0, double t);

// Action along the smoothed motion, S = m v_x x + (m u0^2/2)(x0/sigma0)^2 t - E t.
double action_value(const PacketParams& p, double x, double x0, double t,
                    const EnergyInput& energy);

// Local kinetic temperature kT = m u0^2 ((x - mean)/sigma)^2.
double kinetic_temperature(const PacketParams& p, double x, double t);

}  // namespace dslit
