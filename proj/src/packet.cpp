#include "dslit/packet.hpp"

#include <cmath>

namespace dslit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void PhysicalConstants::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw ValidationError("hbar_positive", "hbar must be positive and finite");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw ValidationError("mass_positive", "mass must be positive and finite");
}

void PacketParams::validate() const {
    constants.validate();
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw ValidationError("sigma0_positive", "sigma0 must be positive and finite");
    if (!std::isfinite(center0) || !std::isfinite(v_x))
        throw ValidationError("packet_finite", "center0 and v_x must be finite");
}

double sigma_at(const PacketParams& p, double t) {
    const double u = p.u0();
    return std::sqrt(p.sigma0 * p.sigma0 + u * u * t * t);
}

double diffusivity_at(const PacketParams& p, double t) {
    if (t < 0.0)
        throw ValidationError("diffusivity_forward_time",
                              "ballistic diffusion coefficient requires t >= 0");
    const double u = p.u0();
    return u * u * t;
}

double phase_space_density(const PacketParams& p, double x, double mom, double t) {
    const double m = p.constants.mass;
    const double u = p.u0();
    // Galilean shift into the co-moving frame of the centroid.
    const double xs = x - p.mean_at(t);
    const double ps = mom - m * p.v_x;
    // Free Liouville evolution of the initial product Gaussian: positions stream
    // as x - p t / m while the momentum marginal stays frozen.
    const double xa = xs - ps * t / m;
    const double norm = 1.0 / (kTwoPi * p.sigma0 * m * u);
    const double ex = -xa * xa / (2.0 * p.sigma0 * p.sigma0);
    const double ep = -ps * ps / (2.0 * m * m * u * u);
    return norm * std::exp(ex + ep);
}

double marginal_density(const PacketParams& p, double x, double t) {
    const double u = p.u0();
    const double s2 = p.sigma0 * p.sigma0 + u * u * t * t;
    const double norm = 1.0 / std::sqrt(kTwoPi * s2);
    const double d = x - p.mean_at(t);
    return norm * std::exp(-d * d / (2.0 * s2));
}

double osmotic_velocity(const PacketParams& p, double x, double t, OsmoticBranch branch) {
    const double u = p.u0();
    const double s2 = p.sigma0 * p.sigma0 + u * u * t * t;
    const double value = p.constants.diffusivity() * (x - p.mean_at(t)) / s2;
    return branch == OsmoticBranch::plus ? value : -value;
}

double average_osmotic_velocity(const PacketParams& p, double x, double t) {
    return osmotic_velocity(p, x, t, OsmoticBranch::plus);
}

double mean_velocity_field(const PacketParams& p, double x, double t) {
    const double u = p.u0();
    const double s2 = p.sigma0 * p.sigma0 + u * u * t * t;
    const double fluct = u * u * t / s2;
    return p.v_x + (x - p.mean_at(t)) * fluct;
}

double smoothed_position(const PacketParams& p, double x0, double t) {
    return p.mean_at(t) + x0 * sigma_at(p, t) / p.sigma0;
}

double action_value(const PacketParams& p, double x, double x0, double t,
                    const EnergyInput& energy) {
    const double m = p.constants.mass;
    const double u = p.u0();
    const double ratio = x0 / p.sigma0;
    return m * p.v_x * x + 0.5 * m * u * u * ratio * ratio * t - energy.total_energy * t;
}

double kinetic_temperature(const PacketParams& p, double x, double t) {
    const double u = p.u0();
    const double dev = (x - p.mean_at(t)) / sigma_at(p, t);
    return p.constants.mass * u * u * dev * dev;
}

}  // namespace dslit
