#include "dslit/modular.hpp"

#include <cmath>

namespace dslit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double sigma2_of(const SlitConfig& cfg, double t) {
    const double u0 = cfg.u0();
    return cfg.sigma0 * cfg.sigma0 + u0 * u0 * t * t;
}

void require_symmetric(const SlitConfig& cfg) {
    if (cfg.v_x != 0.0)
        throw UnsupportedConfiguration(
            "modular bookkeeping is defined for v_x = 0 configurations only");
}

int checked_sign(int sign) {
    if (sign != 1 && sign != -1)
        throw UnsupportedConfiguration("slit-opening sign must be +1 or -1");
    return sign;
}

double convention_factor(ShiftConvention c) {
    return c == ShiftConvention::unhalved ? 2.0 : 1.0;
}

}  // namespace

ModularDecomposition decompose(const SlitConfig& cfg, double x, double t) {
    cfg.validate();
    require_symmetric(cfg);
    if (x == 0.0 || t == 0.0)
        throw UndefinedSplit("modular split undefined where the phase term vanishes");

    const double D = cfg.constants.diffusivity();
    const double s2 = sigma2_of(cfg, t);
    // phi12 = -X kappa at (x, t); kappa carries the channel orientation.
    const double kappa =
        cfg.channel_sign() * x * D * t / (cfg.sigma0 * cfg.sigma0 * s2);

    ModularDecomposition d;
    d.X = cfg.half_separation;
    const double theta = d.X * kappa;
    d.n = long(std::floor(theta / kTwoPi));
    d.X_n = kTwoPi * double(d.n) / kappa;
    d.delta_X = d.X - d.X_n;
    d.phase_term = -theta;
    d.remainder_phase = -(theta - kTwoPi * double(d.n));
    return d;
}

MomentumShift momentum_shift(const SlitConfig& cfg, const ModularDecomposition& d, double t,
                             int sign, ShiftConvention convention) {
    require_symmetric(cfg);
    const double m = cfg.constants.mass;
    const double D = cfg.constants.diffusivity();
    const double u0 = cfg.u0();
    const double s02 = cfg.sigma0 * cfg.sigma0;
    const double s2 = sigma2_of(cfg, t);

    // Same quantity three ways: hbar^2 form, D^2 form, sigma_dot/sigma form.
    const double hbar = cfg.constants.hbar;
    const double via_hbar = 0.5 * d.delta_X * (hbar * hbar / (2.0 * m)) * t / (s2 * s02);
    const double via_diff = m * d.delta_X * D * D * t / (s2 * s02);
    const double via_sigma = m * d.delta_X * (u0 * u0 * t / s2);
    const double scale = std::abs(via_sigma) + 1e-300;
    if (std::abs(via_hbar - via_sigma) > 1e-12 * scale ||
        std::abs(via_diff - via_sigma) > 1e-12 * scale)
        throw UnsupportedConfiguration("momentum shift closed forms disagree");

    MomentumShift out;
    out.sign = checked_sign(sign);
    out.value = double(out.sign) * convention_factor(convention) * via_sigma;
    return out;
}

double momentum_shift_rate(const SlitConfig& cfg, const ModularDecomposition& d, double t,
                           int sign, ShiftConvention convention) {
    require_symmetric(cfg);
    const double m = cfg.constants.mass;
    const double u0 = cfg.u0();
    const double s02 = cfg.sigma0 * cfg.sigma0;
    const double s2 = sigma2_of(cfg, t);
    // sigma_ddot/sigma - (sigma_dot/sigma)^2 = u0^2 (sigma0^2 - u0^2 t^2)/sigma^4
    const double bracket = u0 * u0 * (s02 - u0 * u0 * t * t) / (s2 * s2);
    return double(checked_sign(sign)) * convention_factor(convention) * m * d.delta_X * bracket;
}

double large_time_shift(const SlitConfig& cfg, const ModularDecomposition& d, double t,
                        int sign, ShiftConvention convention) {
    require_symmetric(cfg);
    if (t == 0.0)
        throw UnsupportedConfiguration("large-time asymptote undefined at t = 0");
    const double m = cfg.constants.mass;
    return double(checked_sign(sign)) * convention_factor(convention) * m * d.delta_X / t;
}

}  // namespace dslit
