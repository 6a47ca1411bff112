#include "dslit/doubleslit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dslit {

void PhaseRamp::validate() const {
    if (!(t1 < t2))
        throw ValidationError("ramp_window", "phase ramp requires t1 < t2");
    if (!std::isfinite(delta_phi_total) || !std::isfinite(t1) || !std::isfinite(t2))
        throw ValidationError("ramp_finite", "phase ramp parameters must be finite");
}

PacketParams SlitConfig::channel(int index) const {
    const double s = channel_sign();
    PacketParams p;
    p.constants = constants;
    p.sigma0 = sigma0;
    if (index == 1) {
        p.center0 = s * half_separation;
        p.v_x = s * v_x;
    } else {
        p.center0 = -s * half_separation;
        p.v_x = -s * v_x;
    }
    return p;
}

void SlitConfig::validate() const {
    constants.validate();
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw ValidationError("sigma0_positive", "sigma0 must be positive and finite");
    if (!(half_separation > 0.0) || !std::isfinite(half_separation))
        throw ValidationError("half_separation_positive",
                              "slit half separation X must be positive");
    if (!std::isfinite(v_x) || !std::isfinite(v_y))
        throw ValidationError("velocity_finite", "v_x and v_y must be finite");
    if (weight1 < 0.0 || weight2 < 0.0)
        throw ValidationError("weights_nonnegative", "amplitude weights must be >= 0");
    if (weight1 == 0.0 && weight2 == 0.0)
        throw ValidationError("weights_nonzero", "at least one amplitude weight must be > 0");
    if (ramp) ramp->validate();
}

void GridSpec::validate() const {
    if (!(x_min < x_max))
        throw ValidationError("grid_x_range", "grid requires x_min < x_max");
    if (n_x < 2) throw ValidationError("grid_n_x", "grid requires n_x >= 2");
    if (!(t_min <= t_max))
        throw ValidationError("grid_t_range", "grid requires t_min <= t_max");
    if (n_t < 1) throw ValidationError("grid_n_t", "grid requires n_t >= 1");
}

namespace detail {

TimeSlice make_slice(const SlitConfig& cfg, double t) {
    TimeSlice s;
    const double sign = cfg.channel_sign();
    const double D = cfg.constants.diffusivity();
    const double u0 = cfg.u0();
    s.t = t;
    s.sigma2 = cfg.sigma0 * cfg.sigma0 + u0 * u0 * t * t;
    s.fluct = u0 * u0 * t / s.sigma2;
    s.c1 = sign * (cfg.half_separation + cfg.v_x * t);
    s.c2 = -s.c1;
    s.v1 = sign * cfg.v_x;
    s.v2 = -s.v1;
    s.w1 = cfg.weight1;
    s.w2 = cfg.weight2;
    s.norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s.sigma2);
    s.mass = cfg.constants.mass;
    s.hbar = cfg.constants.hbar;
    s.diffusivity = D;
    s.v_y = cfg.v_y;
    // phi12 = (m/hbar)(vbar1 - vbar2) x + ramp; the bracket is x-independent.
    s.phase_slope =
        sign * (2.0 * s.mass * cfg.v_x / s.hbar -
                (cfg.half_separation + cfg.v_x * t) * (u0 * u0 * t / s.sigma2) / D);
    s.ramp_phase = cfg.ramp ? cfg.ramp->at(t) : 0.0;
    s.du21 = D * (s.c1 - s.c2) / s.sigma2;
    return s;
}

FieldSample sample_at(const TimeSlice& s, double x, double density_floor) {
    const double d1 = x - s.c1;
    const double d2 = x - s.c2;
    if (s.w1 == 0.0 || s.w2 == 0.0) {
        // one slit covered: plain packet transport, no interference machinery
        const bool first = s.w2 == 0.0;
        const double w = first ? s.w1 : s.w2;
        const double d = first ? d1 : d2;
        const double vb = (first ? s.v1 : s.v2) + d * s.fluct;
        const double P = w * w * s.norm * std::exp(-d * d / (2.0 * s.sigma2));
        FieldSample out;
        out.P_tot = P;
        out.J_e = 0.0;
        out.J_x = P * vb;
        out.J_y = P * s.v_y;
        if (P >= density_floor) {
            out.v_tot_x = vb;
            out.v_tot_y = s.v_y;
        } else {
            out.degenerate = true;
            out.v_tot_x = 0.0;
            out.v_tot_y = 0.0;
        }
        return out;
    }
    const double e1 = -d1 * d1 / (2.0 * s.sigma2);
    const double e2 = -d2 * d2 / (2.0 * s.sigma2);
    const double P1 = s.w1 * s.w1 * s.norm * std::exp(e1);
    const double P2 = s.w2 * s.w2 * s.norm * std::exp(e2);
    // sqrt(P1 P2) through the averaged exponent; survives where the plain
    // product would underflow.
    const double cross = s.w1 * s.w2 * s.norm * std::exp(0.5 * (e1 + e2));
    const double phi = s.phase_slope * x + s.ramp_phase;
    const double cphi = std::cos(phi);
    const double sphi = std::sin(phi);
    const double vb1 = s.v1 + d1 * s.fluct;
    const double vb2 = s.v2 + d2 * s.fluct;

    FieldSample out;
    out.P_tot = P1 + P2 + 2.0 * cross * cphi;
    if (out.P_tot < 0.0) out.P_tot = 0.0;  // clamp -0.0/rounding at deep nodes
    out.J_e = cross * s.du21 * sphi;
    out.J_x = P1 * vb1 + P2 * vb2 + cross * (vb1 + vb2) * cphi + out.J_e;
    out.J_y = out.P_tot * s.v_y;
    if (out.P_tot >= density_floor) {
        out.v_tot_x = out.J_x / out.P_tot;
        out.v_tot_y = s.v_y;
    } else {
        out.degenerate = true;
        out.v_tot_x = 0.0;
        out.v_tot_y = 0.0;
    }
    return out;
}

}  // namespace detail

double relative_phase(const SlitConfig& cfg, double x, double t) {
    const auto s = detail::make_slice(cfg, t);
    return s.phase_slope * x + s.ramp_phase;
}

double intensity(const SlitConfig& cfg, double x, double t) {
    const auto s = detail::make_slice(cfg, t);
    return detail::sample_at(s, x, cfg.density_floor).P_tot;
}

FieldSample average_current(const SlitConfig& cfg, double x, double t) {
    const auto s = detail::make_slice(cfg, t);
    return detail::sample_at(s, x, cfg.density_floor);
}

double entangling_current(const SlitConfig& cfg, double x, double t) {
    const auto s = detail::make_slice(cfg, t);
    const double d1 = x - s.c1;
    const double d2 = x - s.c2;
    const double R1 = s.w1 * std::sqrt(s.norm) * std::exp(-d1 * d1 / (4.0 * s.sigma2));
    const double R2 = s.w2 * std::sqrt(s.norm) * std::exp(-d2 * d2 / (4.0 * s.sigma2));
    const double gR1 = -R1 * d1 / (2.0 * s.sigma2);
    const double gR2 = -R2 * d2 / (2.0 * s.sigma2);
    const double phi = s.phase_slope * x + s.ramp_phase;
    return (s.hbar / s.mass) * (R2 * gR1 - R1 * gR2) * std::sin(phi);
}

double velocity_field(const SlitConfig& cfg, double x, double t) {
    const auto sample = average_current(cfg, x, t);
    if (sample.degenerate)
        throw DegenerateDensity("P_tot below density floor at x=" + std::to_string(x) +
                                ", t=" + std::to_string(t));
    return sample.v_tot_x;
}

FieldGrid sample_grid(const SlitConfig& cfg, const GridSpec& grid) {
    cfg.validate();
    grid.validate();
    FieldGrid out;
    out.spec = grid;
    out.cells.resize(size_t(grid.n_x) * grid.n_t);
    out.flags.assign(out.cells.size(), CellFlag::ok);

    double max_p = 0.0;
    for (int it = 0; it < grid.n_t; ++it) {
        const auto slice = detail::make_slice(cfg, grid.t_at(it));
        for (int ix = 0; ix < grid.n_x; ++ix) {
            auto& cell = out.cells[size_t(it) * grid.n_x + ix];
            cell = detail::sample_at(slice, grid.x_at(ix), cfg.density_floor);
            if (cell.P_tot > max_p) max_p = cell.P_tot;
        }
    }
    const double tail_cut = cfg.tail_rel_threshold * max_p;
    for (size_t k = 0; k < out.cells.size(); ++k) {
        if (out.cells[k].degenerate)
            out.flags[k] = CellFlag::degenerate;
        else if (out.cells[k].P_tot < tail_cut)
            out.flags[k] = CellFlag::tail;
    }
    return out;
}

}  // namespace dslit
