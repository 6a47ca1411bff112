#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dslit/packet.hpp"

namespace dslit {

enum class RampShape { linear };

// Extra phase applied at channel 1 only: zero up to t1, the full delta_phi_total
// from t2 on, linear in between.
struct PhaseRamp {
    double delta_phi_total = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    RampShape shape = RampShape::linear;

    double at(double t) const {
        if (t <= t1) return 0.0;
        if (t >= t2) return delta_phi_total;
        return delta_phi_total * (t - t1) / (t2 - t1);
    }
    void validate() const;
};

// Two coherent Gaussian channels released from slits at +-X. Channel 1 sits at
// +(X + v_x t) and drifts outward with +v_x, channel 2 mirrors it; both share
// sigma0 and the forward speed v_y. flip_channels swaps the labels (and takes
// the ramp to the -X side); no observable changes, only the sign of the
// relative phase.
struct SlitConfig {
    PhysicalConstants constants;
    double sigma0 = 1.0;
    double half_separation = 1.0;  // X
    double v_x = 0.0;
    double v_y = 1.0;
    double weight1 = 1.0;
    double weight2 = 1.0;
    std::optional<PhaseRamp> ramp;
    bool flip_channels = false;

    // Below this absolute density the ratio J/P is treated as undefined.
    double density_floor = 1e-300;
    // Grid cells with P_tot below this fraction of the grid maximum get the
    // tail flag.
    double tail_rel_threshold = 1e-30;

    double u0() const { return constants.diffusivity() / sigma0; }
    double channel_sign() const { return flip_channels ? -1.0 : 1.0; }
    // Per-channel packet view (index 1 or 2), used by the single-packet ops.
    PacketParams channel(int index) const;
    void validate() const;
};

enum class CellFlag : std::uint8_t { ok = 0, tail = 1, degenerate = 2 };

// All local observables at one (x, t) node. J_e is the entangling part of J_x
// (the sin phi12 cross term); velocity components are J/P_tot and meaningless
// when degenerate is set.
struct FieldSample {
    double P_tot = 0.0;
    double J_x = 0.0;
    double J_y = 0.0;
    double J_e = 0.0;
    double v_tot_x = 0.0;
    double v_tot_y = 0.0;
    bool degenerate = false;
};

struct GridSpec {
    double x_min = -10.0;
    double x_max = 10.0;
    int n_x = 512;
    double t_min = 0.0;
    double t_max = 10.0;
    int n_t = 256;

    double x_at(int i) const {
        return n_x == 1 ? x_min : x_min + (x_max - x_min) * i / (n_x - 1);
    }
    double t_at(int j) const {
        return n_t == 1 ? t_min : t_min + (t_max - t_min) * j / (n_t - 1);
    }
    void validate() const;
};

// Row-major field samples: index (it, ix) -> it * n_x + ix.
struct FieldGrid {
    GridSpec spec;
    std::vector<FieldSample> cells;
    std::vector<CellFlag> flags;

    const FieldSample& at(int it, int ix) const { return cells[size_t(it) * spec.n_x + ix]; }
    CellFlag flag(int it, int ix) const { return flags[size_t(it) * spec.n_x + ix]; }
};

namespace detail {

// Everything about the two channels that depends on t only, shared by the
// direct field formulas, the wavefunction route and the trajectory stepper.
struct TimeSlice {
    double t;
    double sigma2;
    double fluct;        // u0^2 t / sigma^2
    double c1, c2;       // channel centroids
    double v1, v2;       // channel drifts
    double w1, w2;
    double norm;         // 1/sqrt(2 pi sigma^2)
    double phase_slope;  // d phi12 / dx (x-independent)
    double ramp_phase;   // extra phase at channel 1
    double du21;         // ubar_2 - ubar_1 = D (c1 - c2)/sigma^2, x-independent
    double v_y;
    double diffusivity;
    double mass;
    double hbar;
};

TimeSlice make_slice(const SlitConfig& cfg, double t);

// Field sample from a prepared slice; the workhorse inner loop.
FieldSample sample_at(const TimeSlice& s, double x, double density_floor);

}  // namespace detail

// phi12(x,t) = S1 - S2 in units of hbar:
//   2 m v_x x / hbar - (X + v_x t) x (1/D)(u0^2 t / sigma^2) + ramp(t),
// sign-flipped when the channels are swapped (the ramp term stays put).
double relative_phase(const SlitConfig& cfg, double x, double t);

// P_tot = P1 + P2 + 2 sqrt(P1 P2) cos phi12, with P_i = w_i^2 * marginal_i.
double intensity(const SlitConfig& cfg, double x, double t);

// Total averaged current and its decomposition. Never throws on low density:
// a degenerate cell keeps its J components and marks the velocities unusable.
FieldSample average_current(const SlitConfig& cfg, double x, double t);

// The sin phi12 cross term alone, computed from the amplitude gradients:
// (hbar/m)(R2 dR1/dx - R1 dR2/dx) sin phi12.
double entangling_current(const SlitConfig& cfg, double x, double t);

// x-component of J/P_tot. Throws DegenerateDensity below the density floor.
double velocity_field(const SlitConfig& cfg, double x, double t);

// Deterministic row-major sweep; cells below tail_rel_threshold * max(P_tot)
// get the tail flag, cells below the density floor the degenerate flag.
FieldGrid sample_grid(const SlitConfig& cfg, const GridSpec& grid);

}  // namespace dslit
