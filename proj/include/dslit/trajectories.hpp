#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dslit/doubleslit.hpp"

namespace dslit {

enum class Seeding { equal_probability_quantiles, uniform_in_x };
enum class Integrator { rk4, euler };

struct TrajectorySpec {
    int n_trajectories = 100;
    Seeding seeding = Seeding::equal_probability_quantiles;
    double x_min = -10.0;
    double x_max = 10.0;
    double t_start = 1e-3;
    double t_end = 10.0;
    double dt = 2e-3;  // config loader defaults this to 1e-3 * sigma0/u0
    Integrator integrator = Integrator::rk4;
    // Keep every record_stride-th step (plus the final one). Recording every
    // step for 1e5 trajectories is gigabytes; the screen histogram only needs
    // sparse snapshots.
    int record_stride = 1;

    void validate() const;
};

struct TrajectoryFlags {
    static constexpr std::uint8_t ok = 0;
    static constexpr std::uint8_t entered_tail = 1;
};

struct TrajectoryEnsemble {
    std::vector<double> times;      // recorded times, strictly increasing
    int n_trajectories = 0;
    std::vector<double> positions;  // row-major [trajectory][record]
    std::vector<std::uint8_t> flags;

    double at(int traj, int record) const {
        return positions[size_t(traj) * times.size() + record];
    }
    int n_records() const { return int(times.size()); }
};

struct CrossingReport {
    long axis_crossings = 0;    // sign changes across x = 0
    long order_violations = 0;  // adjacent-pair inversions of the initial order
};

struct Histogram {
    std::vector<double> edges;    // n_bins + 1
    std::vector<double> density;  // normalized: sum(density * width) = 1
    long counted = 0;
};

// Seed positions: probability quantiles ((j - 1/2)/n) of P_tot(., t) computed
// on a fine grid over [x_min, x_max], or evenly spaced positions.
std::vector<double> make_seeds(const SlitConfig& cfg, const TrajectorySpec& spec);

// March every seed through dx/dt = v_tot_x(x, t) in lockstep. Deterministic;
// a trajectory that leaves the supported region (P_tot below the tail
// threshold) keeps its last reliable velocity and is flagged.
TrajectoryEnsemble integrate_ensemble(const SlitConfig& cfg, const TrajectorySpec& spec);

CrossingReport no_crossing_report(const TrajectoryEnsemble& ensemble);

// Histogram of positions at the recorded time nearest t_screen, tail-flagged
// trajectories excluded, over the populated range.
Histogram screen_histogram(const TrajectoryEnsemble& ensemble, double t_screen, int n_bins);

// L1 distance between the histogram and a reference density evaluated at bin
// centers: sum |h_b - ref(center_b)| * width_b.
double histogram_l1(const Histogram& hist, const std::function<double(double)>& ref_density);

}  // namespace dslit
