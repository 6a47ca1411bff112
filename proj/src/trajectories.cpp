#include "dslit/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dslit {

void TrajectorySpec::validate() const {
    if (n_trajectories < 1)
        throw ValidationError("trajectories_count", "need at least one trajectory");
    if (!(x_min < x_max))
        throw ValidationError("trajectories_x_range", "seed range requires x_min < x_max");
    if (!(t_start < t_end))
        throw ValidationError("trajectories_t_range", "requires t_start < t_end");
    if (!(dt > 0.0)) throw ValidationError("trajectories_dt", "requires dt > 0");
    if (record_stride < 1)
        throw ValidationError("trajectories_stride", "record_stride must be >= 1");
}

namespace {

// Conservative bound on max_x P_tot at a given time: (w1 + w2)^2 / sqrt(2 pi sigma^2).
double peak_bound(const detail::TimeSlice& s) {
    const double w = s.w1 + s.w2;
    return w * w * s.norm;
}

double stage_velocity(const detail::TimeSlice& s, double x, double floor, double fallback) {
    const FieldSample f = detail::sample_at(s, x, floor);
    return f.degenerate ? fallback : f.v_tot_x;
}

}  // namespace

std::vector<double> make_seeds(const SlitConfig& cfg, const TrajectorySpec& spec) {
    cfg.validate();
    spec.validate();
    const int n = spec.n_trajectories;
    std::vector<double> seeds(n);

    if (spec.seeding == Seeding::uniform_in_x) {
        for (int j = 0; j < n; ++j)
            seeds[j] = n == 1 ? 0.5 * (spec.x_min + spec.x_max)
                              : spec.x_min + (spec.x_max - spec.x_min) * j / double(n - 1);
        return seeds;
    }

    // Equal-probability quantiles of P_tot(., t_start): trapezoid CDF on a fine
    // grid, inverted by monotone interpolation.
    const int grid_n = 200001;
    const auto slice = detail::make_slice(cfg, spec.t_start);
    const double h = (spec.x_max - spec.x_min) / double(grid_n - 1);
    std::vector<double> p(grid_n), cdf(grid_n);
    for (int i = 0; i < grid_n; ++i)
        p[i] = detail::sample_at(slice, spec.x_min + h * i, cfg.density_floor).P_tot;
    cdf[0] = 0.0;
    for (int i = 1; i < grid_n; ++i) cdf[i] = cdf[i - 1] + 0.5 * (p[i - 1] + p[i]) * h;
    const double total = cdf.back();

    int cell = 0;
    for (int j = 0; j < n; ++j) {
        const double target = total * (j + 0.5) / double(n);
        while (cell + 2 < grid_n && cdf[cell + 1] < target) ++cell;
        const double span = cdf[cell + 1] - cdf[cell];
        const double frac = span > 0.0 ? (target - cdf[cell]) / span : 0.5;
        seeds[j] = spec.x_min + h * (cell + frac);
    }
    return seeds;
}

TrajectoryEnsemble integrate_ensemble(const SlitConfig& cfg, const TrajectorySpec& spec) {
    cfg.validate();
    spec.validate();

    const long n_steps = std::max<long>(1, std::llround((spec.t_end - spec.t_start) / spec.dt));
    const double dt = (spec.t_end - spec.t_start) / double(n_steps);
    const bool rk4 = spec.integrator == Integrator::rk4;

    // Per-step channel state, shared across all trajectories.
    std::vector<detail::TimeSlice> at_step, at_mid;
    at_step.reserve(n_steps + 1);
    for (long s = 0; s <= n_steps; ++s)
        at_step.push_back(detail::make_slice(cfg, spec.t_start + dt * double(s)));
    if (rk4) {
        at_mid.reserve(n_steps);
        for (long s = 0; s < n_steps; ++s)
            at_mid.push_back(detail::make_slice(cfg, spec.t_start + dt * (double(s) + 0.5)));
    }

    std::vector<double> x = make_seeds(cfg, spec);
    const int n = spec.n_trajectories;
    std::vector<std::uint8_t> flags(n, TrajectoryFlags::ok);
    std::vector<double> frozen_v(n, 0.0);
    std::vector<std::uint8_t> is_frozen(n, 0);

    TrajectoryEnsemble out;
    out.n_trajectories = n;
    std::vector<long> record_steps;
    for (long s = 0; s <= n_steps; s += spec.record_stride) record_steps.push_back(s);
    if (record_steps.back() != n_steps) record_steps.push_back(n_steps);
    out.times.reserve(record_steps.size());
    for (long s : record_steps) out.times.push_back(spec.t_start + dt * double(s));
    out.positions.resize(size_t(n) * record_steps.size());

    size_t next_record = 0;
    auto record_if_due = [&](long step) {
        if (next_record < record_steps.size() && record_steps[next_record] == step) {
            for (int j = 0; j < n; ++j)
                out.positions[size_t(j) * record_steps.size() + next_record] = x[j];
            ++next_record;
        }
    };
    record_if_due(0);

    for (long s = 0; s < n_steps; ++s) {
        const auto& s0 = at_step[s];
        const auto& s1 = at_step[s + 1];
        const double tail_cut = cfg.tail_rel_threshold * peak_bound(s0);
        for (int j = 0; j < n; ++j) {
            if (is_frozen[j]) {
                x[j] += frozen_v[j] * dt;
                continue;
            }
            const FieldSample here = detail::sample_at(s0, x[j], cfg.density_floor);
            if (here.degenerate || here.P_tot < tail_cut) {
                flags[j] = TrajectoryFlags::entered_tail;
                is_frozen[j] = 1;
                x[j] += frozen_v[j] * dt;
                continue;
            }
            const double k1 = here.v_tot_x;
            frozen_v[j] = k1;
            if (!rk4) {
                x[j] += k1 * dt;
                continue;
            }
            const auto& sm = at_mid[s];
            const double k2 = stage_velocity(sm, x[j] + 0.5 * dt * k1, cfg.density_floor, k1);
            const double k3 = stage_velocity(sm, x[j] + 0.5 * dt * k2, cfg.density_floor, k1);
            const double k4 = stage_velocity(s1, x[j] + dt * k3, cfg.density_floor, k1);
            x[j] += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        record_if_due(s + 1);
    }

    out.flags = std::move(flags);
    return out;
}

CrossingReport no_crossing_report(const TrajectoryEnsemble& ensemble) {
    CrossingReport report;
    const int n = ensemble.n_trajectories;
    const int m = ensemble.n_records();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k + 1 < m; ++k)
            if (ensemble.at(j, k) * ensemble.at(j, k + 1) < 0.0) ++report.axis_crossings;

    // Seeds are monotone, so any breakdown of the full ordering shows up in an
    // adjacent pair ranked by initial position.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ensemble.at(a, 0) < ensemble.at(b, 0);
    });
    for (int k = 0; k < m; ++k)
        for (int i = 0; i + 1 < n; ++i)
            if (ensemble.at(order[i], k) > ensemble.at(order[i + 1], k))
                ++report.order_violations;
    return report;
}

Histogram screen_histogram(const TrajectoryEnsemble& ensemble, double t_screen, int n_bins) {
    if (n_bins < 1) throw ValidationError("histogram_bins", "need at least one bin");
    int best = 0;
    for (int k = 1; k < ensemble.n_records(); ++k)
        if (std::abs(ensemble.times[k] - t_screen) < std::abs(ensemble.times[best] - t_screen))
            best = k;

    std::vector<double> xs;
    xs.reserve(ensemble.n_trajectories);
    for (int j = 0; j < ensemble.n_trajectories; ++j)
        if (ensemble.flags[j] == TrajectoryFlags::ok) xs.push_back(ensemble.at(j, best));
    if (xs.empty()) throw ValidationError("histogram_empty", "no unflagged trajectories");

    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    double lo = *lo_it, hi = *hi_it;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / n_bins;

    Histogram h;
    h.edges.resize(n_bins + 1);
    for (int b = 0; b <= n_bins; ++b) h.edges[b] = lo + width * b;
    std::vector<long> counts(n_bins, 0);
    for (double v : xs) {
        int b = int((v - lo) / width);
        if (b < 0) b = 0;
        if (b >= n_bins) b = n_bins - 1;
        ++counts[b];
    }
    h.density.resize(n_bins);
    h.counted = long(xs.size());
    for (int b = 0; b < n_bins; ++b)
        h.density[b] = double(counts[b]) / (double(h.counted) * width);
    return h;
}

double histogram_l1(const Histogram& hist, const std::function<double(double)>& ref_density) {
    double sum = 0.0;
    for (size_t b = 0; b + 1 < hist.edges.size(); ++b) {
        const double width = hist.edges[b + 1] - hist.edges[b];
        const double center = 0.5 * (hist.edges[b] + hist.edges[b + 1]);
        sum += std::abs(hist.density[b] - ref_density(center)) * width;
    }
    return sum;
}

}  // namespace dslit
