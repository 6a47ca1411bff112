#include "dslit/cml.hpp"

#include <cmath>

namespace dslit {

void LatticeSpec::validate() const {
    if (n_cells < 16) throw ValidationError("lattice_cells", "lattice needs n_cells >= 16");
    if (!(dx > 0.0)) throw ValidationError("lattice_dx", "lattice needs dx > 0");
    if (!(dt > 0.0)) throw ValidationError("lattice_dt", "lattice needs dt > 0");
}

namespace {

// Unchecked stencil application; r must already satisfy the stability bound.
void apply_stencil(std::vector<double>& v, double r, Boundary boundary) {
    const size_t n = v.size();
    double left = v[0];  // v[i-1] before it was overwritten
    const double first = v[0];
    const double last = v[n - 1];
    for (size_t i = 0; i < n; ++i) {
        const double here = v[i];
        double right;
        if (i + 1 < n)
            right = v[i + 1];
        else
            right = boundary == Boundary::reflecting ? last : 0.0;
        double lft = left;
        if (i == 0) lft = boundary == Boundary::reflecting ? first : 0.0;
        v[i] = here + r * (lft - 2.0 * here + right);
        left = here;
    }
}

double chord_diffusivity(const PacketParams& p, double t, double dt) {
    const double u0 = p.u0();
    return u0 * u0 * (t + 0.5 * dt);
}

}  // namespace

LatticeState init_gaussian(const LatticeSpec& spec, const PacketParams& params) {
    spec.validate();
    params.validate();
    const double half_span = 0.5 * spec.n_cells * spec.dx;
    if (half_span < 10.0 * params.sigma0)
        throw DomainTooSmall("lattice domain must span at least +-10 sigma0");

    LatticeState state;
    state.t = 0.0;
    state.x_lo = params.center0 - half_span;
    state.values.resize(spec.n_cells);
    double mass = 0.0;
    for (int i = 0; i < spec.n_cells; ++i) {
        state.values[i] = marginal_density(params, state.cell_center(i, spec.dx), 0.0);
        mass += state.values[i] * spec.dx;
    }
    for (double& v : state.values) v /= mass;
    return state;
}

LatticeState step(const LatticeState& state, const LatticeSpec& spec,
                  const PacketParams& params) {
    spec.validate();
    const double D = chord_diffusivity(params, state.t, spec.dt);
    const double r = D * spec.dt / (spec.dx * spec.dx);
    if (r > 0.5)
        throw StabilityViolation("explicit step needs r = D dt/dx^2 <= 1/2, got r = " +
                                 std::to_string(r));
    LatticeState next = state;
    apply_stencil(next.values, r, spec.boundary);
    next.t = state.t + spec.dt;
    return next;
}

LatticeMoments lattice_moments(const LatticeState& state, const LatticeSpec& spec) {
    LatticeMoments m;
    double m0 = 0.0, m1 = 0.0;
    for (size_t i = 0; i < state.values.size(); ++i) {
        const double x = state.cell_center(int(i), spec.dx);
        m0 += state.values[i];
        m1 += state.values[i] * x;
    }
    m.mass = m0 * spec.dx;
    m.mean = m1 / m0;
    double m2 = 0.0, m4 = 0.0;
    for (size_t i = 0; i < state.values.size(); ++i) {
        const double d = state.cell_center(int(i), spec.dx) - m.mean;
        m2 += state.values[i] * d * d;
        m4 += state.values[i] * d * d * d * d;
    }
    m.variance = m2 / m0;
    m.excess_kurtosis = (m4 / m0) / (m.variance * m.variance) - 3.0;
    return m;
}

namespace {

// Advance to the target time with enough substeps to keep every substep stable.
void advance_to(LatticeState& state, const LatticeSpec& spec, const PacketParams& params,
                double target) {
    const double stride = target - state.t;
    if (!(stride > 0.0)) return;
    const double u0 = params.u0();
    const double d_end = u0 * u0 * target;
    long k = 1 + long(d_end * stride / (0.5 * spec.dx * spec.dx));
    if (k > (1L << 40))
        throw StabilityViolation("lattice stride needs an unreasonable substep count");
    const double dtau = stride / double(k);
    for (long s = 0; s < k; ++s) {
        const double D = chord_diffusivity(params, state.t, dtau);
        const double r = D * dtau / (spec.dx * spec.dx);
        apply_stencil(state.values, r, spec.boundary);
        state.t += dtau;
    }
    state.t = target;  // kill substep roundoff drift
}

long outer_strides(double dt, double t_end) {
    return std::max<long>(1, std::llround(std::ceil(t_end / dt - 1e-12)));
}

}  // namespace

std::vector<DispersionPoint> run_dispersion(const LatticeSpec& spec,
                                            const PacketParams& params, double t_end) {
    if (t_end < 0.0) throw ValidationError("lattice_t_end", "t_end must be >= 0");
    LatticeState state = init_gaussian(spec, params);
    std::vector<DispersionPoint> series;
    auto push = [&]() {
        const auto m = lattice_moments(state, spec);
        series.push_back({state.t, m.variance, m.mass, m.excess_kurtosis});
    };
    push();
    if (t_end == 0.0) return series;
    const long n = outer_strides(spec.dt, t_end);
    for (long k = 0; k < n; ++k) {
        advance_to(state, spec, params, std::min(t_end, spec.dt * double(k + 1)));
        push();
    }
    return series;
}

LatticeState run_to(const LatticeSpec& spec, const PacketParams& params, double t_end) {
    LatticeState state = init_gaussian(spec, params);
    if (t_end <= 0.0) return state;
    const long n = outer_strides(spec.dt, t_end);
    for (long k = 0; k < n; ++k)
        advance_to(state, spec, params, std::min(t_end, spec.dt * double(k + 1)));
    return state;
}

}  // namespace dslit
