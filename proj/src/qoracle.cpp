#include "dslit/qoracle.hpp"

#include <algorithm>
#include <cmath>

namespace dslit {

namespace {

std::pair<double, double> quad_domain(const SlitConfig& cfg, double t, double pad_lo = 0.0,
                                      double pad_hi = 0.0) {
    const auto s = detail::make_slice(cfg, t);
    const double sigma = std::sqrt(s.sigma2);
    const double lo = std::min(s.c1, s.c2) - 12.0 * sigma - pad_lo;
    const double hi = std::max(s.c1, s.c2) + 12.0 * sigma + pad_hi;
    return {lo, hi};
}

}  // namespace

std::pair<ChannelWave, ChannelWave> assemble_wavefunctions(const SlitConfig& cfg, double t) {
    const auto s = detail::make_slice(cfg, t);
    ChannelWave one, two;
    one.weight = s.w1;
    one.center = s.c1;
    one.drift = s.v1;
    two.weight = s.w2;
    two.center = s.c2;
    two.drift = s.v2;
    for (ChannelWave* w : {&one, &two}) {
        w->sigma2 = s.sigma2;
        w->fluct = s.fluct;
        w->mass = s.mass;
        w->hbar = s.hbar;
        w->amp_norm = std::sqrt(s.norm);
        w->extra_phase = 0.0;
    }
    one.extra_phase = s.ramp_phase * s.hbar;  // ramp acts on channel 1 only
    return {one, two};
}

double quantum_current(const SlitConfig& cfg, double x, double t, GradientMode mode,
                       double fd_step) {
    const auto [one, two] = assemble_wavefunctions(cfg, t);
    const std::complex<double> psi = one.psi(x) + two.psi(x);
    std::complex<double> grad;
    if (mode == GradientMode::analytic) {
        grad = one.grad_psi(x) + two.grad_psi(x);
    } else {
        const std::complex<double> hi = one.psi(x + fd_step) + two.psi(x + fd_step);
        const std::complex<double> lo = one.psi(x - fd_step) + two.psi(x - fd_step);
        grad = (hi - lo) / (2.0 * fd_step);
    }
    const double hbar = cfg.constants.hbar;
    const double mass = cfg.constants.mass;
    return (hbar / mass) * std::imag(std::conj(psi) * grad);
}

double expectation_moment(const SlitConfig& cfg, double t, double phi, MomentKind kind,
                          int order, const QuadratureOptions& opts) {
    if (order != 1 && order != 2)
        throw UnsupportedConfiguration("expectation_moment supports order 1 or 2 only");
    const auto [one, two] = assemble_wavefunctions(cfg, t);
    const std::complex<double> rot = std::polar(1.0, phi);
    const auto psi_phi = [&](double x) { return one.psi(x) + rot * two.psi(x); };
    const auto grad_phi = [&](double x) { return one.grad_psi(x) + rot * two.grad_psi(x); };

    const auto [lo, hi] = quad_domain(cfg, t);
    const double norm = integrate([&](double x) { return std::norm(psi_phi(x)); }, lo, hi,
                                  opts).value;

    double raw = 0.0;
    const double hbar = cfg.constants.hbar;
    if (kind == MomentKind::position) {
        raw = integrate(
                  [&](double x) {
                      const double w = std::norm(psi_phi(x));
                      return order == 1 ? w * x : w * x * x;
                  },
                  lo, hi, opts)
                  .value;
    } else if (order == 1) {
        // Re psi* (-i hbar) psi' = hbar Im(psi* psi')
        raw = hbar * integrate(
                         [&](double x) {
                             return std::imag(std::conj(psi_phi(x)) * grad_phi(x));
                         },
                         lo, hi, opts)
                         .value;
    } else {
        // <p^2> = hbar^2 | psi' |^2 integrated (boundary terms vanish)
        raw = hbar * hbar *
              integrate([&](double x) { return std::norm(grad_phi(x)); }, lo, hi, opts).value;
    }
    return raw / norm;
}

std::complex<double> shift_operator_expectation(const SlitConfig& cfg, double t, double phi,
                                                const QuadratureOptions& opts) {
    const auto [one, two] = assemble_wavefunctions(cfg, t);
    const std::complex<double> rot = std::polar(1.0, phi);
    const auto psi_phi = [&](double x) { return one.psi(x) + rot * two.psi(x); };
    const double shift = 2.0 * cfg.half_separation;  // inter-slit distance

    // psi(x + 2X) drags the support down by 2X; widen the domain accordingly.
    const auto [lo, hi] = quad_domain(cfg, t, shift, 0.0);
    const auto num = integrate_complex(
        [&](double x) { return std::conj(psi_phi(x)) * psi_phi(x + shift); }, lo, hi, opts);
    const double den =
        integrate([&](double x) { return std::norm(psi_phi(x)); }, lo, hi, opts).value;
    return num.value / den;
}

double osmotic_unbiasedness(const PacketParams& p, double t, const QuadratureOptions& opts) {
    const double sigma = sigma_at(p, t);
    const double mean = p.mean_at(t);
    const double m = p.constants.mass;
    return integrate(
               [&](double x) {
                   return marginal_density(p, x, t) * m * average_osmotic_velocity(p, x, t);
               },
               mean - 12.0 * sigma, mean + 12.0 * sigma, opts)
        .value;
}

double osmotic_unbiasedness(const SlitConfig& cfg, double t, const QuadratureOptions& opts) {
    const auto [one, two] = assemble_wavefunctions(cfg, t);
    const double m = cfg.constants.mass;
    const double D = cfg.constants.diffusivity();
    const auto [lo, hi] = quad_domain(cfg, t);
    // P m u with u = -D grad(P)/P collapses to -m D grad(P); the density is
    // |psi1 + psi2|^2 so grad(P) = 2 Re(psi* psi').
    return integrate(
               [&](double x) {
                   const std::complex<double> psi = one.psi(x) + two.psi(x);
                   const std::complex<double> grad = one.grad_psi(x) + two.grad_psi(x);
                   return -m * D * 2.0 * std::real(std::conj(psi) * grad);
               },
               lo, hi, opts)
        .value;
}

}  // namespace dslit
