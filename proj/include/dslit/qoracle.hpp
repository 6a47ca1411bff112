#pragma once

#include <complex>
#include <utility>

#include "dslit/doubleslit.hpp"
#include "dslit/quadrature.hpp"

namespace dslit {

// One channel's amplitude R and phase S at a fixed time, in polar form
// psi = R exp(i S / hbar). Gradients are analytic.
struct ChannelWave {
    double weight;
    double center;       // centroid at this time
    double drift;        // channel drift velocity
    double sigma2;       // sigma(t)^2
    double fluct;        // u0^2 t / sigma^2
    double extra_phase;  // ramp contribution to S, in action units
    double mass;
    double hbar;
    double amp_norm;     // (2 pi sigma^2)^(-1/4)

    double R(double x) const {
        const double d = x - center;
        return weight * amp_norm * std::exp(-d * d / (4.0 * sigma2));
    }
    double grad_R(double x) const { return -R(x) * (x - center) / (2.0 * sigma2); }
    // S = m v x + (m u0^2 t / 2)(x - c)^2 / sigma^2 + extra; additive constant
    // fixed so S(0, t=0) = 0.
    double S(double x) const {
        const double d = x - center;
        return mass * drift * x + 0.5 * mass * fluct * d * d + extra_phase;
    }
    double grad_S(double x) const { return mass * (drift + (x - center) * fluct); }
    std::complex<double> psi(double x) const {
        return std::polar(R(x), S(x) / hbar);
    }
    std::complex<double> grad_psi(double x) const {
        const std::complex<double> i{0.0, 1.0};
        return (grad_R(x) + i * R(x) * grad_S(x) / hbar) *
               std::exp(i * (S(x) / hbar));
    }
};

enum class GradientMode { analytic, finite_difference };
enum class MomentKind { position, momentum };

// Polar-form channels at time t; channel 1 carries the ramp phase.
std::pair<ChannelWave, ChannelWave> assemble_wavefunctions(const SlitConfig& cfg, double t);

// (1/m) Re{ psi* (-i hbar d/dx) psi } with psi = psi1 + psi2. The independent
// route against average_current; shares no current algebra with it.
double quantum_current(const SlitConfig& cfg, double x, double t,
                       GradientMode mode = GradientMode::analytic,
                       double fd_step = 1e-6);

// Normalized <psi_phi| O |psi_phi> with psi_phi = psi1 + e^{i phi} psi2,
// O = x^order or p^order (order 1 or 2). Real part by construction.
double expectation_moment(const SlitConfig& cfg, double t, double phi, MomentKind kind,
                          int order, const QuadratureOptions& opts = {});

// Normalized integral psi_phi*(x) psi_phi(x + 2X) dx: expectation of the
// momentum shift operator over the inter-slit distance 2X. Approaches
// e^{-i phi}/2 once the channels stop overlapping.
std::complex<double> shift_operator_expectation(const SlitConfig& cfg, double t, double phi,
                                                const QuadratureOptions& opts = {});

// Integral of P times the osmotic momentum m*u; vanishes because the osmotic
// field is density-weighted unbiased. Single-packet and two-channel versions.
double osmotic_unbiasedness(const PacketParams& p, double t,
                            const QuadratureOptions& opts = {});
double osmotic_unbiasedness(const SlitConfig& cfg, double t,
                            const QuadratureOptions& opts = {});

}  // namespace dslit
