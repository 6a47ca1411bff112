#include <cmath>
#include <complex>

#include "doctest.h"

#include "dslit/doubleslit.hpp"
#include "dslit/qoracle.hpp"

using namespace dslit;

namespace {

constexpr double kPi = 3.14159265358979323846;

SlitConfig wide_slits(double separation) {
    SlitConfig cfg;
    cfg.half_separation = separation;
    return cfg;
}

}  // namespace

TEST_CASE("channel waves reproduce the marginal densities and velocities") {
    SlitConfig cfg;
    cfg.v_x = 0.2;
    cfg.weight1 = 1.5;
    cfg.weight2 = 0.5;
    const double t = 2.5;
    const auto [one, two] = assemble_wavefunctions(cfg, t);
    const PacketParams p1 = cfg.channel(1);
    const PacketParams p2 = cfg.channel(2);

    for (double x : {-2.0, 0.0, 1.3, 4.0}) {
        CHECK(one.R(x) * one.R(x) ==
              doctest::Approx(1.5 * 1.5 * marginal_density(p1, x, t)).epsilon(1e-13));
        CHECK(two.R(x) * two.R(x) ==
              doctest::Approx(0.5 * 0.5 * marginal_density(p2, x, t)).epsilon(1e-13));
        CHECK(one.grad_S(x) / one.mass ==
              doctest::Approx(mean_velocity_field(p1, x, t)).epsilon(1e-13));
        CHECK(two.grad_S(x) / two.mass ==
              doctest::Approx(mean_velocity_field(p2, x, t)).epsilon(1e-13));
        CHECK(std::norm(one.psi(x)) ==
              doctest::Approx(one.R(x) * one.R(x)).epsilon(1e-13));
    }
}

TEST_CASE("phase difference of the channel actions is the relative phase") {
    SlitConfig cfg;
    cfg.v_x = 0.4;
    cfg.ramp = PhaseRamp{5.0 * kPi, 4.0, 6.0, RampShape::linear};
    for (auto [x, t] : {std::pair{0.8, 1.0}, {-1.6, 5.0}, {2.2, 8.0}}) {
        const auto [one, two] = assemble_wavefunctions(cfg, t);
        const double lhs = (one.S(x) - two.S(x)) / cfg.constants.hbar;
        CHECK(lhs == doctest::Approx(relative_phase(cfg, x, t)).epsilon(1e-12));
    }
}

TEST_CASE("quantum current equals the velocity-weighted classical current") {
    SlitConfig plain;
    SlitConfig drifted;
    drifted.v_x = 0.3;
    drifted.weight1 = 1.2;
    drifted.weight2 = 0.8;
    SlitConfig ramped;
    ramped.ramp = PhaseRamp{3.0 * kPi, 2.0, 5.0, RampShape::linear};

    for (const SlitConfig& cfg : {plain, drifted, ramped}) {
        for (auto [x, t] : {std::pair{0.0, 1.0}, {0.9, 2.0}, {-1.7, 3.5}, {2.8, 7.0},
                            {-4.0, 9.5}}) {
            const FieldSample f = average_current(cfg, x, t);
            if (f.P_tot < 1e-12) continue;
            const double q = quantum_current(cfg, x, t);
            CHECK(std::abs(f.J_x - q) / f.P_tot <= 1e-12);
        }
    }
}

TEST_CASE("finite-difference gradient mode agrees with the analytic one") {
    SlitConfig cfg;
    cfg.ramp = PhaseRamp{kPi, 1.0, 2.0, RampShape::linear};
    for (auto [x, t] : {std::pair{0.5, 1.5}, {-1.1, 4.0}}) {
        const double analytic = quantum_current(cfg, x, t, GradientMode::analytic);
        const double fd = quantum_current(cfg, x, t, GradientMode::finite_difference);
        const double scale = intensity(cfg, x, t);
        CHECK(std::abs(analytic - fd) / scale <= 1e-8);
    }
}

TEST_CASE("moments are phase independent for well-separated slits") {
    const SlitConfig cfg = wide_slits(10.0);
    const double t = 1.0;
    for (MomentKind kind : {MomentKind::position, MomentKind::momentum}) {
        for (int order : {1, 2}) {
            double lo = 1e300, hi = -1e300;
            for (double phi : {0.0, 0.5 * kPi, kPi, 1.5 * kPi}) {
                const double m = expectation_moment(cfg, t, phi, kind, order);
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            CHECK(hi - lo <= 1e-6);
        }
    }
}

TEST_CASE("separated-slit moments take their free-packet values") {
    const SlitConfig cfg = wide_slits(10.0);
    const double t = 1.0;
    const double s2 = sigma_at(cfg.channel(1), t) * sigma_at(cfg.channel(1), t);
    CHECK(expectation_moment(cfg, t, 0.0, MomentKind::position, 1) ==
          doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    CHECK(expectation_moment(cfg, t, 0.0, MomentKind::position, 2) ==
          doctest::Approx(100.0 + s2).epsilon(1e-8));
    CHECK(expectation_moment(cfg, t, 0.0, MomentKind::momentum, 1) ==
          doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    CHECK(expectation_moment(cfg, t, 0.0, MomentKind::momentum, 2) ==
          doctest::Approx(0.25).epsilon(1e-8));
    CHECK_THROWS_AS(expectation_moment(cfg, t, 0.0, MomentKind::position, 3),
                    UnsupportedConfiguration);
}

TEST_CASE("single open slit carries its drift momentum") {
    SlitConfig cfg;
    cfg.v_x = 2.0;
    cfg.weight2 = 0.0;
    CHECK(expectation_moment(cfg, 1.5, 0.0, MomentKind::momentum, 1) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(expectation_moment(cfg, 1.5, 0.0, MomentKind::momentum, 2) ==
          doctest::Approx(4.25).epsilon(1e-8));  // (m v)^2 + m^2 u0^2
}

TEST_CASE("overlapping slits leak phase into the first momentum moment") {
    const SlitConfig cfg = wide_slits(1.0);
    const double t = 0.0;
    // <p>_phi = -hbar (X/sigma0^2) ov sin(phi) / (2 + 2 ov cos(phi)), ov = exp(-X^2/2)
    const double ov = std::exp(-0.5);
    const double expect = -ov / 2.0;
    CHECK(expectation_moment(cfg, t, 0.5 * kPi, MomentKind::momentum, 1) ==
          doctest::Approx(expect).epsilon(1e-6));
    CHECK(expectation_moment(cfg, t, 0.0, MomentKind::momentum, 1) ==
          doctest::Approx(0.0).epsilon(1e-9).scale(1.0));

    double lo = 1e300, hi = -1e300;
    for (double phi : {0.0, 0.5 * kPi, kPi, 1.5 * kPi}) {
        const double m = expectation_moment(cfg, t, phi, MomentKind::momentum, 1);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    CHECK(hi - lo > 1e-3);
}

TEST_CASE("shift operator expectation approaches exp(-i phi)/2") {
    const SlitConfig cfg = wide_slits(10.0);
    const double t = 1.0;
    for (double phi : {0.0, kPi / 3.0, kPi}) {
        const std::complex<double> got = shift_operator_expectation(cfg, t, phi);
        const std::complex<double> expect = 0.5 * std::polar(1.0, -phi);
        CHECK(std::abs(got - expect) <= 1e-6);
        // adding the conjugate shift collapses to cos(phi)
        CHECK(std::abs(got + std::conj(got) - std::cos(phi)) <= 1e-6);
    }
}

TEST_CASE("shift operator feels the channel overlap at small separation") {
    const SlitConfig cfg = wide_slits(1.0);
    const std::complex<double> got = shift_operator_expectation(cfg, 0.0, 0.0);
    CHECK(std::abs(got - 0.5) > 1e-3);
}

TEST_CASE("osmotic momentum is density-weighted unbiased") {
    PacketParams p;
    p.v_x = 1.5;
    CHECK(std::abs(osmotic_unbiasedness(p, 2.0)) <= 1e-10);
    CHECK(std::abs(osmotic_unbiasedness(p, 0.3)) <= 1e-10);

    SlitConfig cfg;
    cfg.ramp = PhaseRamp{5.0 * kPi, 4.0, 6.0, RampShape::linear};
    CHECK(std::abs(osmotic_unbiasedness(cfg, 5.0)) <= 1e-10);
    CHECK(std::abs(osmotic_unbiasedness(cfg, 1.0)) <= 1e-10);
}
