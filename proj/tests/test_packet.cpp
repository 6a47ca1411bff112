#include <cmath>

#include "doctest.h"

#include "dslit/packet.hpp"
#include "dslit/quadrature.hpp"

using namespace dslit;

namespace {

PacketParams default_packet() { return PacketParams{}; }

}  // namespace

TEST_CASE("constants tie diffusivity to hbar and mass") {
    PhysicalConstants c;
    CHECK(c.diffusivity() == 0.5);
    c.hbar = 3.0;
    c.mass = 2.0;
    CHECK(c.diffusivity() == doctest::Approx(0.75).epsilon(1e-15));
    c.hbar = -1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.hbar = 1.0;
    c.mass = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("packet validation names the broken invariant") {
    PacketParams p = default_packet();
    p.sigma0 = -1.0;
    try {
        p.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.invariant == "sigma0_positive");
    }
}

TEST_CASE("width grows on the spreading hyperbola") {
    const PacketParams p = default_packet();  // u0 = 0.5
    CHECK(sigma_at(p, 0.0) == 1.0);
    CHECK(sigma_at(p, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(sigma_at(p, -3.0) == sigma_at(p, 3.0));

    PacketParams wide = p;
    wide.sigma0 = 2.0;  // u0 = 0.25
    CHECK(sigma_at(wide, 4.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("ballistic diffusion coefficient grows linearly") {
    const PacketParams p = default_packet();
    CHECK(diffusivity_at(p, 0.0) == 0.0);
    CHECK(diffusivity_at(p, 4.0) == 1.0);
    CHECK_THROWS_AS(diffusivity_at(p, -1.0), ValidationError);

    // sigma^2(t) - sigma0^2 telescopes to D_t * t at any time
    for (double t : {0.25, 1.0, 3.0, 9.5}) {
        const double spread = sigma_at(p, t) * sigma_at(p, t) - 1.0;
        CHECK(spread == doctest::Approx(diffusivity_at(p, t) * t).epsilon(1e-13));
    }
}

TEST_CASE("phase-space density starts at the product-Gaussian peak") {
    const PacketParams p = default_packet();
    const double pi = 3.14159265358979323846;
    CHECK(phase_space_density(p, 0.0, 0.0, 0.0) == doctest::Approx(1.0 / pi).epsilon(1e-15));
}

TEST_CASE("phase-space density marginalizes to the position density") {
    const PacketParams p = default_packet();
    for (auto [x, t] : {std::pair{0.7, 1.3}, {-2.0, 4.0}, {0.0, 0.0}}) {
        const double m = p.constants.mass;
        const double pw = m * p.u0();
        const auto integral = integrate(
            [&](double mom) { return phase_space_density(p, x, mom, t); },
            m * p.v_x - 12.0 * pw, m * p.v_x + 12.0 * pw, QuadratureOptions{512, 12, 1e-13});
        CHECK(integral.value == doctest::Approx(marginal_density(p, x, t)).epsilon(1e-10));
    }
}

TEST_CASE("phase-space density is Galilean covariant in the drift") {
    PacketParams moving = default_packet();
    moving.v_x = 2.0;
    const PacketParams resting = default_packet();
    for (auto [x, mom, t] : {std::tuple{1.0, 0.3, 0.8}, {-0.4, -1.0, 2.5}}) {
        CHECK(phase_space_density(moving, x, mom, t) ==
              phase_space_density(resting, x - 2.0 * t, mom - 2.0, t));
    }
}

TEST_CASE("marginal density is the spreading Gaussian") {
    const PacketParams p = default_packet();
    CHECK(marginal_density(p, 0.0, 0.0) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-15));

    const auto norm = integrate([&](double x) { return marginal_density(p, x, 6.0); },
                                -40.0, 40.0, QuadratureOptions{1024, 10, 1e-13});
    CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("osmotic velocity is the log-derivative field") {
    const PacketParams p = default_packet();
    CHECK(osmotic_velocity(p, 1.0, 0.0, OsmoticBranch::plus) == 0.5);
    CHECK(osmotic_velocity(p, 2.0, 2.0, OsmoticBranch::plus) == 0.5);
    CHECK(osmotic_velocity(p, 1.3, 0.7, OsmoticBranch::minus) ==
          -osmotic_velocity(p, 1.3, 0.7, OsmoticBranch::plus));
    CHECK(average_osmotic_velocity(p, 1.3, 0.7) ==
          osmotic_velocity(p, 1.3, 0.7, OsmoticBranch::plus));

    // u_+ = -D dP/dx / P, checked against a central difference
    const double eps = 1e-6;
    for (auto [x, t] : {std::pair{0.9, 1.7}, {-2.2, 3.0}}) {
        const double lhs = osmotic_velocity(p, x, t, OsmoticBranch::plus);
        const double grad =
            (marginal_density(p, x + eps, t) - marginal_density(p, x - eps, t)) / (2.0 * eps);
        const double rhs = -p.constants.diffusivity() * grad / marginal_density(p, x, t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("mean velocity interpolates drift and spreading") {
    PacketParams p = default_packet();
    CHECK(mean_velocity_field(p, 2.7, 0.0) == 0.0);
    CHECK(mean_velocity_field(p, 1.0, 1.0) == 0.2);  // fluct = 0.25/1.25

    p.v_x = 1.5;
    CHECK(mean_velocity_field(p, p.mean_at(4.0), 4.0) == 1.5);  // centroid rides the drift
}

TEST_CASE("smoothed positions scale deviations with sigma") {
    const PacketParams p = default_packet();
    CHECK(smoothed_position(p, 0.0, 5.0) == p.mean_at(5.0));
    CHECK(smoothed_position(p, 1.0, 2.0) == sigma_at(p, 2.0));

    // the smoothed path rides the mean velocity field
    const double x0 = 0.8;
    for (double t : {0.5, 2.0, 6.0}) {
        const double h = 1e-5;
        const double fd =
            (smoothed_position(p, x0, t + h) - smoothed_position(p, x0, t - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(mean_velocity_field(p, smoothed_position(p, x0, t), t))
                        .epsilon(1e-8));
    }
}

TEST_CASE("action accumulates drift, spreading and energy terms") {
    PacketParams p = default_packet();
    p.v_x = 1.0;
    CHECK(action_value(p, 2.0, 1.0, 3.0, EnergyInput{0.5}) == 0.875);
    CHECK(action_value(p, 0.0, 0.0, 7.0, EnergyInput{0.0}) == 0.0);
}

TEST_CASE("kinetic temperature tracks the squared scaled deviation") {
    const PacketParams p = default_packet();
    CHECK(kinetic_temperature(p, 1.0, 2.0) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(kinetic_temperature(p, p.mean_at(3.0), 3.0) == 0.0);

    // relation to the osmotic field: kT / (m u^2) = sigma^2 / sigma0^2
    for (auto [x, t] : {std::pair{1.4, 1.0}, {-0.6, 5.0}}) {
        const double u = osmotic_velocity(p, x, t, OsmoticBranch::plus);
        const double s = sigma_at(p, t);
        CHECK(kinetic_temperature(p, x, t) ==
              doctest::Approx(p.constants.mass * u * u * s * s).epsilon(1e-12));
    }
}
