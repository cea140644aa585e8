#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "evf/analysis.hpp"
#include "evf/errors.hpp"
#include "evf/modes.hpp"

using namespace evf;

namespace {
const auto kBeam = BeamParameters::from_ev(60e3, 1.0);
}

TEST_CASE("radial profile is normalised (adaptive quadrature)") {
    const double w = 1.0;
    for (int n = 0; n <= 6; ++n) {
        for (int l = -5; l <= 5; ++l) {
            auto f = [&](double r) { return 2 * std::numbers::pi * r * std::pow(radial_profile(n, l, r, w), 2); };
            double err = 0;
            const double norm =
                boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 12.0, 15, 1e-14, &err);
            CAPTURE(n);
            CAPTURE(l);
            CHECK(std::abs(norm - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("radial profile scales with the width") {
    for (double r : {0.1, 0.7, 1.9}) {
        CHECK(radial_profile(1, 2, 3.0 * r, 3.0) == doctest::Approx(radial_profile(1, 2, r, 1.0) / 3.0).epsilon(1e-13));
        CHECK(radial_profile(0, 3, r, 1.0) == radial_profile(0, -3, r, 1.0));
    }
    CHECK(radial_profile(0, 1, 0.0, 1.0) == 0.0);
    CHECK(radial_profile(0, 0, 0.0, 1.0) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)));
}

TEST_CASE("n = 0 intensity ring peaks at w sqrt(|l|/2)") {
    for (int l = 1; l <= 4; ++l) {
        const double w = 2.0;
        const double peak = w * std::sqrt(l / 2.0);
        const double h = 1e-4;
        const double d = radial_profile(0, l, peak + h, w) - radial_profile(0, l, peak - h, w);
        CHECK(std::abs(d) < 1e-8);
    }
}

TEST_CASE("sampled modes are orthonormal on the grid") {
    const double w = magnetic_width(kBeam);
    const GridSpec grid(128, 10.0 * w);
    std::vector<ComplexField> modes;
    std::vector<ModeIndex> idx;
    for (int n = 0; n <= 2; ++n) {
        for (int l = -2; l <= 2; ++l) {
            idx.push_back({n, l, Spin::none});
            modes.push_back(sample_mode(idx.back(), w, grid));
        }
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        CHECK(grid_norm(modes[i]) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t j = i + 1; j < modes.size(); ++j) CHECK(fidelity(modes[i], modes[j]) < 1e-8);
    }
}

TEST_CASE("superposition validation") {
    const double w = magnetic_width(kBeam);
    CHECK_THROWS_AS(ModeSuperposition({{{0, 1, Spin::none}, 0.9, w}}, kBeam), DomainError);
    CHECK_THROWS_AS(ModeSuperposition({{{0, 1, Spin::none}, 1.0, -w}}, kBeam), DomainError);
    CHECK_THROWS_AS(ModeSuperposition::vortex_pair(1, -1, Spin::none, w, kBeam), DomainError);
    const auto pair = ModeSuperposition::vortex_pair(2, 1, Spin::up, w, kBeam, 0.3);
    REQUIRE(pair.terms().size() == 2);
    CHECK(std::norm(pair.terms()[0].coefficient) == doctest::Approx(0.5));
    CHECK(pair.terms()[0].index.l == 2);
    CHECK(pair.terms()[1].index.l == -2);
}

TEST_CASE("vortex pair lobes lie along phi0") {
    const double w = magnetic_width(kBeam);
    const GridSpec grid(128, 8.0 * w);
    for (int l = 1; l <= 3; ++l) {
        for (double phi0 : {0.0, 0.2, 0.5}) {
            const auto f = sample_initial(ModeSuperposition::vortex_pair(l, 0, Spin::none, w, kBeam, phi0), grid);
            const auto prof = angular_intensity(f, w * std::sqrt(l / 2.0), 256);
            const double expected = std::fmod(phi0, std::numbers::pi / l);
            CHECK(std::abs(pattern_orientation(prof, l) - expected) < 2e-4);
        }
    }
}

TEST_CASE("eigenstate superposition rotates by k_L z in closed form") {
    const double w = magnetic_width(kBeam);
    const GridSpec grid(128, 8.0 * w);
    const auto s = ModeSuperposition::vortex_pair(1, 0, Spin::none, w, kBeam);
    for (double phi : {0.05, 0.3, 1.0}) {
        const double z = phi / larmor_wavenumber(kBeam);
        const auto f = sample_superposition(s, grid, z);
        CHECK(grid_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
        // Bilinear interpolation at 16 px per width biases the estimate by < 1e-4 rad.
        const double o = pattern_orientation(angular_intensity(f, w / std::sqrt(2.0), 256), 1);
        CHECK(std::abs(o - phi) < 1e-4);
    }
}

TEST_CASE("closed-form propagation needs eigenstates") {
    const double w = magnetic_width(kBeam);
    const GridSpec grid(64, 8.0 * w);
    const auto s = ModeSuperposition::single({0, 0, Spin::none}, 0.5 * w, kBeam);
    CHECK_THROWS_AS(sample_superposition(s, grid, 1e-3), NotAnEigenstateError);
    CHECK_NOTHROW(sample_initial(s, grid));
}

TEST_CASE("width laws") {
    const double wb = magnetic_width(kBeam);
    const double kl = larmor_wavenumber(kBeam);
    const double period = breathing_period(kBeam);
    for (double z : {0.0, 0.1 * period, 0.37 * period, 0.5 * period}) {
        CHECK(width_function(wb, kBeam, z) == doctest::Approx(wb));
        CHECK(grin_width(wb, kBeam, z) == doctest::Approx(wb));
    }
    const double w0 = 0.5 * wb;
    CHECK(width_function(w0, kBeam, 0.0) == doctest::Approx(w0));
    CHECK(width_function(w0, kBeam, 0.5 * period) == doctest::Approx(wb * std::sqrt(2.0 - 0.25)));
    CHECK(grin_width(w0, kBeam, 0.5 * period) == doctest::Approx(wb * wb / w0));
    // Both laws are periodic in pi / k_L and agree to first order near w_B.
    CHECK(grin_width(w0, kBeam, 0.3 / kl) == doctest::Approx(grin_width(w0, kBeam, 0.3 / kl + period)));
    const double eps = 1e-3;
    const double near = (1 + eps) * wb;
    for (double z : {0.2 * period, 0.5 * period}) {
        const double lin = width_function(near, kBeam, z);
        const double exact = grin_width(near, kBeam, z);
        CHECK(std::abs(lin - exact) / exact < 5 * eps * eps);
    }
    CHECK_THROWS_AS(width_function(0.0, kBeam, 0.0), DomainError);
    CHECK_THROWS_AS(width_function(wb, kBeam.with_field(0.0), 0.0), DomainError);
}

TEST_CASE("grid adequacy warnings") {
    const GridSpec grid(64, 1.0);
    CHECK(grid_adequacy_warnings(grid, 0.1).empty());
    CHECK(!grid_adequacy_warnings(grid, 0.05).empty());  // 3.2 px per width
    CHECK(!grid_adequacy_warnings(grid, 0.3).empty());   // side only 3.3 widths
}
