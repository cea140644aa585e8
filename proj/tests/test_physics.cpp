#include <doctest.h>

#include <cmath>

#include "evf/errors.hpp"
#include "evf/physics.hpp"

using namespace evf;

namespace {

// Reference values evaluated at 40 digits from the CODATA inputs.
struct Reference {
    double energy_ev, field_t, k0, omega_l, k_l, w_b;
};

constexpr Reference kReferences[] = {
    {60e3, 1.0, 1254914556284.5858, 87941000538.608172, 605.3270484436773, 5.1311283614721917e-8},
    {240e3, 1.0, 2509829112569.1716, 87941000538.608172, 302.66352422183865, 5.1311283614721917e-8},
    {300e3, 2.0, 2806074253806.3197, 175882001077.21634, 541.42097157574829, 3.6282556595356052e-8},
    {200.0, 0.1, 72452525688.088537, 8794100053.8608172, 1048.4572031001562, 1.6226052588939893e-7},
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("closed-form quantities match high-precision references") {
    for (const auto& r : kReferences) {
        const auto p = BeamParameters::from_ev(r.energy_ev, r.field_t);
        CAPTURE(r.energy_ev);
        CHECK(rel(base_wavenumber(p), r.k0) < 1e-13);
        CHECK(rel(larmor_frequency(p), r.omega_l) < 1e-13);
        CHECK(rel(larmor_wavenumber(p), r.k_l) < 1e-13);
        CHECK(rel(magnetic_width(p), r.w_b) < 1e-13);
        CHECK(rel(verdet_parameter(p) * r.field_t, r.k_l) < 1e-13);
    }
}

TEST_CASE("worked example: 60 keV, 1 T, 100 nm") {
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    CHECK(faraday_angle(p, 100e-9) == doctest::Approx(6.053270484436773e-5).epsilon(1e-12));
    CHECK(std::abs(faraday_angle(p, 100e-9) - 6.0e-5) / 6.0e-5 < 0.02);
}

TEST_CASE("Larmor wavenumber is omega_L over the beam speed") {
    for (double e : {1e3, 60e3, 300e3}) {
        for (double b : {-2.0, 0.3, 1.0}) {
            const auto p = BeamParameters::from_ev(e, b);
            CHECK(rel(larmor_wavenumber(p), larmor_frequency(p) / beam_speed(p)) < 1e-13);
        }
    }
}

TEST_CASE("k0 k_L = eB / 2 hbar ties the magnetic width to the wavenumbers") {
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    const double w = magnetic_width(p);
    CHECK(rel(w * w, 2.0 / (base_wavenumber(p) * larmor_wavenumber(p))) < 1e-13);
}

TEST_CASE("scaling laws") {
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    CHECK(rel(larmor_wavenumber(p.with_energy(4.0 * p.kinetic_energy())), 0.5 * larmor_wavenumber(p)) < 1e-14);
    CHECK(rel(larmor_wavenumber(p.with_field(3.0)), 3.0 * larmor_wavenumber(p)) < 1e-14);
    CHECK(larmor_wavenumber(p.with_field(-1.0)) == -larmor_wavenumber(p));
    CHECK(rel(magnetic_width(p.with_field(4.0)), 0.5 * magnetic_width(p)) < 1e-14);
    CHECK(larmor_wavenumber(p.with_field(0.0)) == 0.0);
    CHECK(faraday_angle(p.with_field(0.0), 1.0) == 0.0);
}

TEST_CASE("magnetic width is undefined without a field") {
    CHECK_THROWS_AS(magnetic_width(BeamParameters::from_ev(60e3, 0.0)), DomainError);
    CHECK_THROWS_AS(breathing_period(BeamParameters::from_ev(60e3, 0.0)), DomainError);
}

TEST_CASE("beam parameters reject non-positive energies") {
    CHECK_THROWS_AS(BeamParameters(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(BeamParameters(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(validate(ModeIndex{-1, 0, Spin::none}), DomainError);
}

TEST_CASE("constants are self-consistent") {
    const auto c = PhysicalConstants::codata();
    CHECK_NOTHROW(c.validate());
    CHECK(rel(c.bohr_magneton, c.hbar * c.elementary_charge / (2 * c.electron_mass)) < 1e-15);
    CHECK(rel(c.bohr_magneton, codata2018::bohr_magneton) < 1e-9);
    auto bad = c;
    bad.bohr_magneton *= 1.001;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    // The Larmor frequency and wavenumber both derive from these constants.
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    CHECK(rel(larmor_frequency(p), c.bohr_magneton * 1.0 / c.hbar) < 1e-12);
}

TEST_CASE("Landau energy: free part plus Landau and Zeeman terms") {
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    const auto& c = p.constants();
    const double hw = c.hbar * larmor_frequency(p);
    const double k = 1e8;  // keeps the free part comparable to the magnetic terms
    const double free = c.hbar * c.hbar * k * k / (2 * c.electron_mass);
    CHECK(rel(landau_energy(p, {0, 0, Spin::none}, k), free + hw) < 1e-13);
    CHECK(rel(landau_energy(p, {1, -2, Spin::up}, k) - free, hw * 5 + hw * (-2 + 1)) < 1e-9);
    CHECK(rel(landau_energy(p, {2, 2, Spin::down}, k) - free, hw * 7 + hw * (2 - 1)) < 1e-9);
    CHECK(rel(magnetic_energy(p, {1, -2, Spin::up}), 3.7096040290719199e-23) < 1e-12);
}

TEST_CASE("magnetic energy: negative l with aligned field cancels the Zeeman term") {
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    const double hw = p.constants().hbar * larmor_frequency(p);
    for (int l = -4; l <= 0; ++l) {
        CHECK(rel(magnetic_energy(p, {0, l, Spin::none}), hw) < 1e-12);
    }
    // Reversing B with l -> -l leaves the energy unchanged.
    const auto q = p.with_field(-1.0);
    CHECK(rel(magnetic_energy(q, {1, 3, Spin::none}), magnetic_energy(p, {1, -3, Spin::none})) < 1e-13);
}

TEST_CASE("mode wavenumber at desk scale and near cutoff") {
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    const double k0 = base_wavenumber(p);
    CHECK(rel(k0 - mode_wavenumber(p, {0, 1, Spin::none}), 1815.9811466449809) < 1e-6);
    CHECK(rel(k0 - mode_wavenumber(p, {1, -2, Spin::up}), 2421.3081961106186) < 1e-6);
    CHECK(rel(k0 - mode_wavenumber(p, {2, 2, Spin::down}), 4842.616396893056) < 1e-6);

    // A meV beam in a strong field: low modes propagate, high ones are evanescent.
    const auto slow = BeamParameters::from_ev(1e-3, 1.0);
    const double hw = slow.constants().hbar * larmor_frequency(slow);
    const int cutoff = static_cast<int>(slow.kinetic_energy() / (2 * hw));
    CHECK_NOTHROW(mode_wavenumber(slow, {0, 0, Spin::none}));
    CHECK_THROWS_AS(mode_wavenumber(slow, {cutoff + 1, 0, Spin::none}), EvanescentModeError);
}

TEST_CASE("paraxial phase is the first-order expansion of k_nls z") {
    const auto p = BeamParameters::from_ev(60e3, 1.0);
    const double z = 1e-3;
    for (const ModeIndex idx : {ModeIndex{0, 1, Spin::none}, ModeIndex{2, -3, Spin::up}}) {
        // The subtraction of two ~1e12 rad/m values limits this to ~1e-7 rad.
        const double exact = (mode_wavenumber(p, idx) - base_wavenumber(p)) * z;
        CHECK(std::abs(paraxial_magnetic_phase(p, idx, z) - exact) < 1e-6);
    }
    const ModeIndex a{0, 1, Spin::none}, b{0, -1, Spin::none};
    CHECK(paraxial_phase(p, b, z) - paraxial_phase(p, a, z) ==
          doctest::Approx(2 * faraday_angle(p, z)).epsilon(1e-6));
    CHECK(breathing_period(p) == doctest::Approx(M_PI / 605.3270484436773).epsilon(1e-13));
}
