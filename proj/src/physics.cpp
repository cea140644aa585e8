#include "evf/physics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "evf/errors.hpp"

namespace evf {

void PhysicalConstants::validate() const {
    if (!(electron_mass > 0 && elementary_charge > 0 && hbar > 0 && bohr_magneton > 0 &&
          g_factor > 0)) {
        throw DomainError("physical constants must be strictly positive");
    }
    const double derived = hbar * elementary_charge / (2.0 * electron_mass);
    if (std::abs(bohr_magneton / derived - 1.0) > 1e-6) {
        throw DomainError("bohr_magneton inconsistent with hbar e / 2m");
    }
}

void validate(const ModeIndex& idx) {
    if (idx.n < 0) throw DomainError("radial index n must be >= 0, got " + std::to_string(idx.n));
}

BeamParameters::BeamParameters(double kinetic_energy, double field_bz, PhysicalConstants constants)
    : kinetic_energy_(kinetic_energy), field_bz_(field_bz), constants_(constants) {
    if (!(kinetic_energy > 0) || !std::isfinite(kinetic_energy)) {
        throw DomainError("kinetic energy must be positive and finite");
    }
    if (!std::isfinite(field_bz)) throw DomainError("field must be finite");
    constants_.validate();
}

BeamParameters BeamParameters::from_ev(double energy_ev, double field_bz,
                                       PhysicalConstants constants) {
    return {ev_to_joule(energy_ev), field_bz, constants};
}

BeamParameters BeamParameters::with_field(double field_bz) const {
    return {kinetic_energy_, field_bz, constants_};
}

BeamParameters BeamParameters::with_energy(double kinetic_energy) const {
    return {kinetic_energy, field_bz_, constants_};
}

double larmor_frequency(const BeamParameters& p) {
    const auto& c = p.constants();
    return c.elementary_charge * p.field_bz() / (2.0 * c.electron_mass);
}

double magnetic_width(const BeamParameters& p) {
    if (p.field_bz() == 0.0) throw DomainError("magnetic width diverges at B_z = 0");
    const auto& c = p.constants();
    return 2.0 * std::sqrt(c.hbar / (c.elementary_charge * std::abs(p.field_bz())));
}

double base_wavenumber(double kinetic_energy, const PhysicalConstants& c) {
    if (kinetic_energy < 0) throw DomainError("kinetic energy must be >= 0");
    return std::sqrt(2.0 * c.electron_mass * kinetic_energy) / c.hbar;
}

double base_wavenumber(const BeamParameters& p) {
    return base_wavenumber(p.kinetic_energy(), p.constants());
}

double beam_speed(const BeamParameters& p) {
    return std::sqrt(2.0 * p.kinetic_energy() / p.constants().electron_mass);
}

double de_broglie_wavelength(const BeamParameters& p) {
    return 2.0 * std::numbers::pi / base_wavenumber(p);
}

namespace {

double oscillator_quanta(const ModeIndex& idx) { return 2.0 * idx.n + std::abs(idx.l) + 1.0; }

double zeeman_quanta(const BeamParameters& p, const ModeIndex& idx) {
    return idx.l + p.constants().g_factor * spin_value(idx.s);
}

}  // namespace

double magnetic_energy(const BeamParameters& p, const ModeIndex& idx) {
    validate(idx);
    const double hw = p.constants().hbar * larmor_frequency(p);
    return oscillator_quanta(idx) * std::abs(hw) + zeeman_quanta(p, idx) * hw;
}

double landau_energy(const BeamParameters& p, const ModeIndex& idx, double k) {
    const auto& c = p.constants();
    return c.hbar * c.hbar * k * k / (2.0 * c.electron_mass) + magnetic_energy(p, idx);
}

double mode_wavenumber(const BeamParameters& p, const ModeIndex& idx) {
    const double ratio = magnetic_energy(p, idx) / p.kinetic_energy();
    if (ratio >= 1.0) {
        throw EvanescentModeError("mode (n=" + std::to_string(idx.n) + ", l=" +
                                  std::to_string(idx.l) +
                                  ") has magnetic energy >= source energy; no propagating solution");
    }
    const double k0 = base_wavenumber(p);
    // k0 * sqrt(1 - ratio), written so the O(ratio) shift keeps full precision.
    return k0 + k0 * std::expm1(0.5 * std::log1p(-ratio));
}

double larmor_wavenumber(const BeamParameters& p) {
    const auto& c = p.constants();
    return std::sqrt(c.electron_mass / (2.0 * p.kinetic_energy())) * c.bohr_magneton *
           p.field_bz() / c.hbar;
}

double paraxial_magnetic_phase(const BeamParameters& p, const ModeIndex& idx, double z) {
    validate(idx);
    const double kl = larmor_wavenumber(p);
    return -oscillator_quanta(idx) * std::abs(kl) * z - zeeman_quanta(p, idx) * kl * z;
}

double paraxial_phase(const BeamParameters& p, const ModeIndex& idx, double z) {
    return base_wavenumber(p) * z + paraxial_magnetic_phase(p, idx, z);
}

double faraday_angle(const BeamParameters& p, double z) { return larmor_wavenumber(p) * z; }

double verdet_parameter(const BeamParameters& p) {
    const auto& c = p.constants();
    return std::sqrt(c.electron_mass / (2.0 * p.kinetic_energy())) * c.bohr_magneton / c.hbar;
}

double breathing_period(const BeamParameters& p) {
    if (p.field_bz() == 0.0) throw DomainError("no width oscillation at B_z = 0");
    return std::numbers::pi / std::abs(larmor_wavenumber(p));
}

}  // namespace evf
