#pragma once

// Closed-form scalar quantities for a non-relativistic electron travelling
// along a uniform longitudinal field B_z. Everything is SI; the signed
// quantities (omega_L, k_L) carry the sign of B_z and magnitudes are taken
// only where the Landau-level terms require them.

#include "evf/constants.hpp"

namespace evf {

// Spin quantum number s in {-1/2, 0, +1/2}; `none` drops the spin Zeeman term.
enum class Spin : int { down = -1, none = 0, up = 1 };

constexpr double spin_value(Spin s) { return 0.5 * static_cast<int>(s); }

struct ModeIndex {
    int n = 0;  // radial node count, >= 0
    int l = 0;  // OAM quantum number
    Spin s = Spin::none;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

// Throws DomainError for n < 0.
void validate(const ModeIndex& idx);

class BeamParameters {
public:
    // kinetic_energy in J (> 0), field_bz in T (any sign).
    BeamParameters(double kinetic_energy, double field_bz,
                   PhysicalConstants constants = PhysicalConstants::codata());

    static BeamParameters from_ev(double energy_ev, double field_bz,
                                  PhysicalConstants constants = PhysicalConstants::codata());

    double kinetic_energy() const { return kinetic_energy_; }
    double field_bz() const { return field_bz_; }
    const PhysicalConstants& constants() const { return constants_; }

    BeamParameters with_field(double field_bz) const;
    BeamParameters with_energy(double kinetic_energy) const;

private:
    double kinetic_energy_;
    double field_bz_;
    PhysicalConstants constants_;
};

// |e| B_z / 2m, signed with B_z.
double larmor_frequency(const BeamParameters& p);

// 2 sqrt(hbar / |e B_z|). Throws DomainError for B_z = 0.
double magnetic_width(const BeamParameters& p);

// sqrt(2 m E) / hbar.
double base_wavenumber(const BeamParameters& p);
double base_wavenumber(double kinetic_energy, const PhysicalConstants& c);

// Longitudinal speed sqrt(2E/m).
double beam_speed(const BeamParameters& p);

// Non-relativistic de Broglie wavelength 2 pi / k_0.
double de_broglie_wavelength(const BeamParameters& p);

// hbar^2 k^2 / 2m + hbar |omega_L| (2n+|l|+1) + hbar omega_L (l + g s).
double landau_energy(const BeamParameters& p, const ModeIndex& idx, double k);

// Magnetic part of the mode energy: (2n+|l|+1) hbar |omega_L| + (l+gs) hbar omega_L.
double magnetic_energy(const BeamParameters& p, const ModeIndex& idx);

// Exact wavenumber k_0 sqrt(1 - magnetic_energy/E).
// Throws EvanescentModeError when magnetic_energy >= E.
double mode_wavenumber(const BeamParameters& p, const ModeIndex& idx);

// sqrt(m / 2E) mu_B B_z / hbar, i.e. omega_L divided by the beam speed.
double larmor_wavenumber(const BeamParameters& p);

// Magnetic part of the paraxial phase, -(2n+|l|+1)|k_L| z - (l+gs) k_L z.
double paraxial_magnetic_phase(const BeamParameters& p, const ModeIndex& idx, double z);

// k_0 z + paraxial_magnetic_phase.
double paraxial_phase(const BeamParameters& p, const ModeIndex& idx, double z);

// Rotation angle of a +-l superposition after a distance z: k_L z.
double faraday_angle(const BeamParameters& p, double z);

// Rotation per tesla per metre, sqrt(m / 2E) mu_B / hbar.
double verdet_parameter(const BeamParameters& p);

// Distance over which the width of a non-eigenstate beam completes one
// oscillation, pi / |k_L|. Throws DomainError for B_z = 0.
double breathing_period(const BeamParameters& p);

}  // namespace evf
