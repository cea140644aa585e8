#pragma once

namespace evf {

// CODATA 2018 exact / recommended values (SI).
namespace codata2018 {
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double elementary_charge = 1.602176634e-19;  // C, exact
inline constexpr double hbar = 1.054571817e-34;               // J s (h exact / 2 pi)
inline constexpr double bohr_magneton = 9.2740100783e-24;     // J/T, tabulated
}  // namespace codata2018

// Constant set used by every formula in the library.
//
// The Bohr magneton is derived from hbar, e and m rather than taken from the
// table, so that the Larmor frequency |e|B/2m and the Larmor wavenumber
// (which uses mu_B) stay consistent to machine precision. The tabulated
// value agrees with the derived one to 6e-10 relative.
struct PhysicalConstants {
    double electron_mass = codata2018::electron_mass;
    double elementary_charge = codata2018::elementary_charge;  // magnitude
    double hbar = codata2018::hbar;
    double bohr_magneton = codata2018::hbar * codata2018::elementary_charge /
                           (2.0 * codata2018::electron_mass);
    double g_factor = 2.0;

    // Throws DomainError unless all values are positive and mu_B matches
    // hbar e / 2m to 1e-6 relative.
    void validate() const;

    static PhysicalConstants codata() { return {}; }
};

inline constexpr double joules_per_eV = codata2018::elementary_charge;

constexpr double ev_to_joule(double ev) { return ev * joules_per_eV; }
constexpr double joule_to_ev(double j) { return j / joules_per_eV; }

}  // namespace evf
