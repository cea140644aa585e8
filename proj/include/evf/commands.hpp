#pragma once

// Library side of the `evf` command-line tool. Each cmd_* runs one
// subcommand end to end, writes its artifacts and returns the numbers it
// reported, so tests can drive the exact code path the CLI uses.

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evf/gratings.hpp"
#include "evf/modes.hpp"
#include "evf/physics.hpp"

namespace evf {

// ---------------------------------------------------------------- quantities

struct Quantities {
    double energy_ev = 0.0;
    double field_t = 0.0;
    double base_wavenumber = 0.0;     // rad/m
    double wavelength = 0.0;          // m
    double larmor_frequency = 0.0;    // rad/s
    double larmor_wavenumber = 0.0;   // rad/m
    std::optional<double> magnetic_width;  // m; empty at B = 0 (infinite)
    double verdet = 0.0;              // rad/(T m)
    std::optional<double> thickness;  // m
    std::optional<double> faraday_angle;  // rad
};

Quantities cmd_quantities(const BeamParameters& p, std::optional<double> thickness);
std::string quantities_table(const Quantities& q);
nlohmann::json quantities_json(const Quantities& q);

// -------------------------------------------------------------- verdet-curve

struct VerdetPoint {
    double energy_ev;
    double verdet;  // rad/(T m)
};

// n_points >= 2 logarithmically spaced energies in [e_min, e_max] (J).
std::vector<VerdetPoint> cmd_verdet_curve(double e_min, double e_max, int n_points,
                                          const PhysicalConstants& c = PhysicalConstants::codata());
std::string verdet_csv(const std::vector<VerdetPoint>& points);

// ------------------------------------------------------------ rotate/breathe

struct RunConfig {
    double energy = ev_to_joule(60e3);  // J
    double field = 1.0;                 // T
    int grid_n = 512;
    std::optional<double> grid_side;    // m; default depends on the command
    std::optional<double> dz;           // m; default_step when empty
    std::optional<double> z_max;        // m
    double phi_max = 0.5;               // rad; rotate: z_max = phi_max / |k_L| when z_max empty
    double periods = 1.0;               // breathe: breathing periods covered when z_max empty
    std::optional<double> waist;        // m; rotate: default w_B
    std::optional<double> w0;           // m; breathe: default w_B / 2
    int l = 1;
    int n = 0;
    Spin spin = Spin::none;
    std::vector<ModeTerm> modes;        // overrides l/n/spin when not empty
    int samples = 40;                   // outputs after z = 0
    std::filesystem::path output_dir = ".";
    bool frames = false;                // PGM intensity frame per sample
    bool snapshots = false;             // field file per sample

    // Throws DomainError on any invalid value, before computation starts.
    void validate() const;
};

// Reads a JSON config. Quantities are unit strings ("60keV", "1T", "50nm");
// modes are [{"n":0,"l":1,"s":0.5,"re":0.7071,"im":0,"waist":"51nm"}, ...].
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

struct RotationRun {
    int l = 0;
    double dz = 0.0;
    long steps = 0;
    std::vector<double> z;
    std::vector<double> measured;
    std::vector<double> analytic;
    double max_relative_error = 0.0;
    bool passed = false;
    std::vector<std::string> warnings;
};

// Relative-error floor of the rotate self-check: below this analytic angle
// the error is measured against the floor instead.
inline constexpr double kRotationAngleFloor = 0.05;
inline constexpr double kRotationTolerance = 0.02;

// Propagates the superposition, measures the pattern orientation relative to
// z = 0 and writes rotation.csv (plus frames/snapshots on request).
RotationRun cmd_rotate(const RunConfig& config);

struct BreathingRun {
    double w0 = 0.0;
    double magnetic_width = 0.0;
    double dz = 0.0;
    std::vector<double> z;
    std::vector<double> measured;
    std::vector<double> analytic;   // width_function
    std::vector<double> grin;       // grin_width
    double max_dev_analytic = 0.0;  // max relative |measured - analytic| / analytic
    double max_dev_grin = 0.0;
    int dominant_bin = 0;           // DFT peak of the measured signal (DC excluded)
    int expected_bin = 0;           // number of breathing periods sampled
    std::vector<std::string> warnings;
};

// Propagates an n = 0 mode of width w0 and writes breathing.csv.
BreathingRun cmd_breathe(const RunConfig& config);

// ------------------------------------------------------------------- grating

struct GratingOptions {
    int l = 1;
    double phi0 = 0.0;
    bool spherical = false;
    std::optional<double> kx;          // rad/m
    std::optional<double> fringes;     // alternative to kx
    std::optional<double> curvature;   // rad/m^2
    int grid_n = 512;
    double side = 2e-6;                // m
    double energy = ev_to_joule(60e3); // J, for angles and the focus scan
    bool diffract = false;
    std::filesystem::path output_dir = ".";
};

struct OrderReport {
    int order = 0;
    double harmonic_fraction = 0.0;
    double orientation = 0.0;  // rad
    double leakage = 0.0;
    double scattering_angle = 0.0;  // rad
};

struct GratingRun {
    HologramSpec spec;
    std::optional<BinaryMask> mask;
    std::vector<OrderReport> orders;
    std::optional<double> focal_distance;   // m, analytic
    std::optional<double> real_focus;       // m, located by the scan
    nlohmann::json report;
};

// Writes mask.pgm; with diffract also far_field.pgm, order field files and
// purity.json (plane reference) or focus.json (spherical reference).
GratingRun cmd_grating(const GratingOptions& options);

}  // namespace evf
