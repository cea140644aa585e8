#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "evf/commands.hpp"
#include "evf/errors.hpp"
#include "evf/io.hpp"
#include "evf/units.hpp"

namespace {

std::optional<double> parse_optional(const std::string& token, double (*parse)(std::string_view)) {
    if (token.empty()) return std::nullopt;
    return parse(token);
}

struct RunFlags {
    std::string config;
    std::string energy = "60keV";
    std::string field = "1T";
    int grid_n = 512;
    std::string side, dz, z_max, waist, w0;
    std::optional<double> phi_max, periods;
    int l = 1;
    int n = 0;
    double spin = 0.0;
    int samples = 40;
    std::string output = ".";
    bool frames = false;
    bool snapshots = false;

    void add(CLI::App* app) {
        app->add_option("--config", config, "JSON run config; flags given explicitly override it");
        app->add_option("-E,--energy", energy, "kinetic energy, e.g. 60keV");
        app->add_option("-B,--field", field, "longitudinal field, e.g. 1T");
        app->add_option("-N,--grid", grid_n, "samples per side (even)");
        app->add_option("--side", side, "grid side length, e.g. 410nm");
        app->add_option("--dz", dz, "propagation step, e.g. 20nm");
        app->add_option("--zmax", z_max, "propagation distance, e.g. 0.8mm");
        app->add_option("-l", l, "OAM quantum number");
        app->add_option("-n", n, "radial index");
        app->add_option("-s,--spin", spin, "spin quantum number: -0.5, 0 or 0.5");
        app->add_option("--samples", samples, "number of outputs after z = 0");
        app->add_option("-o,--output", output, "output directory");
        app->add_flag("--frames", frames, "write a PGM intensity frame per output");
        app->add_flag("--snapshots", snapshots, "write a field file per output");
    }

    evf::RunConfig resolve(const CLI::App* app) const {
        evf::RunConfig c = config.empty() ? evf::RunConfig{} : evf::load_run_config(config);
        auto given = [&](const char* name) { return config.empty() || app->count(name) > 0; };
        if (given("--energy")) c.energy = evf::parse_energy(energy);
        if (given("--field")) c.field = evf::parse_field(field);
        if (given("--grid")) c.grid_n = grid_n;
        if (!side.empty()) c.grid_side = evf::parse_length(side);
        if (!dz.empty()) c.dz = evf::parse_length(dz);
        if (!z_max.empty()) c.z_max = evf::parse_length(z_max);
        if (!waist.empty()) c.waist = evf::parse_length(waist);
        if (!w0.empty()) c.w0 = evf::parse_length(w0);
        if (phi_max) c.phi_max = *phi_max;
        if (periods) c.periods = *periods;
        if (given("-l")) c.l = l;
        if (given("-n")) c.n = n;
        if (given("--spin")) {
            if (spin == 0.5) c.spin = evf::Spin::up;
            else if (spin == -0.5) c.spin = evf::Spin::down;
            else if (spin == 0.0) c.spin = evf::Spin::none;
            else throw evf::DomainError("spin must be -0.5, 0 or 0.5");
        }
        if (given("--samples")) c.samples = samples;
        if (given("--output")) c.output_dir = output;
        if (frames) c.frames = true;
        if (snapshots) c.snapshots = true;
        c.validate();
        return c;
    }
};

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electron vortex beams in a longitudinal magnetic field"};
    app.require_subcommand(1);

    auto* quantities = app.add_subcommand("quantities", "print k0, omega_L, k_L, w_B, Verdet and Faraday angle");
    std::string q_energy = "60keV", q_field = "1T", q_thickness;
    bool q_json = false;
    quantities->add_option("-E,--energy", q_energy, "kinetic energy, e.g. 60keV");
    quantities->add_option("-B,--field", q_field, "longitudinal field, e.g. 1T");
    quantities->add_option("--thickness", q_thickness, "propagation length for the Faraday angle, e.g. 100nm");
    quantities->add_flag("--json", q_json, "print JSON instead of the table");

    auto* verdet = app.add_subcommand("verdet-curve", "CSV of the Verdet parameter against energy");
    std::string v_min = "1keV", v_max = "1MeV", v_out;
    int v_points = 61;
    verdet->add_option("--emin", v_min, "lowest energy");
    verdet->add_option("--emax", v_max, "highest energy");
    verdet->add_option("--points", v_points, "number of log-spaced energies");
    verdet->add_option("-o,--output", v_out, "CSV file (default: stdout)");

    auto* rotate = app.add_subcommand("rotate", "propagate a +-l superposition and track its rotation");
    RunFlags r_flags;
    r_flags.add(rotate);
    rotate->add_option("--waist", r_flags.waist, "mode waist (default w_B)");
    rotate->add_option("--phi-max", r_flags.phi_max, "final analytic rotation in rad when --zmax is absent");

    auto* breathe = app.add_subcommand("breathe", "propagate a mismatched mode and track its width");
    RunFlags b_flags;
    b_flags.l = 0;
    b_flags.add(breathe);
    breathe->add_option("--w0", b_flags.w0, "initial waist (default w_B/2)");
    breathe->add_option("--periods", b_flags.periods, "breathing periods to cover when --zmax is absent");

    auto* grating = app.add_subcommand("grating", "synthesise a binary hologram and optionally diffract it");
    evf::GratingOptions g;
    std::string g_side = "2um", g_energy = "60keV";
    bool g_plane = false;
    grating->add_option("-l", g.l, "OAM of the encoded +-l superposition");
    grating->add_option("--phi0", g.phi0, "pattern orientation in rad");
    grating->add_flag("--plane", g_plane, "plane reference wave (default)");
    grating->add_flag("--spherical", g.spherical, "spherical reference wave");
    grating->add_option("--kx", g.kx, "plane carrier in rad/m");
    grating->add_option("--fringes", g.fringes, "plane carrier as fringes across the side");
    grating->add_option("-C,--curvature", g.curvature, "spherical curvature in rad/m^2");
    grating->add_option("-N,--grid", g.grid_n, "samples per side");
    grating->add_option("--side", g_side, "mask side length");
    grating->add_option("-E,--energy", g_energy, "beam energy for angles and focal lengths");
    grating->add_flag("--diffract", g.diffract, "compute far field, orders and purity report");
    std::string g_out = ".";
    grating->add_option("-o,--output", g_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*quantities) {
            const evf::BeamParameters p(evf::parse_energy(q_energy), evf::parse_field(q_field));
            const auto q = evf::cmd_quantities(p, parse_optional(q_thickness, evf::parse_length));
            if (q_json) {
                std::cout << evf::quantities_json(q).dump(2) << "\n";
            } else {
                std::cout << evf::quantities_table(q);
            }
        } else if (*verdet) {
            const auto points = evf::cmd_verdet_curve(evf::parse_energy(v_min), evf::parse_energy(v_max), v_points);
            const auto csv = evf::verdet_csv(points);
            if (v_out.empty()) {
                std::cout << csv;
            } else {
                evf::atomic_write(v_out, csv);
            }
        } else if (*rotate) {
            const auto run = evf::cmd_rotate(r_flags.resolve(rotate));
            print_warnings(run.warnings);
            std::printf("l = %d, dz = %.6e m, %ld steps\n", run.l, run.dz, run.steps);
            std::printf("final angle: measured %.6e rad, analytic %.6e rad\n", run.measured.back(),
                        run.analytic.back());
            std::printf("max relative error %.4f%% (limit %.1f%%)\n", 100.0 * run.max_relative_error,
                        100.0 * evf::kRotationTolerance);
            if (!run.passed) {
                std::cerr << "error: numerical rotation deviates from k_L z beyond the tolerance\n";
                return 3;
            }
        } else if (*breathe) {
            const auto run = evf::cmd_breathe(b_flags.resolve(breathe));
            print_warnings(run.warnings);
            std::printf("w0 = %.6e m, w_B = %.6e m, dz = %.6e m\n", run.w0, run.magnetic_width, run.dz);
            std::printf("max deviation from the linearised law %.4f%%, from the exact law %.4f%%\n",
                        100.0 * run.max_dev_analytic, 100.0 * run.max_dev_grin);
            std::printf("dominant frequency bin %d (expected %d)\n", run.dominant_bin, run.expected_bin);
        } else if (*grating) {
            if (g_plane && g.spherical) throw evf::DomainError("choose either --plane or --spherical");
            g.side = evf::parse_length(g_side);
            g.energy = evf::parse_energy(g_energy);
            g.output_dir = g_out;
            const auto run = evf::cmd_grating(g);
            std::cout << run.report.dump(2) << "\n";
        }
    } catch (const evf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
