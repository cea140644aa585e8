#include "evf/commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "evf/analysis.hpp"
#include "evf/errors.hpp"
#include "evf/io.hpp"
#include "evf/propagation.hpp"
#include "evf/units.hpp"

namespace evf {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string sci(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

std::string numbered(const char* stem, int index, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04d%s", stem, index, ext);
    return buf;
}

FieldMetadata metadata_for(const BeamParameters& p, std::string note) {
    return {joule_to_ev(p.kinetic_energy()), p.field_bz(), std::move(note)};
}

void require_positive(std::optional<double> v, const char* what) {
    if (v && !(*v > 0 && std::isfinite(*v))) throw DomainError(std::string(what) + " must be positive");
}

// Radius of the intensity ring of an n = 0, |l| >= 1 mode of width w.
double ring_radius(int l, double w) { return w * std::sqrt(std::max(std::abs(l), 1) / 2.0); }

int dominant_frequency_bin(const std::vector<double>& signal) {
    const int n = static_cast<int>(signal.size());
    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= n;
    int best = 0;
    double best_power = -1.0;
    for (int k = 1; k <= n / 2; ++k) {
        Complex acc = 0.0;
        for (int j = 0; j < n; ++j) acc += (signal[j] - mean) * std::polar(1.0, -2.0 * kPi * k * j / n);
        if (std::norm(acc) > best_power) {
            best_power = std::norm(acc);
            best = k;
        }
    }
    return best;
}

double parse_quantity(const json& j, const char* key, double (*parse)(std::string_view)) {
    const auto& v = j.at(key);
    if (!v.is_string()) {
        throw UnitParseError(std::string("config value '") + key + "' must be a string with a unit, got " +
                             v.dump());
    }
    return parse(v.get<std::string>());
}

Spin spin_from_json(const json& v) {
    const double s = v.get<double>();
    if (s == 0.5) return Spin::up;
    if (s == -0.5) return Spin::down;
    if (s == 0.0) return Spin::none;
    throw DomainError("spin must be -0.5, 0 or 0.5, got " + v.dump());
}

}  // namespace

// ---------------------------------------------------------------- quantities

Quantities cmd_quantities(const BeamParameters& p, std::optional<double> thickness) {
    require_positive(thickness, "thickness");
    Quantities q;
    q.energy_ev = joule_to_ev(p.kinetic_energy());
    q.field_t = p.field_bz();
    q.base_wavenumber = base_wavenumber(p);
    q.wavelength = de_broglie_wavelength(p);
    q.larmor_frequency = larmor_frequency(p);
    q.larmor_wavenumber = larmor_wavenumber(p);
    if (p.field_bz() != 0.0) q.magnetic_width = magnetic_width(p);
    q.verdet = verdet_parameter(p);
    q.thickness = thickness;
    if (thickness) q.faraday_angle = faraday_angle(p, *thickness);
    return q;
}

std::string quantities_table(const Quantities& q) {
    std::ostringstream out;
    auto row = [&](const char* name, const std::string& value, const char* unit) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-22s %-16s %s\n", name, value.c_str(), unit);
        out << buf;
    };
    row("energy", sci(q.energy_ev), "eV");
    row("field", sci(q.field_t), "T");
    row("k0", sci(q.base_wavenumber), "rad/m");
    row("wavelength", sci(q.wavelength), "m");
    row("larmor_frequency", sci(q.larmor_frequency), "rad/s");
    row("larmor_wavenumber", sci(q.larmor_wavenumber), "rad/m");
    row("magnetic_width", q.magnetic_width ? sci(*q.magnetic_width) : "∞", "m");
    row("verdet", sci(q.verdet), "rad/(T m)");
    if (q.thickness) {
        row("thickness", sci(*q.thickness), "m");
        row("faraday_angle", sci(*q.faraday_angle), "rad");
    }
    return out.str();
}

json quantities_json(const Quantities& q) {
    json j = {
        {"energy_eV", q.energy_ev},
        {"field_T", q.field_t},
        {"k0_rad_per_m", q.base_wavenumber},
        {"wavelength_m", q.wavelength},
        {"larmor_frequency_rad_per_s", q.larmor_frequency},
        {"larmor_wavenumber_rad_per_m", q.larmor_wavenumber},
        {"magnetic_width_m", q.magnetic_width ? json(*q.magnetic_width) : json(nullptr)},
        {"verdet_rad_per_T_m", q.verdet},
    };
    if (q.thickness) {
        j["thickness_m"] = *q.thickness;
        j["faraday_angle_rad"] = *q.faraday_angle;
    }
    return j;
}

// -------------------------------------------------------------- verdet-curve

std::vector<VerdetPoint> cmd_verdet_curve(double e_min, double e_max, int n_points,
                                          const PhysicalConstants& c) {
    if (!(e_min > 0) || !(e_max > e_min) || !std::isfinite(e_max)) {
        throw DomainError("verdet curve needs 0 < E_min < E_max");
    }
    if (n_points < 2) throw DomainError("verdet curve needs at least 2 points");
    std::vector<VerdetPoint> out;
    out.reserve(n_points);
    const double span = std::log(e_max / e_min);
    for (int i = 0; i < n_points; ++i) {
        const double e = i == n_points - 1 ? e_max : e_min * std::exp(span * i / (n_points - 1));
        out.push_back({joule_to_ev(e), verdet_parameter(BeamParameters(e, 1.0, c))});
    }
    return out;
}

std::string verdet_csv(const std::vector<VerdetPoint>& points) {
    CsvTable t({"energy_eV", "verdet_rad_per_T_m"});
    for (const auto& p : points) t.add_row({p.energy_ev, p.verdet});
    return t.str();
}

// ------------------------------------------------------------ rotate/breathe

void RunConfig::validate() const {
    if (!(energy > 0) || !std::isfinite(energy)) throw DomainError("energy must be positive");
    if (!std::isfinite(field)) throw DomainError("field must be finite");
    if (grid_n < 16 || grid_n % 2 != 0) throw DomainError("grid_n must be even and >= 16");
    require_positive(grid_side, "grid_side");
    require_positive(dz, "dz");
    require_positive(z_max, "z_max");
    require_positive(waist, "waist");
    require_positive(w0, "w0");
    if (!(phi_max > 0)) throw DomainError("phi_max must be positive");
    if (!(periods > 0)) throw DomainError("periods must be positive");
    if (n < 0) throw DomainError("radial index n must be >= 0");
    if (samples < 1) throw DomainError("samples must be >= 1");
    for (const auto& t : modes) {
        evf::validate(t.index);
        if (!(t.waist > 0)) throw DomainError("mode waist must be positive");
    }
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    static const char* known[] = {"energy", "field", "grid_n", "grid_side", "dz", "z_max", "phi_max",
                                  "periods", "waist", "w0", "l", "n", "s", "modes", "samples",
                                  "output_dir", "frames", "snapshots"};
    for (const auto& item : j.items()) {
        const std::string key = item.key();
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw FormatError("unknown config key '" + key + "'");
        }
    }
    RunConfig c;
    try {
        if (j.contains("energy")) c.energy = parse_quantity(j, "energy", parse_energy);
        if (j.contains("field")) c.field = parse_quantity(j, "field", parse_field);
        if (j.contains("grid_n")) c.grid_n = j.at("grid_n").get<int>();
        if (j.contains("grid_side")) c.grid_side = parse_quantity(j, "grid_side", parse_length);
        if (j.contains("dz")) c.dz = parse_quantity(j, "dz", parse_length);
        if (j.contains("z_max")) c.z_max = parse_quantity(j, "z_max", parse_length);
        if (j.contains("phi_max")) c.phi_max = j.at("phi_max").get<double>();
        if (j.contains("periods")) c.periods = j.at("periods").get<double>();
        if (j.contains("waist")) c.waist = parse_quantity(j, "waist", parse_length);
        if (j.contains("w0")) c.w0 = parse_quantity(j, "w0", parse_length);
        if (j.contains("l")) c.l = j.at("l").get<int>();
        if (j.contains("n")) c.n = j.at("n").get<int>();
        if (j.contains("s")) c.spin = spin_from_json(j.at("s"));
        if (j.contains("samples")) c.samples = j.at("samples").get<int>();
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("frames")) c.frames = j.at("frames").get<bool>();
        if (j.contains("snapshots")) c.snapshots = j.at("snapshots").get<bool>();
        if (j.contains("modes")) {
            for (const auto& m : j.at("modes")) {
                ModeTerm t;
                t.index.n = m.value("n", 0);
                t.index.l = m.at("l").get<int>();
                t.index.s = m.contains("s") ? spin_from_json(m.at("s")) : Spin::none;
                t.coefficient = Complex(m.value("re", 0.0), m.value("im", 0.0));
                t.waist = parse_quantity(m, "waist", parse_length);
                c.modes.push_back(t);
            }
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid config: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

namespace {

struct Schedule {
    double dz;
    int steps_per_output;
};

// Splits z_max into `samples` equal outputs of an integer number of steps no
// longer than the requested dz.
Schedule schedule(double z_max, double dz_request, int samples) {
    const double per_output = z_max / samples;
    const int steps = std::max(1, static_cast<int>(std::ceil(per_output / dz_request - 1e-9)));
    return {per_output / steps, steps};
}

void write_text(const std::filesystem::path& path, const std::string& text) { atomic_write(path, text); }

}  // namespace

RotationRun cmd_rotate(const RunConfig& config) {
    config.validate();
    const BeamParameters p(config.energy, config.field);
    const bool field_free = config.field == 0.0;
    if (field_free && (!config.z_max || (!config.waist && config.modes.empty()))) {
        throw DomainError("with B = 0 there is no magnetic width or rotation scale; give waist and z_max");
    }

    std::vector<ModeTerm> terms = config.modes;
    if (terms.empty()) {
        if (config.l == 0) throw DomainError("rotate needs a +-l superposition with l != 0");
        const double w = config.waist ? *config.waist : magnetic_width(p);
        terms = ModeSuperposition::vortex_pair(config.l, config.n, config.spin, w, p).terms();
    }
    const ModeSuperposition beam(terms, p);

    RotationRun run;
    for (const auto& t : terms) run.l = std::max(run.l, std::abs(t.index.l));
    if (run.l == 0) throw DomainError("rotate needs components with l != 0");

    double w_ref = 0.0;
    for (const auto& t : terms) w_ref = std::max(w_ref, t.waist);
    const double side = config.grid_side ? *config.grid_side : 8.0 * w_ref;
    const GridSpec grid(config.grid_n, side);
    run.warnings = grid_adequacy_warnings(grid, w_ref);

    const double z_max = config.z_max ? *config.z_max : config.phi_max / std::abs(larmor_wavenumber(p));
    const double dz_request = config.dz ? *config.dz : default_step(grid, p);
    const Schedule sched = schedule(z_max, dz_request, config.samples);
    const PropagationPlan plan = make_plan(grid, p, sched.dz, sched.steps_per_output);
    run.dz = sched.dz;
    run.steps = static_cast<long>(sched.steps_per_output) * config.samples;

    const double radius = ring_radius(run.l, w_ref);
    const double period = kPi / run.l;
    double initial = 0.0;
    double previous = 0.0;
    int index = 0;
    std::filesystem::create_directories(config.output_dir);

    propagate_superposition_series(beam, grid, plan, config.samples, [&](const ComplexField& f) {
        const double orientation = pattern_orientation(angular_intensity(f, radius, 256), run.l);
        if (index == 0) {
            initial = orientation;
            previous = orientation;
        }
        previous = unwrap_angle(previous, orientation, period);
        run.z.push_back(f.z_position());
        run.measured.push_back(previous - initial);
        run.analytic.push_back(faraday_angle(p, f.z_position()));
        if (config.frames) write_intensity_frame(config.output_dir / numbered("frame", index, ".pgm"), f);
        if (config.snapshots) {
            write_field_file(config.output_dir / numbered("field", index, ".evf"), f,
                             metadata_for(p, "rotate snapshot"));
        }
        ++index;
    });

    CsvTable csv({"z_m", "angle_rad_measured", "angle_rad_analytic"});
    for (std::size_t i = 0; i < run.z.size(); ++i) {
        csv.add_row({run.z[i], run.measured[i], run.analytic[i]});
        const double err = std::abs(run.measured[i] - run.analytic[i]) /
                           std::max(std::abs(run.analytic[i]), kRotationAngleFloor);
        run.max_relative_error = std::max(run.max_relative_error, err);
    }
    write_text(config.output_dir / "rotation.csv", csv.str());
    run.passed = run.max_relative_error <= kRotationTolerance;
    return run;
}

BreathingRun cmd_breathe(const RunConfig& config) {
    config.validate();
    if (config.field == 0.0) throw DomainError("breathing needs a nonzero field");
    if (!config.modes.empty()) throw DomainError("breathe propagates a single mode; use l and w0");
    if (config.n != 0) throw DomainError("breathe supports n = 0 modes (the width law is for n = 0)");
    const BeamParameters p(config.energy, config.field);

    BreathingRun run;
    run.magnetic_width = magnetic_width(p);
    run.w0 = config.w0 ? *config.w0 : 0.5 * run.magnetic_width;
    const double w_max = std::max(run.w0, run.magnetic_width * run.magnetic_width / run.w0);
    const double spread = std::sqrt(2.0 * config.n + std::abs(config.l) + 1.0);
    const double side =
        config.grid_side ? *config.grid_side : std::max(8.0 * run.magnetic_width, 6.0 * w_max * spread);
    const GridSpec grid(config.grid_n, side);
    run.warnings = grid_adequacy_warnings(grid, std::min(run.w0, run.magnetic_width * run.magnetic_width / run.w0));

    const double z_max = config.z_max ? *config.z_max : config.periods * breathing_period(p);
    const double dz_request = config.dz ? *config.dz : default_step(grid, p);
    const Schedule sched = schedule(z_max, dz_request, config.samples);
    const PropagationPlan plan = make_plan(grid, p, sched.dz, sched.steps_per_output);
    run.dz = sched.dz;

    const auto beam = ModeSuperposition::single({config.n, config.l, config.spin}, run.w0, p);
    std::filesystem::create_directories(config.output_dir);
    int index = 0;
    propagate_superposition_series(beam, grid, plan, config.samples, [&](const ComplexField& f) {
        const double z = f.z_position();
        run.z.push_back(z);
        run.measured.push_back(effective_width(f, config.l));
        run.analytic.push_back(width_function(run.w0, p, z));
        run.grin.push_back(grin_width(run.w0, p, z));
        if (config.frames) write_intensity_frame(config.output_dir / numbered("frame", index, ".pgm"), f);
        if (config.snapshots) {
            write_field_file(config.output_dir / numbered("field", index, ".evf"), f,
                             metadata_for(p, "breathe snapshot"));
        }
        ++index;
    });

    CsvTable csv({"z_m", "width_measured_m", "width_analytic_m"});
    for (std::size_t i = 0; i < run.z.size(); ++i) {
        csv.add_row({run.z[i], run.measured[i], run.analytic[i]});
        run.max_dev_analytic =
            std::max(run.max_dev_analytic, std::abs(run.measured[i] - run.analytic[i]) / run.analytic[i]);
        run.max_dev_grin = std::max(run.max_dev_grin, std::abs(run.measured[i] - run.grin[i]) / run.grin[i]);
    }
    write_text(config.output_dir / "breathing.csv", csv.str());

    // One DFT window: the samples at z = 0 .. z_max excluding the endpoint.
    std::vector<double> window(run.measured.begin(), run.measured.end() - 1);
    run.dominant_bin = window.size() >= 4 ? dominant_frequency_bin(window) : 0;
    run.expected_bin = static_cast<int>(std::lround(z_max / breathing_period(p)));
    return run;
}

// ------------------------------------------------------------------- grating

GratingRun cmd_grating(const GratingOptions& o) {
    const GridSpec grid(o.grid_n, o.side);
    const BeamParameters p(o.energy, 0.0);

    GratingRun run;
    run.spec.l = o.l;
    run.spec.phi0 = o.phi0;
    if (o.spherical) {
        if (o.kx || o.fringes) throw DomainError("a spherical hologram takes a curvature, not a carrier");
        run.spec.reference = SphericalReference{o.curvature ? *o.curvature : 0.5 * max_curvature(grid)};
    } else {
        if (o.curvature) throw DomainError("a plane hologram takes a carrier, not a curvature");
        if (o.kx && o.fringes) throw DomainError("give either kx or fringes, not both");
        const double kx = o.kx        ? *o.kx
                          : o.fringes ? carrier_for_fringes(*o.fringes, grid)
                                      : default_carrier(grid);
        run.spec.reference = PlaneReference{kx};
    }
    run.spec.validate();

    std::filesystem::create_directories(o.output_dir);
    run.mask = synthesize_hologram(run.spec, grid);
    write_mask_pgm(o.output_dir / "mask.pgm", grid.samples_per_side(), run.mask->values());

    json report = {{"l", o.l},
                   {"phi0_rad", o.phi0},
                   {"grid", {{"n", o.grid_n}, {"side_m", o.side}}},
                   {"open_fraction", static_cast<double>(run.mask->open_count()) / grid.size()}};
    if (const auto* plane = std::get_if<PlaneReference>(&run.spec.reference)) {
        report["reference"] = {{"type", "plane"}, {"kx_rad_per_m", plane->kx}};
    } else {
        report["reference"] = {{"type", "spherical"},
                               {"curvature_rad_per_m2", std::get<SphericalReference>(run.spec.reference).curvature}};
    }

    if (o.diffract) {
        if (const auto* plane = std::get_if<PlaneReference>(&run.spec.reference)) {
            const ComplexField far = diffract_far_field(*run.mask);
            write_intensity_frame(o.output_dir / "far_field.pgm", far);
            json orders = json::array();
            for (int order : {-1, 0, 1}) {
                const OrderWindow w = order_window(far, run.spec, order);
                const ComplexField field = extract_order(far, run.spec, order);
                const HarmonicContent h = harmonic_content(field, o.l);
                OrderReport r{order, h.fraction, h.orientation, w.leakage,
                              scattering_angle(order * plane->kx / (2.0 * kPi), p)};
                run.orders.push_back(r);
                const char* name = order < 0 ? "order_m1.evf" : order == 0 ? "order_0.evf" : "order_p1.evf";
                write_field_file(o.output_dir / name, field,
                                 metadata_for(p, "far-field order " + std::to_string(order)));
                orders.push_back({{"order", order},
                                  {"harmonic_fraction", r.harmonic_fraction},
                                  {"lobe_orientation_rad", r.orientation},
                                  {"nodal_line_rad", std::fmod(r.orientation + kPi / (2.0 * o.l), kPi / o.l)},
                                  {"guard_ring_leakage", r.leakage},
                                  {"scattering_angle_rad", r.scattering_angle}});
            }
            report["orders"] = orders;
            run.report = report;
            write_text(o.output_dir / "purity.json", report.dump(2) + "\n");
        } else {
            // Zero-pad so the diverging order leaves through the absorber
            // instead of wrapping back onto the axis.
            const ComplexField t = embed_centered(transmission_field(*run.mask), 2 * o.grid_n);
            const double f = focal_distance(run.spec, p);
            run.focal_distance = f;
            const double probe = 1.5 * de_broglie_wavelength(p) * f / o.side;
            // Higher orders of the binary mask focus at f/m; stay clear of f/2.
            const FocusScan scan = scan_focus(t, p, 0.6 * f, 1.4 * f, probe);
            run.real_focus = scan.best_z;
            CsvTable csv({"z_m", "encircled_fraction"});
            for (std::size_t i = 0; i < scan.z.size(); ++i) csv.add_row({scan.z[i], scan.encircled[i]});
            write_text(o.output_dir / "focus_scan.csv", csv.str());
            // The mask is real, so the diverging order is the mirror image of
            // the converging one: its virtual focus sits at -real_focus.
            report["focus"] = {{"analytic_focal_distance_m", f},
                               {"real_focus_m", scan.best_z},
                               {"virtual_focus_m", -scan.best_z},
                               {"peak_encircled_fraction",
                                *std::max_element(scan.encircled.begin(), scan.encircled.end())},
                               {"probe_radius_m", probe}};
            run.report = report;
            write_text(o.output_dir / "focus.json", report.dump(2) + "\n");
        }
    } else {
        run.report = report;
    }
    return run;
}

}  // namespace evf
