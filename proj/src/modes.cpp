#include "evf/modes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "evf/errors.hpp"
#include "evf/laguerre.hpp"

namespace evf {

double radial_profile(int n, int l, double r, double w) {
    if (n < 0) throw DomainError("radial index n must be >= 0");
    if (!(w > 0)) throw DomainError("mode width must be positive");
    if (r < 0) throw DomainError("radius must be >= 0");
    const int al = std::abs(l);
    if (al > 0 && r == 0.0) return 0.0;

    const double u = r / w;
    // log of sqrt(2 n! / (pi (n+|l|)!)) / w * (sqrt2 u)^|l| * exp(-u^2)
    double log_mag = 0.5 * (std::log(2.0) + std::lgamma(n + 1.0) - std::log(std::numbers::pi) -
                            std::lgamma(n + al + 1.0)) -
                     std::log(w) - u * u;
    if (al > 0) log_mag += al * std::log(std::numbers::sqrt2 * u);
    return std::exp(log_mag) * assoc_laguerre(n, al, 2.0 * u * u);
}

ModeSuperposition::ModeSuperposition(std::vector<ModeTerm> terms, BeamParameters params)
    : terms_(std::move(terms)), params_(params) {
    if (terms_.empty()) throw DomainError("superposition needs at least one term");
    double weight = 0.0;
    for (const auto& t : terms_) {
        validate(t.index);
        if (!(t.waist > 0) || !std::isfinite(t.waist)) throw DomainError("mode waist must be positive");
        weight += std::norm(t.coefficient);
    }
    if (std::abs(weight - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "superposition weights sum to " << weight << ", expected 1";
        throw DomainError(msg.str());
    }
}

ModeSuperposition ModeSuperposition::vortex_pair(int l, int n, Spin s, double waist,
                                                 const BeamParameters& params, double phi0) {
    if (l == 0) throw DomainError("vortex pair needs l != 0");
    const double amp = 1.0 / std::numbers::sqrt2;
    const Complex plus = std::polar(amp, -l * phi0);
    const Complex minus = std::polar(amp, l * phi0);
    return ModeSuperposition({{{n, l, s}, plus, waist}, {{n, -l, s}, minus, waist}}, params);
}

ModeSuperposition ModeSuperposition::single(ModeIndex index, double waist,
                                            const BeamParameters& params) {
    return ModeSuperposition({{index, Complex(1.0, 0.0), waist}}, params);
}

namespace {

void accumulate_mode(ComplexField& out, const ModeIndex& idx, double waist, Complex weight) {
    const auto& g = out.grid();
    const int n = g.samples_per_side();
    for (int iy = 0; iy < n; ++iy) {
        const double y = g.coord(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = g.coord(ix);
            const double r = std::hypot(x, y);
            const double phi = std::atan2(y, x);
            out(iy, ix) += weight * radial_profile(idx.n, idx.l, r, waist) *
                           std::polar(1.0, idx.l * phi);
        }
    }
}

}  // namespace

ComplexField sample_mode(const ModeIndex& idx, double waist, const GridSpec& grid) {
    validate(idx);
    ComplexField f(grid, 0.0);
    accumulate_mode(f, idx, waist, Complex(1.0, 0.0));
    normalize(f);
    return f;
}

ComplexField sample_initial(const ModeSuperposition& s, const GridSpec& grid) {
    ComplexField f(grid, 0.0);
    for (const auto& t : s.terms()) accumulate_mode(f, t.index, t.waist, t.coefficient);
    normalize(f);
    return f;
}

ComplexField sample_superposition(const ModeSuperposition& s, const GridSpec& grid, double z) {
    const auto& p = s.params();
    const double wb = magnetic_width(p);
    for (const auto& t : s.terms()) {
        if (std::abs(t.waist / wb - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "waist " << t.waist << " m is not the magnetic width " << wb
                << " m; the term is not an eigenstate, use the numerical propagator";
            throw NotAnEigenstateError(msg.str());
        }
    }
    // Common carrier k0 z reduced first so the small magnetic phases keep precision.
    const double carrier = std::fmod(base_wavenumber(p) * z, 2.0 * std::numbers::pi);
    ComplexField f(grid, z);
    for (const auto& t : s.terms()) {
        const double theta = carrier + paraxial_magnetic_phase(p, t.index, z);
        accumulate_mode(f, t.index, t.waist, t.coefficient * std::polar(1.0, theta));
    }
    normalize(f);
    return f;
}

double width_function(double w0, const BeamParameters& p, double z) {
    if (!(w0 > 0)) throw DomainError("waist must be positive");
    const double wb = magnetic_width(p);
    const double rho = w0 / wb;
    return wb * std::sqrt(1.0 - (1.0 - rho * rho) * std::cos(2.0 * larmor_wavenumber(p) * z));
}

double grin_width(double w0, const BeamParameters& p, double z) {
    if (!(w0 > 0)) throw DomainError("waist must be positive");
    const double wb = magnetic_width(p);
    const double c = std::cos(larmor_wavenumber(p) * z);
    const double s = std::sin(larmor_wavenumber(p) * z);
    const double far = wb * wb / w0;
    return std::sqrt(w0 * w0 * c * c + far * far * s * s);
}

std::vector<std::string> grid_adequacy_warnings(const GridSpec& grid, double width) {
    std::vector<std::string> out;
    const double pixels = width / grid.pitch();
    if (pixels < 6.0) {
        std::ostringstream msg;
        msg << "beam width spans only " << pixels << " pixels (< 6); sampling error will grow";
        out.push_back(msg.str());
    }
    if (grid.side_length() < 6.0 * width) {
        std::ostringstream msg;
        msg << "grid side is " << grid.side_length() / width << " beam widths (< 6)";
        out.push_back(msg.str());
    }
    return out;
}

}  // namespace evf
