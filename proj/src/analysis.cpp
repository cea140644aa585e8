#include "evf/analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "evf/errors.hpp"

namespace evf {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_to(double angle, double period) {
    double v = std::fmod(angle, period);
    if (v < 0) v += period;
    if (v >= period) v -= period;
    return v;
}

double bilinear_intensity(const ComplexField& f, double x, double y) {
    const auto& g = f.grid();
    const double fx = g.index_of(x);
    const double fy = g.index_of(y);
    const int ix = static_cast<int>(std::floor(fx));
    const int iy = static_cast<int>(std::floor(fy));
    const double tx = fx - ix;
    const double ty = fy - iy;
    const double i00 = std::norm(f(iy, ix));
    const double i01 = std::norm(f(iy, ix + 1));
    const double i10 = std::norm(f(iy + 1, ix));
    const double i11 = std::norm(f(iy + 1, ix + 1));
    return (1 - ty) * ((1 - tx) * i00 + tx * i01) + ty * ((1 - tx) * i10 + tx * i11);
}

}  // namespace

AngularProfile angular_intensity(const ComplexField& field, double radius, int n_samples) {
    if (n_samples < 64 || (n_samples & (n_samples - 1)) != 0) {
        throw DomainError("angular sample count must be a power of two >= 64");
    }
    const auto& g = field.grid();
    const double reach = std::min(-g.coord(0), g.coord(g.samples_per_side() - 1));
    if (!(radius >= 0) || radius >= reach) {
        std::ostringstream msg;
        msg << "sampling radius " << radius << " outside the grid (limit " << reach << ")";
        throw DomainError(msg.str());
    }
    AngularProfile out{radius, std::vector<double>(n_samples)};
    for (int j = 0; j < n_samples; ++j) {
        const double phi = 2.0 * kPi * j / n_samples;
        out.samples[j] = bilinear_intensity(field, radius * std::cos(phi), radius * std::sin(phi));
    }
    return out;
}

Complex circular_harmonic(const AngularProfile& profile, int m) {
    const auto n = static_cast<int>(profile.samples.size());
    Complex sum(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        sum += profile.samples[j] * std::polar(1.0, -2.0 * kPi * m * j / n);
    }
    return sum / static_cast<double>(n);
}

double pattern_orientation(const AngularProfile& profile, int l) {
    if (l == 0) throw DomainError("pattern orientation needs l != 0");
    const int al = std::abs(l);
    const double mean = circular_harmonic(profile, 0).real();
    const Complex c = circular_harmonic(profile, 2 * al);
    if (!(std::abs(c) >= 0.1 * mean) || mean <= 0) {
        std::ostringstream msg;
        msg << "no " << 2 * al << "-fold pattern: harmonic amplitude " << std::abs(c)
            << " below 0.1 of mean " << mean;
        throw NoPatternError(msg.str());
    }
    return wrap_to(-std::arg(c) / (2.0 * al), kPi / al);
}

double unwrap_angle(double previous, double wrapped, double period) {
    return wrapped + period * std::round((previous - wrapped) / period);
}

double effective_width(const ComplexField& field, int l) {
    const auto& g = field.grid();
    const int n = g.samples_per_side();
    double total = 0.0;
    double moment = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double y = g.coord(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = g.coord(ix);
            const double v = std::norm(field(iy, ix));
            total += v;
            moment += v * (x * x + y * y);
        }
    }
    if (!(total > 0)) throw DomainError("effective width of a zero field");
    return std::sqrt(2.0 * (moment / total) / (std::abs(l) + 1.0));
}

Centroid intensity_centroid(const ComplexField& field) {
    const auto& g = field.grid();
    const int n = g.samples_per_side();
    double total = 0.0;
    Centroid c;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double v = std::norm(field(iy, ix));
            total += v;
            c.x += v * g.coord(ix);
            c.y += v * g.coord(iy);
        }
    }
    if (!(total > 0)) throw DomainError("centroid of a zero field");
    c.x /= total;
    c.y /= total;
    return c;
}

double fidelity(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a.grid(), b.grid(), "fidelity");
    Complex overlap(0.0, 0.0);
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) overlap += std::conj(da[i]) * db[i];
    const double p = a.grid().pitch();
    return std::norm(overlap * (p * p));
}

HarmonicContent harmonic_content(const ComplexField& field, int l) {
    if (l == 0) throw DomainError("harmonic content needs l != 0");
    const int al = std::abs(l);
    const auto& g = field.grid();
    const int n = g.samples_per_side();
    double c0 = 0.0;
    Complex c2l(0.0, 0.0);
    for (int iy = 0; iy < n; ++iy) {
        const double y = g.coord(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = g.coord(ix);
            if (x == 0.0 && y == 0.0) continue;
            const double v = std::norm(field(iy, ix));
            c0 += v;
            c2l += v * std::polar(1.0, -2.0 * al * std::atan2(y, x));
        }
    }
    if (!(c0 > 0)) throw DomainError("harmonic content of a zero field");
    return {std::abs(c2l) / c0, wrap_to(-std::arg(c2l) / (2.0 * al), kPi / al)};
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a.grid(), b.grid(), "l2_distance");
    double sum = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) sum += std::norm(da[i] - db[i]);
    const double p = a.grid().pitch();
    return std::sqrt(sum) * p;
}

}  // namespace evf
