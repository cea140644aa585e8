#include "evf/gratings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "evf/errors.hpp"
#include "evf/fft.hpp"
#include "evf/propagation.hpp"

namespace evf {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_plane(const HologramSpec& spec) {
    return std::holds_alternative<PlaneReference>(spec.reference);
}

}  // namespace

void HologramSpec::validate() const {
    if (l < 1) throw DomainError("hologram needs l >= 1");
    if (!std::isfinite(phi0)) throw DomainError("phi0 must be finite");
    if (const auto* plane = std::get_if<PlaneReference>(&reference)) {
        if (!(plane->kx > 0) || !std::isfinite(plane->kx)) {
            throw DomainError("plane reference needs k_x > 0");
        }
    } else {
        const double c = std::get<SphericalReference>(reference).curvature;
        if (c == 0.0 || !std::isfinite(c)) throw DomainError("spherical reference needs C != 0");
    }
}

BinaryMask::BinaryMask(GridSpec grid, std::vector<std::uint8_t> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw GridMismatchError("mask size does not match grid");
    for (auto v : values_) {
        if (v > 1) throw DomainError("mask values must be 0 or 1");
    }
}

std::size_t BinaryMask::open_count() const {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

double carrier_for_fringes(double fringes, const GridSpec& grid) {
    return 2.0 * kPi * fringes / grid.side_length();
}

double default_carrier(const GridSpec& grid) {
    return carrier_for_fringes(grid.samples_per_side() / 8.0, grid);
}

double max_curvature(const GridSpec& grid) {
    return kPi / (2.0 * grid.pitch() * grid.side_length());
}

double hologram_design_value(const HologramSpec& spec, double x, double y) {
    const double target = 2.0 * std::cos(spec.l * (std::atan2(y, x) - spec.phi0));
    double ref_phase;
    if (const auto* plane = std::get_if<PlaneReference>(&spec.reference)) {
        ref_phase = plane->kx * x;
    } else {
        ref_phase = std::get<SphericalReference>(spec.reference).curvature * (x * x + y * y);
    }
    return std::norm(target + std::polar(1.0, ref_phase)) / 3.0;
}

BinaryMask synthesize_hologram(const HologramSpec& spec, const GridSpec& grid) {
    spec.validate();
    const double pitch = grid.pitch();
    if (const auto* plane = std::get_if<PlaneReference>(&spec.reference)) {
        const double period = 2.0 * kPi / plane->kx;
        if (period < 4.0 * pitch) {
            std::ostringstream msg;
            msg << "carrier period " << period / pitch << " pixels is under 4; use k_x <= "
                << kPi / (2.0 * pitch) << " rad/m or a finer grid";
            throw SamplingError(msg.str());
        }
    } else {
        const double c = std::abs(std::get<SphericalReference>(spec.reference).curvature);
        if (c > max_curvature(grid)) {
            std::ostringstream msg;
            msg << "Fresnel zones at the aperture edge are under 4 pixels; use |C| <= "
                << max_curvature(grid) << " rad/m^2 or a finer grid";
            throw SamplingError(msg.str());
        }
    }

    const int n = grid.samples_per_side();
    const double radius = 0.5 * grid.side_length();
    std::vector<std::uint8_t> values(grid.size(), 0);
    for (int iy = 0; iy < n; ++iy) {
        const double y = grid.coord(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = grid.coord(ix);
            if (x * x + y * y > radius * radius) continue;
            values[static_cast<std::size_t>(iy) * n + ix] =
                hologram_design_value(spec, x, y) > 0.5 ? 1 : 0;
        }
    }
    return BinaryMask(grid, std::move(values));
}

ComplexField transmission_field(const BinaryMask& mask) {
    std::vector<Complex> amps(mask.values().begin(), mask.values().end());
    return ComplexField(mask.grid(), 0.0, std::move(amps));
}

ComplexField diffract_far_field(const BinaryMask& mask, int oversample) {
    if (oversample < 1) throw DomainError("oversample must be >= 1");
    const ComplexField padded = embed_centered(transmission_field(mask), oversample * mask.n());
    const auto& grid = padded.grid();
    const int n = grid.samples_per_side();
    FftBuffer buf(grid.size());
    // (-1)^(ix+iy) moves the zero frequency to bin N/2.
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double sign = ((ix + iy) % 2 == 0) ? 1.0 : -1.0;
            buf[static_cast<std::size_t>(iy) * n + ix] = sign * padded(iy, ix);
        }
    }
    Fft2D fft(n);
    fft.forward(buf.data());

    // Phase for the half-pixel offset of the mask samples, so the transform is
    // referenced to the optical axis: exp(-2 pi i (k - N/2)(1/2 - N/2) / N) per axis.
    const double origin = grid.origin() == SampleOrigin::pixel_center ? 0.5 : 0.0;
    std::vector<Complex> axis_phase(n);
    for (int k = 0; k < n; ++k) {
        axis_phase[k] = std::polar(1.0, -2.0 * kPi * (k - n / 2) * (origin - n / 2) / n);
    }
    const double scale = 1.0 / n;
    std::vector<Complex> out(grid.size());
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * n + ix;
            out[i] = buf[i] * axis_phase[iy] * axis_phase[ix] * scale;
        }
    }
    const GridSpec freq(n, 1.0 / grid.pitch(), SampleOrigin::bin_center);
    return ComplexField(freq, 0.0, std::move(out));
}

double scattering_angle(double spatial_frequency, const BeamParameters& p) {
    return de_broglie_wavelength(p) * spatial_frequency;
}

OrderWindow order_window(const ComplexField& far_field, const HologramSpec& spec, int order) {
    spec.validate();
    if (!is_plane(spec)) {
        throw SeparationError(
            "spherical-reference orders overlap in the far field and separate only along the "
            "beam axis; locate them with scan_focus");
    }
    if (order < -1 || order > 1) throw DomainError("order must be -1, 0 or +1");
    const auto& g = far_field.grid();
    if (g.origin() != SampleOrigin::bin_center) {
        throw DomainError("extract_order expects a far-field pattern from diffract_far_field");
    }
    const int n = g.samples_per_side();
    const double df = g.pitch();  // cycles/m per bin
    const double kx = std::get<PlaneReference>(spec.reference).kx;
    const double carrier_bins = kx / (2.0 * kPi * df);

    OrderWindow w;
    w.center_iy = n / 2;
    w.center_ix = n / 2 + static_cast<int>(std::lround(order * carrier_bins));
    w.half_width = static_cast<int>(std::floor(0.5 * carrier_bins));
    if (w.half_width < 8) {
        std::ostringstream msg;
        msg << "order window of " << w.half_width << " bins is too small; use at least 16 fringes";
        throw SeparationError(msg.str());
    }
    if (w.center_ix - w.half_width < 0 || w.center_ix + w.half_width > n) {
        throw SeparationError("order window extends beyond the far-field grid");
    }

    double total = 0.0;
    double guard = 0.0;
    const double guard_start = 0.75 * w.half_width;
    for (int dy = -w.half_width; dy < w.half_width; ++dy) {
        for (int dx = -w.half_width; dx < w.half_width; ++dx) {
            const double v = std::norm(far_field(w.center_iy + dy, w.center_ix + dx));
            total += v;
            if (std::max(std::abs(dx), std::abs(dy)) >= guard_start) guard += v;
        }
    }
    if (!(total > 0)) throw SeparationError("order window holds no energy");
    w.leakage = guard / total;
    return w;
}

ComplexField extract_order(const ComplexField& far_field, const HologramSpec& spec, int order) {
    const OrderWindow w = order_window(far_field, spec, order);
    if (w.leakage > kMaxOrderLeakage) {
        std::ostringstream msg;
        msg << "order " << order << " overlaps its neighbours: " << 100.0 * w.leakage
            << "% of the window energy lies in its guard ring (limit " << 100.0 * kMaxOrderLeakage
            << "%); increase the carrier frequency";
        throw SeparationError(msg.str());
    }
    const int size = 2 * w.half_width;
    const double df = far_field.grid().pitch();
    ComplexField out(GridSpec(size, size * df, SampleOrigin::bin_center), 0.0);
    for (int jy = 0; jy < size; ++jy) {
        for (int jx = 0; jx < size; ++jx) {
            out(jy, jx) = far_field(w.center_iy - w.half_width + jy, w.center_ix - w.half_width + jx);
        }
    }
    normalize(out);
    return out;
}

double focal_distance(const HologramSpec& spec, const BeamParameters& p) {
    const auto* sph = std::get_if<SphericalReference>(&spec.reference);
    if (!sph) throw DomainError("focal distance needs a spherical reference");
    return base_wavenumber(p) / (2.0 * std::abs(sph->curvature));
}

FocusScan scan_focus(const ComplexField& transmitted, const BeamParameters& p, double z_min,
                     double z_max, double probe_radius, int n_samples) {
    if (!(z_min >= 0) || !(z_max > z_min)) throw DomainError("focus scan needs 0 <= z_min < z_max");
    if (n_samples < 2) throw DomainError("focus scan needs at least 2 samples");
    if (!(probe_radius > 0)) throw DomainError("probe radius must be positive");
    const auto& g = transmitted.grid();
    const int n = g.samples_per_side();
    const double k0 = base_wavenumber(p);
    const double interval = (z_max - z_min) / (n_samples - 1);
    // The approach to z_min is split into jumps no longer than the sampling
    // interval so the absorber sees the outgoing light often enough.
    const long approach = static_cast<long>(std::ceil(z_min / interval - 1e-9));

    auto transfer = [&](double dz) {
        std::vector<Complex> h(g.size());
        for (int iy = 0; iy < n; ++iy) {
            const int my = iy < n / 2 ? iy : iy - n;
            const double ky = 2.0 * kPi * my / g.side_length();
            for (int ix = 0; ix < n; ++ix) {
                const int mx = ix < n / 2 ? ix : ix - n;
                const double kx = 2.0 * kPi * mx / g.side_length();
                h[static_cast<std::size_t>(iy) * n + ix] =
                    std::polar(1.0 / g.size(), -(kx * kx + ky * ky) * dz / (2.0 * k0));
            }
        }
        return h;
    };
    const auto h_sample = transfer(interval);
    const auto h_approach = approach > 0 ? transfer(z_min / approach) : h_sample;

    // Smooth edge damping over the outer 1/8 of each side, applied per jump.
    std::vector<double> absorber(g.size());
    const int layer = std::max(1, n / 8);
    auto depth = [&](int i) {
        const int d = std::min(i, n - 1 - i);
        return d >= layer ? 0.0 : static_cast<double>(layer - d) / layer;
    };
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double d = std::max(depth(ix), depth(iy));
            absorber[static_cast<std::size_t>(iy) * n + ix] = std::exp(-6.0 * d * d);
        }
    }

    const double initial = grid_norm(transmitted);
    if (!(initial > 0)) throw DomainError("focus scan of a zero field");
    FftBuffer buf(transmitted.data().begin(), transmitted.data().end());
    Fft2D fft(n);
    auto jump = [&](const std::vector<Complex>& h) {
        fft.forward(buf.data());
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= h[i];
        fft.inverse(buf.data());
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= absorber[i];
    };
    auto encircled = [&]() {
        double sum = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            const double y = g.coord(iy);
            for (int ix = 0; ix < n; ++ix) {
                const double x = g.coord(ix);
                if (x * x + y * y <= probe_radius * probe_radius) {
                    sum += std::norm(buf[static_cast<std::size_t>(iy) * n + ix]);
                }
            }
        }
        return sum * g.pitch() * g.pitch() / initial;
    };

    for (long j = 0; j < approach; ++j) jump(h_approach);
    FocusScan scan;
    double best = -1.0;
    for (int j = 0; j < n_samples; ++j) {
        if (j > 0) jump(h_sample);
        const double z = z_min + j * interval;
        const double e = encircled();
        scan.z.push_back(z);
        scan.encircled.push_back(e);
        if (e > best) {
            best = e;
            scan.best_z = z;
        }
    }
    return scan;
}

}  // namespace evf
