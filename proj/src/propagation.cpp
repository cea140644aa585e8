#include "evf/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "evf/errors.hpp"

namespace evf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Plans are shared per grid size; FFTW plan creation is comparatively slow.
std::shared_ptr<const Fft2D> shared_fft(int n) {
    static std::mutex m;
    static std::map<int, std::weak_ptr<const Fft2D>> cache;
    std::lock_guard lock(m);
    if (auto hit = cache[n].lock()) return hit;
    auto made = std::make_shared<const Fft2D>(n);
    cache[n] = made;
    return made;
}

// Angular spatial frequency of FFT bin i on an n-point axis of length side.
double fft_wavenumber(int i, int n, double side) {
    const int m = i < n / 2 ? i : i - n;
    return kTwoPi * m / side;
}

constexpr int kContainmentCheckInterval = 32;

void check_containment(const FftBuffer& buf, const GridSpec& grid, double z) {
    const int n = grid.samples_per_side();
    double peak = 0.0;
    double border = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const bool edge_row = iy == 0 || iy == n - 1;
        for (int ix = 0; ix < n; ++ix) {
            const double v = std::norm(buf[static_cast<std::size_t>(iy) * n + ix]);
            peak = std::max(peak, v);
            if (edge_row || ix == 0 || ix == n - 1) border = std::max(border, v);
        }
    }
    if (border > kContainmentThreshold * peak) {
        std::ostringstream msg;
        msg << "field reached the grid border at z = " << z << " m (border/peak intensity "
            << border / peak << " > " << kContainmentThreshold
            << "); enlarge the grid side";
        throw ContainmentError(msg.str());
    }
}

}  // namespace

double max_step(const GridSpec& grid, const BeamParameters& p) {
    const double kmax = std::numbers::sqrt2 * std::numbers::pi / grid.pitch();
    return kTwoPi * base_wavenumber(p) / (kmax * kmax);
}

double default_step(const GridSpec& grid, const BeamParameters& p) {
    const double aliasing = max_step(grid, p) / 4.0;
    if (p.field_bz() == 0.0) return aliasing;
    return std::min(breathing_period(p) / 40.0, aliasing);
}

PropagationPlan::PropagationPlan(GridSpec grid, BeamParameters params, double dz,
                                 int steps_per_output, Boundary boundary)
    : grid_(grid),
      params_(params),
      dz_(dz),
      steps_per_output_(steps_per_output),
      boundary_(boundary),
      fft_(shared_fft(grid.samples_per_side())) {
    const int n = grid.samples_per_side();
    const double k0 = base_wavenumber(params);
    const double kl = larmor_wavenumber(params);
    kinetic_.resize(grid.size());
    half_kinetic_.resize(grid.size());
    potential_.resize(grid.size());
    for (int iy = 0; iy < n; ++iy) {
        const double ky = fft_wavenumber(iy, n, grid.side_length());
        const double y = grid.coord(iy);
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * n + ix;
            const double kx = fft_wavenumber(ix, n, grid.side_length());
            const double kin = -(kx * kx + ky * ky) * dz / (2.0 * k0);
            kinetic_[i] = std::polar(1.0, kin);
            half_kinetic_[i] = std::polar(1.0, 0.5 * kin);
            const double x = grid.coord(ix);
            potential_[i] = std::polar(1.0, -0.5 * k0 * kl * kl * (x * x + y * y) * dz);
        }
    }
    if (boundary == Boundary::absorbing) {
        // Per-step damping rising quadratically across the outer 1/8 of the window.
        absorber_.resize(grid.size());
        const int layer = std::max(1, n / 8);
        auto depth = [&](int i) {
            const int d = std::min(i, n - 1 - i);
            return d >= layer ? 0.0 : static_cast<double>(layer - d) / layer;
        };
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const double d = std::max(depth(ix), depth(iy));
                absorber_[static_cast<std::size_t>(iy) * n + ix] = 1.0 - 0.1 * d * d;
            }
        }
    }
}

PropagationPlan make_plan(const GridSpec& grid, const BeamParameters& p, double dz,
                          int steps_per_output, Boundary boundary) {
    const double limit = max_step(grid, p);
    if (!(dz > 0) || !std::isfinite(dz)) throw DomainError("step length dz must be positive");
    if (dz >= limit) {
        std::ostringstream msg;
        msg << "step dz = " << dz << " m violates the anti-aliasing bound; maximum admissible dz is "
            << limit << " m (exclusive)";
        throw StepTooLargeError(msg.str());
    }
    if (steps_per_output < 1) throw DomainError("steps_per_output must be >= 1");
    return PropagationPlan(grid, p, dz, steps_per_output, boundary);
}

ComplexField propagate_definite_l(const ComplexField& field, int l, const PropagationPlan& plan,
                                  long n_steps) {
    require_same_grid(field.grid(), plan.grid_, "propagate_definite_l");
    if (n_steps < 0) throw DomainError("n_steps must be >= 0");
    const auto& grid = plan.grid_;
    const std::size_t size = grid.size();
    const bool contained = plan.boundary_ == Boundary::contained;

    FftBuffer buf(field.data().begin(), field.data().end());
    if (contained) check_containment(buf, grid, field.z_position());

    if (n_steps > 0) {
        const Fft2D& fft = *plan.fft_;
        const double inv = 1.0 / static_cast<double>(size);
        auto kinetic = [&](const std::vector<Complex>& factors) {
            fft.forward(buf.data());
            for (std::size_t i = 0; i < size; ++i) buf[i] *= factors[i] * inv;
            fft.inverse(buf.data());
        };
        // T/2 (V T)^(n-1) V T/2: adjacent half kinetic steps merged.
        kinetic(plan.half_kinetic_);
        for (long s = 0; s < n_steps; ++s) {
            if (contained) {
                for (std::size_t i = 0; i < size; ++i) buf[i] *= plan.potential_[i];
            } else {
                for (std::size_t i = 0; i < size; ++i) buf[i] *= plan.potential_[i] * plan.absorber_[i];
            }
            kinetic(s + 1 == n_steps ? plan.half_kinetic_ : plan.kinetic_);
            if (contained && ((s + 1) % kContainmentCheckInterval == 0 || s + 1 == n_steps)) {
                check_containment(buf, grid, field.z_position() + (s + 1) * plan.dz_);
            }
        }
    }

    const double distance = n_steps * plan.dz_;
    const Complex zeeman =
        l == 0 ? Complex(1.0, 0.0)
               : std::polar(1.0, -l * larmor_wavenumber(plan.params_) * distance);
    std::vector<Complex> out(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = buf[i] * zeeman;
    return ComplexField(grid, field.z_position() + distance, std::move(out));
}

namespace {

// Components are evolved as "carriers": the unit +|l| mode of each distinct
// (n, |l|, waist), propagated without its Zeeman phase. On a pixel-centred
// grid the -|l| mode is the exact y-mirror image of the +|l| mode and the
// propagator commutes with that reflection, so both signs share a carrier.
struct Carrier {
    int n;
    int abs_l;
    bool negative;  // only when mirroring is unavailable
    double waist;
    ComplexField field;
};

struct Component {
    ModeTerm term;
    std::size_t carrier;
    bool mirrored;
    Complex weight;  // coefficient times joint normalisation
};

struct Components {
    std::vector<Carrier> carriers;
    std::vector<Component> parts;
};

ComplexField mirror_y(const ComplexField& f) {
    const int n = f.n();
    ComplexField out(f.grid(), f.z_position());
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) out(iy, ix) = f(n - 1 - iy, ix);
    }
    return out;
}

Components sample_components(const ModeSuperposition& s, const GridSpec& grid) {
    const bool can_mirror = grid.origin() == SampleOrigin::pixel_center;
    Components c;
    for (const auto& t : s.terms()) {
        const int abs_l = std::abs(t.index.l);
        const bool negative = t.index.l < 0;
        const bool carrier_negative = negative && !can_mirror;
        std::size_t k = 0;
        while (k < c.carriers.size() &&
               !(c.carriers[k].n == t.index.n && c.carriers[k].abs_l == abs_l &&
                 c.carriers[k].negative == carrier_negative && c.carriers[k].waist == t.waist)) {
            ++k;
        }
        if (k == c.carriers.size()) {
            const ModeIndex idx{t.index.n, carrier_negative ? -abs_l : abs_l, Spin::none};
            c.carriers.push_back({t.index.n, abs_l, carrier_negative, t.waist, sample_mode(idx, t.waist, grid)});
        }
        c.parts.push_back({t, k, negative && can_mirror, t.coefficient});
    }
    // Joint normalisation so the z = 0 sum matches sample_initial exactly.
    ComplexField total(grid, 0.0);
    for (const auto& p : c.parts) {
        ComplexField f = p.mirrored ? mirror_y(c.carriers[p.carrier].field) : c.carriers[p.carrier].field;
        f *= p.weight;
        total += f;
    }
    const double scale = 1.0 / std::sqrt(grid_norm(total));
    for (auto& p : c.parts) p.weight *= scale;
    return c;
}

void advance(Components& c, const PropagationPlan& plan, long n_steps) {
    for (auto& carrier : c.carriers) carrier.field = propagate_definite_l(carrier.field, 0, plan, n_steps);
}

ComplexField sum_components(const Components& c, const BeamParameters& p) {
    const auto& first = c.carriers.front().field;
    ComplexField total(first.grid(), first.z_position());
    const double kl = larmor_wavenumber(p);
    const double g = p.constants().g_factor;
    for (const auto& part : c.parts) {
        const ComplexField& base = c.carriers[part.carrier].field;
        const double z = base.z_position();
        const double phase = -(part.term.index.l + g * spin_value(part.term.index.s)) * kl * z;
        ComplexField f = part.mirrored ? mirror_y(base) : base;
        f *= part.weight * std::polar(1.0, phase);
        total += f;
    }
    return total;
}

void require_same_params(const ModeSuperposition& s, const PropagationPlan& plan) {
    const auto& a = s.params();
    const auto& b = plan.params();
    if (a.kinetic_energy() != b.kinetic_energy() || a.field_bz() != b.field_bz()) {
        throw DomainError("superposition and plan use different beam parameters");
    }
}

}  // namespace

ComplexField propagate_superposition(const ModeSuperposition& s, const GridSpec& grid,
                                     const PropagationPlan& plan, double z_total) {
    require_same_grid(grid, plan.grid(), "propagate_superposition");
    require_same_params(s, plan);
    const double ratio = z_total / plan.dz();
    const long n_steps = std::lround(ratio);
    if (z_total < 0 || std::abs(ratio - n_steps) > 1e-6) {
        std::ostringstream msg;
        msg << "z_total = " << z_total << " m is not a non-negative multiple of dz = " << plan.dz();
        throw DomainError(msg.str());
    }
    auto parts = sample_components(s, grid);
    advance(parts, plan, n_steps);
    return sum_components(parts, s.params());
}

void propagate_superposition_series(const ModeSuperposition& s, const GridSpec& grid,
                                    const PropagationPlan& plan, int n_outputs,
                                    const std::function<void(const ComplexField&)>& on_output) {
    require_same_grid(grid, plan.grid(), "propagate_superposition_series");
    require_same_params(s, plan);
    if (n_outputs < 0) throw DomainError("n_outputs must be >= 0");
    auto parts = sample_components(s, grid);
    on_output(sum_components(parts, s.params()));
    for (int k = 0; k < n_outputs; ++k) {
        advance(parts, plan, plan.steps_per_output());
        on_output(sum_components(parts, s.params()));
    }
}

double border_to_peak_ratio(const ComplexField& field) {
    const int n = field.n();
    double peak = 0.0;
    double border = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double v = std::norm(field(iy, ix));
            peak = std::max(peak, v);
            if (iy == 0 || iy == n - 1 || ix == 0 || ix == n - 1) border = std::max(border, v);
        }
    }
    return peak > 0 ? border / peak : 0.0;
}

}  // namespace evf
