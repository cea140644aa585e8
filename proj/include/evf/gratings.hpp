#pragma once

// Binary holograms that diffract a vortex superposition of +-l into their
// first orders. The mask is the thresholded interference of the target
// 2 cos(l (phi - phi0)) with a reference wave:
//
//   mask = 1  if  |2 cos(l (phi - phi0)) + ref|^2 / 3 > 1/2,  else 0,
//
// with ref = e^{i k_x x} (orders separated transversely) or e^{i C r^2}
// (orders separated along the axis). Lobes of the reconstructed pattern lie
// along phi0; the singularity lines sit at phi0 + (2k+1) pi / 2l.

#include <cstdint>
#include <variant>
#include <vector>

#include "evf/grid.hpp"
#include "evf/physics.hpp"

namespace evf {

struct PlaneReference {
    double kx;  // rad/m, > 0
};

struct SphericalReference {
    double curvature;  // C in rad/m^2, != 0
};

struct HologramSpec {
    int l = 1;          // >= 1
    double phi0 = 0.0;  // rad
    std::variant<PlaneReference, SphericalReference> reference = PlaneReference{1.0};

    // Throws DomainError when an invariant is violated.
    void validate() const;
};

class BinaryMask {
public:
    BinaryMask(GridSpec grid, std::vector<std::uint8_t> values);

    const GridSpec& grid() const { return grid_; }
    int n() const { return grid_.samples_per_side(); }
    std::uint8_t operator()(int iy, int ix) const {
        return values_[static_cast<std::size_t>(iy) * n() + ix];
    }
    const std::vector<std::uint8_t>& values() const { return values_; }
    std::size_t open_count() const;

private:
    GridSpec grid_;
    std::vector<std::uint8_t> values_;
};

// Carrier giving `fringes` periods across the grid side.
double carrier_for_fringes(double fringes, const GridSpec& grid);

// Default plane carrier: N/8 fringes across the side, a whole 8 pixels per
// fringe. Non-integer pixel periods alias harmonics of the binary fringes into
// the order windows, and much coarser carriers leave the orders overlapping;
// both break the 1% separation limit of extract_order.
double default_carrier(const GridSpec& grid);

// Curvature at which the finest Fresnel zone, at the aperture edge, spans 4 pixels.
double max_curvature(const GridSpec& grid);

// Evaluates the threshold rule at pixel centres (a value of exactly 1/2 maps
// to 0) inside the inscribed circular aperture; outside it the mask is 0.
// Throws SamplingError when a fringe period is under 4 pixels.
BinaryMask synthesize_hologram(const HologramSpec& spec, const GridSpec& grid);

// Real-valued threshold argument |2 cos(l(phi-phi0)) + ref|^2 / 3 at (x, y).
double hologram_design_value(const HologramSpec& spec, double x, double y);

// Far-field amplitude of the mask as a transmission function: the mask is
// zero-padded to oversample * N samples per side and transformed with a
// unitary centred 2-D DFT, so sum |F|^2 = sum mask. The output grid is
// bin-centred in spatial frequency (cycles/m) with spacing 1/(oversample side).
// Without padding the bins sample the intensity at only the Nyquist rate of
// the amplitude, which aliases the aperture autocorrelation and skews the
// angular structure of each order; 4x keeps that skew below 0.2 degrees.
ComplexField diffract_far_field(const BinaryMask& mask, int oversample = 4);

// The mask as a unit-amplitude transmission field on its own grid at z = 0.
ComplexField transmission_field(const BinaryMask& mask);

// Scattering angle of spatial frequency f (cycles/m) for a beam: lambda f.
double scattering_angle(double spatial_frequency, const BeamParameters& p);

// Fraction of window energy in the outer quarter of its half-width above
// which orders count as overlapping.
inline constexpr double kMaxOrderLeakage = 0.01;

struct OrderWindow {
    int center_ix = 0;  // bin index of the order centre along x
    int center_iy = 0;
    int half_width = 0;   // bins
    double leakage = 0.0;  // guard-ring energy fraction
};

// Locates the window (half-width k_x/2) of a plane-reference order.
OrderWindow order_window(const ComplexField& far_field, const HologramSpec& spec, int order);

// Crops the window of order -1, 0 or +1, re-centred (bin-centred grid) and
// normalised. Throws SeparationError for a spherical reference (its orders
// overlap in angle and separate only along z) or when the guard ring of the
// window holds more than kMaxOrderLeakage of its energy.
ComplexField extract_order(const ComplexField& far_field, const HologramSpec& spec, int order);

// Free-space focal distance of the converging first order of a spherical
// hologram, k0 / (2 |C|).
double focal_distance(const HologramSpec& spec, const BeamParameters& p);

struct FocusScan {
    std::vector<double> z;             // m
    std::vector<double> encircled;     // energy fraction inside the probe radius
    double best_z = 0.0;               // argmax of encircled
};

// Propagates the transmission field through free space (B = 0) and records,
// at n_samples planes evenly spaced over [z_min, z_max], the fraction of the
// initial energy inside a disk of radius probe_radius on the axis. The plane
// of maximal concentration marks a real focus. Without a field the split-step
// product reduces to the exact transfer function exp(-i k^2 dz / 2k0), so the
// scan jumps from plane to plane in one transform each; an absorbing layer on
// the outer 1/8 of the window removes light leaving the grid between jumps.
FocusScan scan_focus(const ComplexField& transmitted, const BeamParameters& p, double z_min,
                     double z_max, double probe_radius, int n_samples = 65);

}  // namespace evf
