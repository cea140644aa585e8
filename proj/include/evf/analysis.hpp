#pragma once

#include <vector>

#include "evf/grid.hpp"

namespace evf {

// Intensity on a circle of fixed radius, uniformly sampled over [0, 2 pi).
struct AngularProfile {
    double radius = 0.0;
    std::vector<double> samples;
};

// Bilinear interpolation of |a|^2 at n_samples points (a power of two >= 64)
// on the circle of the given radius about the axis. Throws DomainError when
// the circle leaves the interpolation domain.
AngularProfile angular_intensity(const ComplexField& field, double radius, int n_samples);

// Discrete circular harmonic c_m = (1/N) sum_j I_j e^{-i m phi_j}.
Complex circular_harmonic(const AngularProfile& profile, int m);

// Orientation of a 2|l|-petal pattern: -arg(c_{2l}) / 2l reduced to [0, pi/|l|).
// For I ~ cos^2(l(phi - Phi)) this is Phi mod pi/|l|. Throws NoPatternError when
// |c_{2l}| < 0.1 c_0.
double pattern_orientation(const AngularProfile& profile, int l);

// Nearest-branch continuation: the representative of `wrapped` modulo
// `period` closest to `previous`.
double unwrap_angle(double previous, double wrapped, double period);

// sqrt(2 <r^2> / (|l| + 1)) with <r^2> the intensity-weighted second moment
// about the axis; equals w for an n = 0 Laguerre-Gauss mode of width w.
// Throws DomainError for a zero field.
double effective_width(const ComplexField& field, int l);

// Intensity-weighted centroid (x, y).
struct Centroid {
    double x = 0.0;
    double y = 0.0;
};
Centroid intensity_centroid(const ComplexField& field);

// |sum conj(a) b pitch^2|^2. Throws GridMismatchError.
double fidelity(const ComplexField& a, const ComplexField& b);

// 2l-fold content of a whole 2-D intensity pattern: with
// C_m = sum_pixels I e^{-i m phi} (the pixel on the axis excluded),
// fraction = |C_{2l}| / C_0 and orientation = -arg(C_{2l}) / 2l in [0, pi/l).
// A cos^2(l(phi - Phi)) pattern gives fraction 1/2 and orientation Phi; a
// rotationally symmetric one gives 0.
struct HarmonicContent {
    double fraction = 0.0;
    double orientation = 0.0;
};
HarmonicContent harmonic_content(const ComplexField& field, int l);

// Root-mean-square difference of two normalised fields, sqrt(sum |a-b|^2 pitch^2).
double l2_distance(const ComplexField& a, const ComplexField& b);

}  // namespace evf
