#pragma once

#include <string>
#include <vector>

#include "evf/grid.hpp"
#include "evf/physics.hpp"

namespace evf {

// Laguerre-Gauss radial amplitude
//   R(r) = sqrt(2 n! / (pi (n+|l|)!)) (1/w) (sqrt2 r / w)^|l| exp(-r^2/w^2) L_n^|l|(2 r^2 / w^2),
// normalised so that 2 pi \int R^2 r dr = 1. With w = w_B this is the Landau
// eigenmode; other widths give the initial profile of a breathing beam.
double radial_profile(int n, int l, double r, double w);

struct ModeTerm {
    ModeIndex index;
    Complex coefficient;
    double waist;  // m
};

class ModeSuperposition {
public:
    // Throws DomainError unless sum |c|^2 = 1 +- 1e-9 and all waists > 0.
    ModeSuperposition(std::vector<ModeTerm> terms, BeamParameters params);

    // (n, +l, s) and (n, -l, s) with equal weight, lobes along phi0:
    //   (e^{-i l phi0} |+l> + e^{+i l phi0} |-l>) / sqrt2  ~  cos(l (phi - phi0)).
    static ModeSuperposition vortex_pair(int l, int n, Spin s, double waist,
                                         const BeamParameters& params, double phi0 = 0.0);
    // Single term with unit coefficient.
    static ModeSuperposition single(ModeIndex index, double waist, const BeamParameters& params);

    const std::vector<ModeTerm>& terms() const { return terms_; }
    const BeamParameters& params() const { return params_; }

private:
    std::vector<ModeTerm> terms_;
    BeamParameters params_;
};

// The mode R(r) e^{i l phi} of width w sampled at pixel centres and scaled to
// unit grid norm.
ComplexField sample_mode(const ModeIndex& idx, double waist, const GridSpec& grid);

// sum_i c_i R_i e^{i l_i phi} at z = 0 for any waists, normalised on the grid.
ComplexField sample_initial(const ModeSuperposition& s, const GridSpec& grid);

// Eigenstate superposition at distance z: each term carries e^{i theta_nls(z)}
// from the paraxial phase. All waists must equal the magnetic width (relative
// 1e-9); otherwise NotAnEigenstateError (propagate such beams numerically).
ComplexField sample_superposition(const ModeSuperposition& s, const GridSpec& grid, double z);

// Width of a Laguerre-Gauss beam whose waist w0 sits at z = 0:
//   w(z) = w_B sqrt(1 - [1 - (w0/w_B)^2] cos(2 k_L z)).
// This closed form is the first-order expansion of grin_width in
// (w0/w_B - 1). Throws DomainError for w0 <= 0 or B_z = 0.
// The matching wavefront radius R(z) and longitudinal phase xi(z) have no
// closed form here; the numerical propagator supplies the full envelope.
double width_function(double w0, const BeamParameters& p, double z);

// Exact width of a Gaussian-family beam in the quadratic magnetic potential,
//   w(z)^2 = w0^2 cos^2(k_L z) + (w_B^4 / w0^2) sin^2(k_L z).
double grin_width(double w0, const BeamParameters& p, double z);

// Human-readable warnings when the grid under-resolves a beam of the given
// width (fewer than 6 pixels across w) or the window is narrower than 6 w.
std::vector<std::string> grid_adequacy_warnings(const GridSpec& grid, double width);

}  // namespace evf
