#pragma once

// Split-step Fourier solver for the paraxial envelope equation in a uniform
// longitudinal field,
//
//   lap_perp v + 2 i k0 dv/dz - k0^2 k_L^2 r^2 v = 0,
//
// with the orbital Zeeman term applied afterwards as the exact scalar phase
// e^{-i l k_L z} of a definite-OAM component. General beams are handled as
// lists of such components (see propagate_superposition).

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "evf/fft.hpp"
#include "evf/grid.hpp"
#include "evf/modes.hpp"
#include "evf/physics.hpp"

namespace evf {

enum class Boundary {
    // Periodic window; any field reaching the edge (> 1e-6 of peak intensity)
    // raises ContainmentError. Evolution is unitary.
    contained,
    // A damping layer over the outer 1/8 of each side absorbs outgoing waves.
    // No containment check; norm is not conserved.
    absorbing,
};

// Border-to-peak intensity ratio above which a contained propagation fails.
inline constexpr double kContainmentThreshold = 1e-6;

class PropagationPlan {
public:
    const GridSpec& grid() const { return grid_; }
    const BeamParameters& params() const { return params_; }
    double dz() const { return dz_; }
    int steps_per_output() const { return steps_per_output_; }
    Boundary boundary() const { return boundary_; }

    // exp(-i k_perp^2 dz / 2k0) in FFT (unshifted) order.
    std::span<const Complex> kinetic_phase() const { return kinetic_; }
    // Same for dz/2, the outer halves of the symmetric split.
    std::span<const Complex> half_kinetic_phase() const { return half_kinetic_; }
    // exp(-i k0 k_L^2 r^2 dz / 2) per pixel.
    std::span<const Complex> potential_phase() const { return potential_; }

private:
    friend PropagationPlan make_plan(const GridSpec&, const BeamParameters&, double, int, Boundary);
    friend ComplexField propagate_definite_l(const ComplexField&, int, const PropagationPlan&, long);

    PropagationPlan(GridSpec grid, BeamParameters params, double dz, int steps_per_output,
                    Boundary boundary);

    GridSpec grid_;
    BeamParameters params_;
    double dz_;
    int steps_per_output_;
    Boundary boundary_;
    std::vector<Complex> kinetic_;
    std::vector<Complex> half_kinetic_;
    std::vector<Complex> potential_;
    std::vector<double> absorber_;  // empty unless Boundary::absorbing
    std::shared_ptr<const Fft2D> fft_;
};

// Exclusive upper limit on dz from k_perp,max^2 dz / (2 k0) < pi, with
// k_perp,max the grid corner frequency sqrt2 * pi / pitch.
double max_step(const GridSpec& grid, const BeamParameters& p);

// min(breathing period / 40, max_step / 4); max_step / 4 when B_z = 0.
double default_step(const GridSpec& grid, const BeamParameters& p);

// Precomputes the symmetric-split phase factors. Throws StepTooLargeError
// (quoting max_step) when dz violates the anti-aliasing bound.
PropagationPlan make_plan(const GridSpec& grid, const BeamParameters& p, double dz,
                          int steps_per_output = 1, Boundary boundary = Boundary::contained);

// Advances a component of definite OAM l by n_steps * dz. The caller asserts
// the field is an L_z eigenstate with eigenvalue l; with B_z = 0 (or l = 0)
// any field is admissible. The result is the envelope u with the e^{i k0 z}
// carrier stripped. Throws GridMismatchError and ContainmentError.
ComplexField propagate_definite_l(const ComplexField& field, int l, const PropagationPlan& plan,
                                  long n_steps);

// Samples every term at z = 0 (jointly normalised), propagates each on its
// own, applies its orbital and spin Zeeman phases e^{-i (l + g s) k_L z} and
// sums coherently. Terms +l and -l of equal n and waist share one propagation
// on pixel-centred grids (they are mirror images).
// z_total must be an integer multiple of plan.dz().
ComplexField propagate_superposition(const ModeSuperposition& s, const GridSpec& grid,
                                     const PropagationPlan& plan, double z_total);

// As propagate_superposition, reporting the summed field at z = 0 and after
// every plan.steps_per_output() steps, n_outputs times.
void propagate_superposition_series(const ModeSuperposition& s, const GridSpec& grid,
                                    const PropagationPlan& plan, int n_outputs,
                                    const std::function<void(const ComplexField&)>& on_output);

// Largest border intensity divided by peak intensity.
double border_to_peak_ratio(const ComplexField& field);

}  // namespace evf
