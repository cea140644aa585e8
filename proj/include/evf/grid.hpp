#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace evf {

using Complex = std::complex<double>;

// Where the coordinate origin sits relative to the samples.
//   pixel_center: x = (i - N/2 + 1/2) * pitch; the axis falls between samples
//                 so r = 0 is never sampled (real-space fields, masks).
//   bin_center:   x = (i - N/2) * pitch; the origin is sample N/2, matching a
//                 centred DFT (far-field patterns).
enum class SampleOrigin { pixel_center, bin_center };

// Square transverse grid centred on the beam axis.
class GridSpec {
public:
    // samples_per_side: even, >= 16. side_length: > 0 (metres in real space,
    // cycles per metre for far-field grids).
    GridSpec(int samples_per_side, double side_length,
             SampleOrigin origin = SampleOrigin::pixel_center);

    int samples_per_side() const { return n_; }
    double side_length() const { return side_; }
    SampleOrigin origin() const { return origin_; }
    double pitch() const { return side_ / n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    // Physical coordinate of sample i along either axis.
    double coord(int i) const;
    // Fractional sample index of a coordinate (inverse of coord).
    double index_of(double x) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int n_;
    double side_;
    SampleOrigin origin_;
};

// Complex amplitudes on a GridSpec, row-major: element (iy, ix) is at
// physical (coord(ix), coord(iy)).
class ComplexField {
public:
    ComplexField(GridSpec grid, double z_position);
    ComplexField(GridSpec grid, double z_position, std::vector<Complex> amplitudes);

    const GridSpec& grid() const { return grid_; }
    double z_position() const { return z_; }
    void set_z_position(double z) { z_ = z; }

    int n() const { return grid_.samples_per_side(); }
    Complex& operator()(int iy, int ix) { return data_[static_cast<std::size_t>(iy) * n() + ix]; }
    const Complex& operator()(int iy, int ix) const {
        return data_[static_cast<std::size_t>(iy) * n() + ix];
    }

    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    ComplexField& operator*=(Complex s);
    // Adds another field on the same grid; throws GridMismatchError otherwise.
    ComplexField& operator+=(const ComplexField& other);

private:
    GridSpec grid_;
    double z_;
    std::vector<Complex> data_;
};

// Sum |a|^2 pitch^2.
double grid_norm(const ComplexField& field);

// Rescales to unit grid_norm. Throws DomainError on a zero field.
void normalize(ComplexField& field);

// Copies `field` into the centre of a zero-filled grid with the same pitch
// and new_n >= n samples per side (new_n - n even).
ComplexField embed_centered(const ComplexField& field, int new_n);

// Throws GridMismatchError if the grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace evf
