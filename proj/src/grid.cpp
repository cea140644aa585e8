#include "evf/grid.hpp"

#include <cmath>
#include <string>

#include "evf/errors.hpp"

namespace evf {

GridSpec::GridSpec(int samples_per_side, double side_length, SampleOrigin origin)
    : n_(samples_per_side), side_(side_length), origin_(origin) {
    if (n_ < 16 || n_ % 2 != 0) {
        throw DomainError("grid needs an even sample count >= 16, got " + std::to_string(n_));
    }
    if (!(side_ > 0) || !std::isfinite(side_)) throw DomainError("grid side length must be positive");
}

double GridSpec::coord(int i) const {
    const double offset = origin_ == SampleOrigin::pixel_center ? 0.5 : 0.0;
    return (i - n_ / 2 + offset) * pitch();
}

double GridSpec::index_of(double x) const {
    const double offset = origin_ == SampleOrigin::pixel_center ? 0.5 : 0.0;
    return x / pitch() + n_ / 2 - offset;
}

ComplexField::ComplexField(GridSpec grid, double z_position)
    : grid_(grid), z_(z_position), data_(grid.size()) {}

ComplexField::ComplexField(GridSpec grid, double z_position, std::vector<Complex> amplitudes)
    : grid_(grid), z_(z_position), data_(std::move(amplitudes)) {
    if (data_.size() != grid_.size()) {
        throw GridMismatchError("amplitude count " + std::to_string(data_.size()) +
                                " does not match grid " + std::to_string(grid_.size()));
    }
}

ComplexField& ComplexField::operator*=(Complex s) {
    for (auto& a : data_) a *= s;
    return *this;
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
    require_same_grid(grid_, other.grid_, "field addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

double grid_norm(const ComplexField& field) {
    double sum = 0.0;
    for (const auto& a : field.data()) sum += std::norm(a);
    const double p = field.grid().pitch();
    return sum * p * p;
}

void normalize(ComplexField& field) {
    const double norm = grid_norm(field);
    if (!(norm > 0) || !std::isfinite(norm)) throw DomainError("cannot normalize a zero field");
    field *= 1.0 / std::sqrt(norm);
}

ComplexField embed_centered(const ComplexField& field, int new_n) {
    const int n = field.n();
    if (new_n < n || (new_n - n) % 2 != 0) {
        throw DomainError("embedding needs a larger grid with an even size difference");
    }
    const auto& g = field.grid();
    ComplexField out(GridSpec(new_n, g.pitch() * new_n, g.origin()), field.z_position());
    const int offset = (new_n - n) / 2;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) out(iy + offset, ix + offset) = field(iy, ix);
    }
    return out;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) {
        throw GridMismatchError(std::string(what) + ": grid mismatch (" +
                                std::to_string(a.samples_per_side()) + " vs " +
                                std::to_string(b.samples_per_side()) + " samples)");
    }
}

}  // namespace evf
