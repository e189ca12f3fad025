#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pinterp {

/// One axis of a uniform lattice: [lo, hi] sampled at `count` points.
struct AxisSpec {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

/// Uniform lattice over a box in dimension 1 or 2. Endpoints are included
/// exactly; symmetric axes (lo == -hi) generate bitwise mirror-symmetric
/// coordinates with an exact 0 at the center of odd-count axes.
class Lattice {
public:
    Lattice() = default;

    static Lattice make(std::span<const AxisSpec> axes);
    static Lattice make1d(double lo, double hi, int count);
    static Lattice make2d(double lo0, double hi0, int c0, double lo1, double hi1, int c1);

    int dim() const { return dim_; }
    int count(int axis) const { return ax_[axis].count; }
    double lo(int axis) const { return ax_[axis].lo; }
    double hi(int axis) const { return ax_[axis].hi; }
    double spacing(int axis) const { return h_[axis]; }
    bool symmetric(int axis) const { return ax_[axis].lo == -ax_[axis].hi; }

    std::size_t size() const;

    /// Coordinate of point i along `axis`; exact at endpoints.
    double coord(int axis, int i) const;

    /// All coordinates of one axis.
    std::vector<double> axis_coords(int axis) const;

    std::size_t index(int i, int j = 0) const {
        return dim_ == 1 ? static_cast<std::size_t>(i)
                         : static_cast<std::size_t>(i) * ax_[1].count + j;
    }
    void unindex(std::size_t flat, int& i, int& j) const {
        if (dim_ == 1) { i = static_cast<int>(flat); j = 0; }
        else { i = static_cast<int>(flat / ax_[1].count); j = static_cast<int>(flat % ax_[1].count); }
    }
    std::array<double, 2> point(std::size_t flat) const;

    /// Flat index of the mirror point x -> -x. Valid on symmetric axes only.
    std::size_t mirror_index(std::size_t flat) const;

    bool operator==(const Lattice& o) const;
    bool operator!=(const Lattice& o) const { return !(*this == o); }

    std::string describe() const;

private:
    int dim_ = 0;
    std::array<AxisSpec, 2> ax_{};
    std::array<double, 2> h_{};
};

/// Builds a lattice, validating bounds and counts.
/// Throws std::invalid_argument on inverted bounds, count < 3, or
/// non-finite bounds.
Lattice build_lattice(std::span<const AxisSpec> axes);
Lattice build_lattice_1d(double lo, double hi, int count);
Lattice build_lattice_2d(double lo0, double hi0, int c0, double lo1, double hi1, int c1);

}  // namespace pinterp
