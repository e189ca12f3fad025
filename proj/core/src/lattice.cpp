#include "pinterp/lattice.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pinterp {

Lattice Lattice::make(std::span<const AxisSpec> axes) {
    if (axes.empty() || axes.size() > 2)
        throw std::invalid_argument("lattice dimension must be 1 or 2");
    Lattice l;
    l.dim_ = static_cast<int>(axes.size());
    for (int a = 0; a < l.dim_; ++a) {
        const AxisSpec& s = axes[a];
        if (!std::isfinite(s.lo) || !std::isfinite(s.hi))
            throw std::invalid_argument("non-finite bound");
        if (s.lo >= s.hi)
            throw std::invalid_argument("inverted bounds");
        if (s.count < 3)
            throw std::invalid_argument("axis count must be >= 3");
        l.ax_[a] = s;
        l.h_[a] = (s.hi - s.lo) / (s.count - 1);
    }
    return l;
}

Lattice Lattice::make1d(double lo, double hi, int count) {
    AxisSpec s{lo, hi, count};
    return make(std::span<const AxisSpec>(&s, 1));
}

Lattice Lattice::make2d(double lo0, double hi0, int c0, double lo1, double hi1, int c1) {
    std::array<AxisSpec, 2> s{AxisSpec{lo0, hi0, c0}, AxisSpec{lo1, hi1, c1}};
    return make(std::span<const AxisSpec>(s.data(), 2));
}

std::size_t Lattice::size() const {
    std::size_t n = 1;
    for (int a = 0; a < dim_; ++a) n *= static_cast<std::size_t>(ax_[a].count);
    return n;
}

double Lattice::coord(int axis, int i) const {
    const AxisSpec& s = ax_[axis];
    if (s.lo == -s.hi) {
        // Mirror-exact form: coord(n-1-i) == -coord(i) bitwise, 0 at center.
        const int n1 = s.count - 1;
        return s.hi * (static_cast<double>(2 * i - n1) / n1);
    }
    if (i == s.count - 1) return s.hi;
    return s.lo + i * h_[axis];
}

std::vector<double> Lattice::axis_coords(int axis) const {
    std::vector<double> xs(ax_[axis].count);
    for (int i = 0; i < ax_[axis].count; ++i) xs[i] = coord(axis, i);
    return xs;
}

std::array<double, 2> Lattice::point(std::size_t flat) const {
    int i, j;
    unindex(flat, i, j);
    std::array<double, 2> p{coord(0, i), 0.0};
    if (dim_ == 2) p[1] = coord(1, j);
    return p;
}

std::size_t Lattice::mirror_index(std::size_t flat) const {
    int i, j;
    unindex(flat, i, j);
    const int mi = ax_[0].count - 1 - i;
    if (dim_ == 1) return index(mi);
    return index(mi, ax_[1].count - 1 - j);
}

bool Lattice::operator==(const Lattice& o) const {
    if (dim_ != o.dim_) return false;
    for (int a = 0; a < dim_; ++a) {
        if (ax_[a].lo != o.ax_[a].lo || ax_[a].hi != o.ax_[a].hi || ax_[a].count != o.ax_[a].count)
            return false;
    }
    return true;
}

std::string Lattice::describe() const {
    std::ostringstream os;
    for (int a = 0; a < dim_; ++a) {
        if (a) os << "x";
        os << "[" << ax_[a].lo << "," << ax_[a].hi << "]@" << ax_[a].count;
    }
    return os.str();
}

Lattice build_lattice(std::span<const AxisSpec> axes) { return Lattice::make(axes); }

Lattice build_lattice_1d(double lo, double hi, int count) { return Lattice::make1d(lo, hi, count); }

Lattice build_lattice_2d(double lo0, double hi0, int c0, double lo1, double hi1, int c1) {
    return Lattice::make2d(lo0, hi0, c0, lo1, hi1, c1);
}

}  // namespace pinterp
