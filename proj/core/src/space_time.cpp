#include "pinterp/space_time.hpp"

#include <stdexcept>

namespace pinterp {

SpaceTimeField::SpaceTimeField(Lattice space, int layers, double t_lo, double t_hi)
    : lat_(std::move(space)), t0_(t_lo), t1_(t_hi) {
    if (layers < 3) throw std::invalid_argument("SpaceTimeField: need >= 3 layers");
    if (!(t_lo < t_hi)) throw std::invalid_argument("SpaceTimeField: inverted time bounds");
    vals_.assign(layers, std::vector<double>(lat_.size(), 0.0));
}

SpaceTimeField SpaceTimeField::from_layers(Lattice space, std::vector<std::vector<double>> layers,
                                           double t_lo, double t_hi) {
    SpaceTimeField f(space, static_cast<int>(layers.size()), t_lo, t_hi);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].size() != f.lat_.size())
            throw std::invalid_argument("SpaceTimeField: layer size mismatch");
        f.vals_[i] = std::move(layers[i]);
    }
    return f;
}

double SpaceTimeField::time(int i) const {
    const int n1 = layers() - 1;
    if (t0_ == -t1_) return t1_ * (static_cast<double>(2 * i - n1) / n1);
    if (i == n1) return t1_;
    return t0_ + i * dt();
}

GridFunction SpaceTimeField::layer(int i) const {
    GridFunction g(lat_, vals_[i]);
    g.set_even(even_);
    return g;
}

bool SpaceTimeField::proper() const {
    for (int i = 0; i < layers(); ++i) {
        bool any = false;
        for (double v : vals_[i])
            if (is_finite_value(v)) { any = true; break; }
        if (!any) return false;
    }
    return true;
}

}  // namespace pinterp
