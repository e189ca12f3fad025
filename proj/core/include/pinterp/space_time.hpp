#pragma once

#include <vector>

#include "pinterp/grid_function.hpp"

namespace pinterp {

/// Family F(t_i, .) on a uniform time grid x space lattice. Layers 0 and M
/// are boundary layers and stay bit-identical to the supplied data.
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    /// Uniform time grid on [t_lo, t_hi] with `layers` >= 3 layers.
    SpaceTimeField(Lattice space, int layers, double t_lo = 0.0, double t_hi = 1.0);

    static SpaceTimeField from_layers(Lattice space, std::vector<std::vector<double>> layers,
                                      double t_lo = 0.0, double t_hi = 1.0);

    const Lattice& space() const { return lat_; }
    int layers() const { return static_cast<int>(vals_.size()); }
    double t_lo() const { return t0_; }
    double t_hi() const { return t1_; }
    double dt() const { return (t1_ - t0_) / (layers() - 1); }
    double time(int i) const;

    std::span<const double> layer_values(int i) const { return vals_[i]; }
    std::span<double> layer_values(int i) { return vals_[i]; }
    double at(int layer, int i, int j = 0) const { return vals_[layer][lat_.index(i, j)]; }

    /// Materializes layer i as a GridFunction (with the field's even flag).
    GridFunction layer(int i) const;

    bool even() const { return even_; }
    void set_even(bool e) { even_ = e; }

    /// True if every layer has at least one finite value.
    bool proper() const;

    std::string provenance() const { return prov_; }
    void set_provenance(std::string p) { prov_ = std::move(p); }

private:
    Lattice lat_;
    std::vector<std::vector<double>> vals_;
    double t0_ = 0.0, t1_ = 1.0;
    bool even_ = false;
    std::string prov_;
};

}  // namespace pinterp
