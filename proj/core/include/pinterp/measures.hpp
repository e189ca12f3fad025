#pragma once

#include <vector>

#include "pinterp/grid_function.hpp"
#include "pinterp/space_time.hpp"

namespace pinterp {

/// Normalized nonnegative weights w_k ~ cell_k * exp(-F_k - W_k) on a
/// lattice (trapezoid cells). Z records the pre-normalization mass.
struct ProbabilityWeights {
    Lattice lattice;
    std::vector<double> w;
    double z = 0.0;
    bool lebesgue_background = true;
    double boundary_mass = 0.0;  // relative mass on boundary cells
    bool tail_warning = false;   // boundary mass > 1e-6
};

/// Throws on zero or overflowing mass; warns (flag) when boundary cells
/// carry more than 1e-6 of the mass.
ProbabilityWeights weights_from_potential(const GridFunction& F, const GridFunction* W = nullptr);

double mean(const ProbabilityWeights& mu, const GridFunction& u);
double mean(const ProbabilityWeights& mu, std::span<const double> u);

/// Var = int u^2 dmu - (int u dmu)^2, computed as a compensated two-pass
/// centered sum; clamped at -1e-14.
double variance(const ProbabilityWeights& mu, const GridFunction& u);
double variance(const ProbabilityWeights& mu, std::span<const double> u);

/// alpha(t) = -log int e^{-F_t} (dnu), with second derivatives by centered
/// differences and by the variance identity
/// alpha'' = int dtt F dmu - Var_mu(dt F) at interior layers.
struct AlphaProfile {
    std::vector<double> t;
    std::vector<double> alpha;
    std::vector<double> alpha_dd_fd;   // NaN on boundary layers
    std::vector<double> alpha_dd_int;  // NaN on boundary layers
    std::vector<uint8_t> boundary;     // exclusion flags
    double dt = 0.0;

    double min_alpha_dd_fd() const;
    double min_alpha_dd_int() const;
};

AlphaProfile alpha_profile(const SpaceTimeField& field, const GridFunction* W = nullptr);

/// The integral route alone, at one interior layer.
double alpha_dd_integral(const SpaceTimeField& field, int layer, const GridFunction* W = nullptr);

/// | int (L phi)^2 dmu - int F'' phi'^2 dmu - int phi''^2 dmu | with
/// L = d^2/dx^2 - F' d/dx, on a 1D lattice. phi' must vanish near the
/// boundary (support check).
double ipp_residual(const GridFunction& F, const GridFunction& phi);

/// Trapezoid cell mass of lattice point k (product over axes).
double cell_mass(const Lattice& lat, std::size_t flat);

}  // namespace pinterp
