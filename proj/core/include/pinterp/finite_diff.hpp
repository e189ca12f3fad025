#pragma once

#include <vector>

#include "pinterp/grid_function.hpp"

namespace pinterp {

/// Central-stencil derivative fields at interior lattice points. Points
/// whose stencil touches a +inf sample are marked non-evaluable rather
/// than crashing; boundary points are always non-evaluable.
struct DerivativeField {
    Lattice lattice;
    std::vector<uint8_t> valid;     // per flat index
    std::vector<double> gx, gy;     // gradient (gy unused in 1D)
    std::vector<double> hxx, hxy, hyy;

    bool is_valid(std::size_t flat) const { return valid[flat] != 0; }
    /// Smallest Hessian eigenvalue at a valid point.
    double hess_min_eig(std::size_t flat) const;
    double hess_max_eig(std::size_t flat) const;
    double hess_det(std::size_t flat) const;
    /// (Hess)^{-1} g . g for the stored gradient-like vector (a, b).
    double hess_inv_quadform(std::size_t flat, double a, double b) const;
};

DerivativeField finite_diff(const GridFunction& f);

/// Second-order stencils with one-sided fallback at spatial edges
/// (exact for quadratics); used by the relaxation solver so every
/// column stays updatable. +inf in the stencil marks the point invalid.
DerivativeField finite_diff_extended(const GridFunction& f);

/// Eigenvalues of symmetric 2x2 [[a, b], [b, c]].
void eig_sym2(double a, double b, double c, double& lo, double& hi);
/// Smallest eigenvalue of symmetric 3x3 (closed form).
double min_eig_sym3(double a11, double a12, double a13, double a22, double a23, double a33);

}  // namespace pinterp
