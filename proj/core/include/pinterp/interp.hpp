#pragma once

#include <optional>

#include "pinterp/legendre.hpp"
#include "pinterp/report.hpp"
#include "pinterp/space_time.hpp"

namespace pinterp {

/// Inf-convolution interpolant at time t via the dual route
/// L[(1-t) LF0 + t LF1] on a shared dual window. At t = 0/1 returns the
/// convex envelope of the endpoint. Output is convex by construction and
/// minorizes interp_linear.
GridFunction interp_one(const GridFunction& F0, const GridFunction& F1, double t);

/// Pointwise affine combination (1-t) F0 + t F1; +inf absorbing.
GridFunction interp_linear(const GridFunction& F0, const GridFunction& F1, double t);

/// Families on a uniform time grid with bit-identical boundary layers.
SpaceTimeField interp_one_family(const GridFunction& F0, const GridFunction& F1, int layers);
SpaceTimeField interp_linear_family(const GridFunction& F0, const GridFunction& F1, int layers);

/// Pointwise p-interpolation data at interior (t, x): the residual
/// r = dtt F - (1/p) (Hess F)^{-1} grad(dt F) . grad(dt F), det H_p, and
/// the smallest eigenvalue of the bordered matrix H_p.
struct ResidualField {
    int layers = 0;
    Lattice space;
    double dt = 0.0;
    double p = 0.0;
    // Flattened layer-major (layer * lattice.size() + flat); only interior
    // layers and stencil-valid points are populated.
    std::vector<double> residual, det_h, min_eig;
    enum Status : uint8_t { kOk = 0, kDegenerate = 1, kNonEvaluable = 2 };
    std::vector<uint8_t> status;

    // Aggregates over evaluable, non-degenerate points.
    double sup_abs_residual = 0.0;
    double min_det_h = 0.0;
    double min_eig_h = 0.0;
    double scale = 1.0;  // max |H_p entry| seen, >= 1
    std::size_t evaluated = 0;
    std::size_t degenerate_count = 0;
    int worst_layer = -1;
    std::size_t worst_flat = 0;
};

ResidualField residual_p(const SpaceTimeField& field, double p, double hess_floor = 1e-6);

/// H_p >= -tol * Id at all interior points. Also spot-checks Semmes's line
/// condition: discrete Laplacians of (s,t) -> F(t, x0 + (t + sqrt(p-1) s) y0)
/// along sampled lines (reported in the provenance).
CheckReport subfamily_check(const SpaceTimeField& field, double p,
                            std::optional<double> tol = std::nullopt,
                            double hess_floor = 1e-6);

/// Per-layer Legendre transform on a shared dual lattice (union of layer
/// slope ranges). Uses the derivative-grade conjugate so that t-stencils of
/// the dual field converge.
SpaceTimeField dual_family(const SpaceTimeField& field);

/// p -> p/(p-1); maps 1 <-> inf and fixes 2.
double conjugate_exponent(double p);

}  // namespace pinterp
