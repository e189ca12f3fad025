#pragma once

#include <optional>
#include <utility>

#include "pinterp/interp.hpp"
#include "pinterp/report.hpp"
#include "pinterp/space_time.hpp"

namespace pinterp {

struct SolverParams {
    int time_layers = 33;
    int max_sweeps = 20000;
    double tolerance = 1e-7;        // sup of the discrete interpolation residual
    int convexify_every = 10;       // envelope projection period K
    double damping = 0.8;           // Jacobi damping in (0, 1]
    double hess_floor = 1e-6;       // strong-convexity floor epsilon
    int residual_every = 10;        // residual evaluation cadence
};

struct SolveReport {
    double final_residual = 0.0;
    int sweeps = 0;
    std::vector<double> residual_history;    // sampled every residual_every sweeps
    std::vector<double> projection_delta;    // sup correction per projection
    bool converged = false;
    bool monotone = true;  // history non-increasing after first convexification
    std::size_t degenerate_skips = 0;
};

/// Dirichlet solve of dtt F = (1/p) (Hess F)^{-1} grad(dt F).grad(dt F) on
/// [0,1] x lattice by damped Jacobi relaxation with periodic convex-envelope
/// projection, starting from the inf-convolution family. p = 1 dispatches to
/// interp_one per layer, p = inf to interp_linear. Boundary layers stay
/// bit-identical to the inputs. Non-convergence is reported, not thrown.
std::pair<SpaceTimeField, SolveReport> solve_p_interpolation(const GridFunction& F0,
                                                             const GridFunction& F1, double p,
                                                             const SolverParams& params = {});

/// Residual certificate: sup |det H_p| / (p^n det Hess F) together with
/// sup |residual|; passes when both are below the tolerance (default
/// (dt^2 + h^2) * scale).
CheckReport certify_family(const SpaceTimeField& field, double p,
                           std::optional<double> tol = std::nullopt, double hess_floor = 1e-6);

}  // namespace pinterp
