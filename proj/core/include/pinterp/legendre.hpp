#pragma once

#include <array>
#include <optional>

#include "pinterp/grid_function.hpp"

namespace pinterp {

/// Dual (slope-variable) lattice plus the attained one-sided slope range
/// of the primal samples. Transform values at dual points outside the
/// attained range are reported as the +inf sentinel; the default window
/// is clamped to the attained range so every point is finite.
struct DualLattice {
    Lattice lattice;
    std::array<double, 2> attained_lo{0.0, 0.0};
    std::array<double, 2> attained_hi{0.0, 0.0};
};

/// Per-axis one-sided difference-quotient range over finite sample pairs.
void slope_range(const GridFunction& f, int axis, double& lo, double& hi);

/// Dual window from the extreme one-sided slopes. `expand` > 1 widens the
/// window symmetrically about its midpoint (out-of-range points then carry
/// the +inf sentinel). Counts default to the primal counts.
DualLattice auto_dual_lattice(const GridFunction& f, double expand = 1.0,
                              const std::array<int, 2>* counts = nullptr);

/// Dual descriptor targeting an explicit lattice (used for back-transforms).
DualLattice dual_to_target(const GridFunction& f, const Lattice& target);

/// Discrete Legendre transform sup_x { x.y - f(x) } over the lattice
/// samples, by the monotone lower-convex-envelope merge. Agrees with the
/// brute-force sup over all lattice points; ties resolve to the smallest
/// maximizing x.
GridFunction legendre_1d(const GridFunction& f, const DualLattice& dual);

/// Factorized transform: per-axis partial transforms (axis 0, then axis 1).
GridFunction legendre_nd(const GridFunction& f, const DualLattice& dual);

/// Dimension dispatch.
GridFunction legendre(const GridFunction& f, const DualLattice& dual);

/// Double transform LLf mapped back onto the primal lattice: the discrete
/// closed convex envelope. Output <= f, convex, idempotent.
GridFunction convex_envelope(const GridFunction& f);

/// Derivative-grade conjugate: the lattice sup refined by a local parabola
/// through the maximizing sample and its neighbours. Exact on quadratics;
/// removes the O(h^2) sup sawtooth so that stencils of the output converge.
/// Not bitwise-comparable to the brute-force sup.
GridFunction smooth_conjugate(const GridFunction& f, const DualLattice& dual);

}  // namespace pinterp
