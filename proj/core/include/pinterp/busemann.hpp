#pragma once

#include <cstdint>
#include <optional>

#include "pinterp/grid_function.hpp"
#include "pinterp/report.hpp"

namespace pinterp {

/// Half-line probability measure on (0, X] with density proportional to
/// exp(-w(0,x)) x^{p-1}, on the graded mesh x_k = X (k/K)^{1/min(p,1)}.
struct HalfLineMeasure {
    std::vector<double> x;   // nodes, ascending, > 0
    std::vector<double> w;   // normalized weights
    double p = 1.0;
    double X = 0.0;
    int grading_K = 0;
    double first_cell_mass = 0.0;  // invariant: < 1e-4
    double z = 0.0;                // pre-normalization mass

    double mean(std::span<const double> u) const;
    double variance(std::span<const double> u) const;
};

/// Builds the measure from the t=0 section of a 2D potential w(t, x).
/// K = 0 picks a grading adequate for the first-cell invariant.
HalfLineMeasure half_line_measure(const GridFunction& w, double p, double X, int K = 0);

/// Ray integral int_0^inf e^{-w(u * dir)} u^{p-1} du for a 2D convex
/// potential. Uses the analytic generator when the sample carries one,
/// else local biquadratic interpolation. Throws when the slope check finds
/// a divergent ray.
double ray_integral(const GridFunction& w, std::array<double, 2> dir, double p);

/// h(x) = (int_0^inf e^{-w(sx)} s^{p-1} ds)^{-1/p}, h(0) = 0. Positively
/// 1-homogeneous by construction (the integral is computed per direction).
double busemann_h(const GridFunction& w, std::array<double, 2> x, double p);

/// alpha_p(t) = int_0^inf e^{-w(ts, s)} s^{p-1} ds.
double busemann_alpha_p(const GridFunction& w, double t, double p);

/// Midpoint convexity of h over `samples` random pairs, plus the t = 0
/// local form dtt alpha_p <= (1 + 1/p)(dt alpha_p)^2 / alpha_p.
CheckReport check_h_convexity(const GridFunction& w, double p, int samples, std::uint64_t seed,
                              double tol = 1e-6);

struct BusemannVarianceOptions {
    double tol = 1e-6;
    int grading_K = 0;
    /// When set, ignores `u` and uses u(x) = x * dt w(0, x) to exercise the
    /// variance form of the t-derivative inequality directly.
    bool layered_mode = false;
};

/// Var_mu(u) <= <(1/dxx w)(u' - u/x)^2> + (1/p)(int u dmu)^2 on the
/// half-line measure; margin = rhs - lhs.
CheckReport check_busemann_variance(const GridFunction& w, const GridFunction& u, double p,
                                    const BusemannVarianceOptions& opt = {});

}  // namespace pinterp
