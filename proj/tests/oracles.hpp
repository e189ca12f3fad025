#pragma once

// Test-only oracles, independent of the library's transform/solver paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "pinterp/grid_function.hpp"
#include "pinterp/lattice.hpp"

namespace oracles {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Brute-force discrete Legendre transform: max_i (x_i * y - f_i) over all
/// lattice points, ties to the smallest x. -inf when no finite sample.
inline double brute_legendre_1d(const std::vector<double>& xs, const std::vector<double>& v,
                                double y) {
    double best = -kInf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(v[i] < kInf)) continue;
        const double t = xs[i] * y - v[i];
        if (t > best) best = t;
    }
    return best;
}

/// Brute-force 2D sup over the product lattice, associated the same way as
/// iterated per-axis maxima: x1*y1 + (x0*y0 - f).
inline double brute_legendre_2d(const pinterp::Lattice& lat, std::span<const double> f,
                                double y0, double y1) {
    double best = -kInf;
    for (int i0 = 0; i0 < lat.count(0); ++i0) {
        const double x0 = lat.coord(0, i0);
        for (int i1 = 0; i1 < lat.count(1); ++i1) {
            const double fv = f[lat.index(i0, i1)];
            if (!(fv < kInf)) continue;
            const double inner = x0 * y0 - fv;
            const double t = lat.coord(1, i1) * y1 + inner;
            if (t > best) best = t;
        }
    }
    return best;
}

/// Geometric lower-convex-hull envelope of 1D samples, evaluated back at the
/// lattice points (secant interpolation between hull vertices).
inline std::vector<double> hull_envelope_1d(const std::vector<double>& xs,
                                            const std::vector<double>& v) {
    const int n = static_cast<int>(xs.size());
    std::vector<int> hull;
    for (int i = 0; i < n; ++i) {
        if (!(v[i] < kInf)) continue;
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull.back();
            const long double cr = (static_cast<long double>(xs[b]) - xs[a]) *
                                       (static_cast<long double>(v[i]) - v[a]) -
                                   (static_cast<long double>(xs[i]) - xs[a]) *
                                       (static_cast<long double>(v[b]) - v[a]);
            if (cr < 0.0L) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    std::vector<double> out(n, kInf);
    if (hull.empty()) return out;
    for (int i = 0; i < n; ++i) {
        if (i < hull.front() || i > hull.back()) continue;
        auto it = std::lower_bound(hull.begin(), hull.end(), i);
        if (it != hull.end() && *it == i) {
            out[i] = v[i];
            continue;
        }
        const int b = *it, a = *(it - 1);
        const double w = (xs[i] - xs[a]) / (xs[b] - xs[a]);
        out[i] = v[a] + w * (v[b] - v[a]);
    }
    return out;
}

/// Brute-force inf-convolution over lattice pairs: for each target w_k the
/// min of (1-t) F0(x_i) + t F1(x_j) over pairs whose combination lands
/// within half a cell of w_k, corrected by lip * distance.
inline std::vector<double> pair_infconv(const pinterp::Lattice& lat,
                                        std::span<const double> f0, std::span<const double> f1,
                                        double t, double lip) {
    const int n = lat.count(0);
    std::vector<double> out(n, kInf);
    for (int k = 0; k < n; ++k) {
        const double w = lat.coord(0, k);
        double best = kInf;
        for (int i = 0; i < n; ++i) {
            if (!(f0[i] < kInf)) continue;
            for (int j = 0; j < n; ++j) {
                if (!(f1[j] < kInf)) continue;
                const double c = (1.0 - t) * lat.coord(0, i) + t * lat.coord(0, j);
                const double d = std::abs(c - w);
                if (d > 0.5 * lat.spacing(0)) continue;
                best = std::min(best, (1.0 - t) * f0[i] + t * f1[j] + lip * d);
            }
        }
        out[k] = best;
    }
    return out;
}

/// Composite-Simpson quadrature oracle.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

/// Polar-coordinates oracle for the gauge-volume constant:
/// n * int_0^inf e^{-r^p/p} r^{n-1} dr  (equals c_{n,p} when multiplied out).
inline double cnp_polar_oracle(int n, double p) {
    const double rmax = std::pow(60.0 * p, 1.0 / p) + 10.0;
    return static_cast<double>(n) *
           simpson([&](double r) { return std::exp(-std::pow(r, p) / p) * std::pow(r, n - 1); },
                   1e-12, rmax, 200000);
}

/// Convergence order from errors at h and h/2.
inline double observed_order(double e_h, double e_h2) { return std::log2(e_h / e_h2); }

}  // namespace oracles
