#include "pinterp/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pinterp {

namespace {

struct Hull {
    std::vector<int> idx;
};

// Lower convex hull of (xs[i], v[i]) over finite v, keeping collinear
// points. xs ascending. Predicate in extended precision.
void build_lower_hull(std::span<const double> xs, std::span<const double> v, Hull& hull) {
    hull.idx.clear();
    const int n = static_cast<int>(xs.size());
    for (int i = 0; i < n; ++i) {
        if (!is_finite_value(v[i])) continue;
        while (hull.idx.size() >= 2) {
            const int a = hull.idx[hull.idx.size() - 2];
            const int b = hull.idx[hull.idx.size() - 1];
            const long double cr =
                (static_cast<long double>(xs[b]) - xs[a]) * (static_cast<long double>(v[i]) - v[a]) -
                (static_cast<long double>(xs[i]) - xs[a]) * (static_cast<long double>(v[b]) - v[a]);
            if (cr < 0.0L)
                hull.idx.pop_back();  // b strictly above chord a-i
            else
                break;
        }
        hull.idx.push_back(i);
    }
}

// For each y in ys (ascending) writes sup_i (xs[i]*y - v[i]) into out.
// Monotone walk over the lower hull; the per-point expression matches the
// brute-force oracle bit for bit. Returns false when no finite samples.
bool conjugate_core(std::span<const double> xs, std::span<const double> v,
                    std::span<const double> ys, std::span<double> out, Hull& hull) {
    build_lower_hull(xs, v, hull);
    if (hull.idx.empty()) {
        std::fill(out.begin(), out.end(), -kPosInf);
        return false;
    }
    std::size_t k = 0;
    const std::size_t m = hull.idx.size();
    for (std::size_t j = 0; j < ys.size(); ++j) {
        const double y = ys[j];
        while (k + 1 < m) {
            const int i0 = hull.idx[k], i1 = hull.idx[k + 1];
            const double v0 = xs[i0] * y - v[i0];
            const double v1 = xs[i1] * y - v[i1];
            if (v1 > v0)
                ++k;
            else
                break;
        }
        const int i = hull.idx[k];
        out[j] = xs[i] * y - v[i];
    }
    return true;
}

// Same walk with local parabolic refinement of the maximizer.
bool smooth_conjugate_core(std::span<const double> xs, std::span<const double> v,
                           std::span<const double> ys, std::span<double> out, Hull& hull) {
    build_lower_hull(xs, v, hull);
    if (hull.idx.empty()) {
        std::fill(out.begin(), out.end(), -kPosInf);
        return false;
    }
    const int n = static_cast<int>(xs.size());
    const double h = n > 1 ? xs[1] - xs[0] : 1.0;
    std::size_t k = 0;
    const std::size_t m = hull.idx.size();
    for (std::size_t j = 0; j < ys.size(); ++j) {
        const double y = ys[j];
        while (k + 1 < m) {
            const int i0 = hull.idx[k], i1 = hull.idx[k + 1];
            if (xs[i1] * y - v[i1] > xs[i0] * y - v[i0])
                ++k;
            else
                break;
        }
        const int i = hull.idx[k];
        double val = xs[i] * y - v[i];
        if (i > 0 && i + 1 < n && is_finite_value(v[i - 1]) && is_finite_value(v[i + 1])) {
            const double a = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (2.0 * h * h);
            const double b = (v[i + 1] - v[i - 1]) / (2.0 * h);
            if (a > 1e-300) {
                double delta = (y - b) / (2.0 * a);
                delta = std::clamp(delta, -0.5 * h, 0.5 * h);
                const double gain = delta * (y - b) - a * delta * delta;
                if (gain > 0.0) val += gain;
            }
        }
        out[j] = val;
    }
    return true;
}

using Core = bool (*)(std::span<const double>, std::span<const double>, std::span<const double>,
                      std::span<double>, Hull&);

GridFunction transform_1d(const GridFunction& f, const DualLattice& dual, Core core) {
    const Lattice& lat = f.lattice();
    const Lattice& dl = dual.lattice;
    const std::vector<double> xs = lat.axis_coords(0);
    const std::vector<double> ys = dl.axis_coords(0);
    std::vector<double> out(ys.size());
    Hull hull;
    core(std::span<const double>(xs), f.values(), std::span<const double>(ys),
         std::span<double>(out), hull);
    for (std::size_t j = 0; j < ys.size(); ++j) {
        if (ys[j] < dual.attained_lo[0] || ys[j] > dual.attained_hi[0]) out[j] = kPosInf;
    }
    GridFunction g(dl, std::move(out));
    g.set_even(f.even() && lat.symmetric(0) && dl.symmetric(0));
    g.set_provenance("L(" + f.provenance() + ")");
    return g;
}

GridFunction transform_2d(const GridFunction& f, const DualLattice& dual, Core core) {
    const Lattice& lat = f.lattice();
    const Lattice& dl = dual.lattice;
    const int n0 = lat.count(0), n1 = lat.count(1);
    const int m0 = dl.count(0), m1 = dl.count(1);
    const std::vector<double> xs0 = lat.axis_coords(0);
    const std::vector<double> xs1 = lat.axis_coords(1);
    const std::vector<double> ys0 = dl.axis_coords(0);
    const std::vector<double> ys1 = dl.axis_coords(1);

    Hull hull;
    // Pass 1 (axis 0): B[k0][i1] = sup_{x0} (x0*y0 - f(x0, x1)); stored negated
    // so pass 2 reuses the same x*y - v expression.
    std::vector<double> negB(static_cast<std::size_t>(m0) * n1);
    std::vector<double> col(n0), row(m0);
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i0 = 0; i0 < n0; ++i0) col[i0] = f.at(i0, i1);
        const bool any = core(std::span<const double>(xs0), std::span<const double>(col),
                              std::span<const double>(ys0), std::span<double>(row), hull);
        for (int k0 = 0; k0 < m0; ++k0)
            negB[static_cast<std::size_t>(k0) * n1 + i1] = any ? -row[k0] : kPosInf;
    }

    // Pass 2 (axis 1): out(k0, k1) = sup_{x1} (x1*y1 - (-B)).
    std::vector<double> out(static_cast<std::size_t>(m0) * m1);
    std::vector<double> line(m1);
    for (int k0 = 0; k0 < m0; ++k0) {
        std::span<const double> vrow(negB.data() + static_cast<std::size_t>(k0) * n1,
                                     static_cast<std::size_t>(n1));
        core(std::span<const double>(xs1), vrow, std::span<const double>(ys1),
             std::span<double>(line), hull);
        for (int k1 = 0; k1 < m1; ++k1) out[dl.index(k0, k1)] = line[k1];
    }

    for (int k0 = 0; k0 < m0; ++k0) {
        const bool out0 = ys0[k0] < dual.attained_lo[0] || ys0[k0] > dual.attained_hi[0];
        for (int k1 = 0; k1 < m1; ++k1) {
            if (out0 || ys1[k1] < dual.attained_lo[1] || ys1[k1] > dual.attained_hi[1])
                out[dl.index(k0, k1)] = kPosInf;
        }
    }

    GridFunction g(dl, std::move(out));
    g.set_even(f.even() && lat.symmetric(0) && lat.symmetric(1) && dl.symmetric(0) &&
               dl.symmetric(1));
    g.set_provenance("L(" + f.provenance() + ")");
    return g;
}

void require_proper(const GridFunction& f) {
    if (f.finite_count() == 0) throw std::domain_error("legendre: empty finite support");
}

}  // namespace

void slope_range(const GridFunction& f, int axis, double& lo, double& hi) {
    const Lattice& lat = f.lattice();
    lo = kPosInf;
    hi = -kPosInf;
    const double h = lat.spacing(axis);
    auto consider = [&](double a, double b) {
        if (!is_finite_value(a) || !is_finite_value(b)) return;
        const double s = (b - a) / h;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    };
    if (lat.dim() == 1) {
        for (int i = 0; i + 1 < lat.count(0); ++i) consider(f.at(i), f.at(i + 1));
    } else if (axis == 0) {
        for (int j = 0; j < lat.count(1); ++j)
            for (int i = 0; i + 1 < lat.count(0); ++i) consider(f.at(i, j), f.at(i + 1, j));
    } else {
        for (int i = 0; i < lat.count(0); ++i)
            for (int j = 0; j + 1 < lat.count(1); ++j) consider(f.at(i, j), f.at(i, j + 1));
    }
    if (lo > hi) {  // fewer than two finite samples along the axis
        lo = -kPosInf;
        hi = kPosInf;
    }
}

DualLattice auto_dual_lattice(const GridFunction& f, double expand,
                              const std::array<int, 2>* counts) {
    require_proper(f);
    const Lattice& lat = f.lattice();
    DualLattice d;
    std::array<AxisSpec, 2> axes;
    for (int a = 0; a < lat.dim(); ++a) {
        double lo, hi;
        slope_range(f, a, lo, hi);
        if (!is_finite_value(lo) || !is_finite_value(hi)) { lo = -1.0; hi = 1.0; }
        d.attained_lo[a] = lo;
        d.attained_hi[a] = hi;
        double wlo, whi;
        if (-lo == hi) {
            whi = hi * expand;
            wlo = -whi;
        } else if (expand == 1.0) {
            wlo = lo;  // keep the attained endpoints bitwise
            whi = hi;
        } else {
            const double mid = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo) * expand;
            wlo = mid - half;
            whi = mid + half;
        }
        if (!(whi > wlo)) {  // constant function: degenerate slope range
            wlo -= 1.0;
            whi += 1.0;
        }
        axes[a] = AxisSpec{wlo, whi, counts ? (*counts)[a] : lat.count(a)};
    }
    d.lattice = Lattice::make(std::span<const AxisSpec>(axes.data(), lat.dim()));
    return d;
}

DualLattice dual_to_target(const GridFunction& f, const Lattice& target) {
    require_proper(f);
    DualLattice d;
    d.lattice = target;
    for (int a = 0; a < f.lattice().dim(); ++a) {
        double lo, hi;
        slope_range(f, a, lo, hi);
        if (!is_finite_value(lo) || !is_finite_value(hi)) { lo = -kPosInf; hi = kPosInf; }
        d.attained_lo[a] = lo;
        d.attained_hi[a] = hi;
    }
    return d;
}

GridFunction legendre_1d(const GridFunction& f, const DualLattice& dual) {
    require_proper(f);
    if (f.lattice().dim() != 1) throw std::invalid_argument("legendre_1d: need 1D input");
    return transform_1d(f, dual, conjugate_core);
}

GridFunction legendre_nd(const GridFunction& f, const DualLattice& dual) {
    require_proper(f);
    if (f.lattice().dim() != 2) throw std::invalid_argument("legendre_nd: need 2D input");
    return transform_2d(f, dual, conjugate_core);
}

GridFunction legendre(const GridFunction& f, const DualLattice& dual) {
    return f.lattice().dim() == 1 ? legendre_1d(f, dual) : legendre_nd(f, dual);
}

GridFunction convex_envelope(const GridFunction& f) {
    require_proper(f);
    const DualLattice dual = auto_dual_lattice(f);
    const GridFunction g = legendre(f, dual);
    GridFunction e = legendre(g, dual_to_target(g, f.lattice()));

    // The envelope is +inf exactly outside the finite-support hull box.
    const Lattice& lat = f.lattice();
    std::array<int, 2> lo{lat.count(0), lat.dim() == 2 ? lat.count(1) : 0};
    std::array<int, 2> hi{-1, -1};
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!is_finite_value(f[k])) continue;
        int i, j;
        lat.unindex(k, i, j);
        lo[0] = std::min(lo[0], i); hi[0] = std::max(hi[0], i);
        lo[1] = std::min(lo[1], j); hi[1] = std::max(hi[1], j);
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
        int i, j;
        lat.unindex(k, i, j);
        const bool inside = i >= lo[0] && i <= hi[0] && (lat.dim() == 1 || (j >= lo[1] && j <= hi[1]));
        if (!inside) e[k] = kPosInf;
    }
    e.set_even(f.even());
    e.set_provenance("envelope(" + f.provenance() + ")");
    return e;
}

GridFunction smooth_conjugate(const GridFunction& f, const DualLattice& dual) {
    require_proper(f);
    if (f.lattice().dim() == 1) return transform_1d(f, dual, smooth_conjugate_core);
    return transform_2d(f, dual, smooth_conjugate_core);
}

}  // namespace pinterp
