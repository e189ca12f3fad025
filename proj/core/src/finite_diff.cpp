#include "pinterp/finite_diff.hpp"

#include <cmath>
#include <numbers>

namespace pinterp {

void eig_sym2(double a, double b, double c, double& lo, double& hi) {
    const double tr = a + c;
    const double disc = std::sqrt(std::max((a - c) * (a - c) + 4.0 * b * b, 0.0));
    lo = 0.5 * (tr - disc);
    hi = 0.5 * (tr + disc);
}

double min_eig_sym3(double a11, double a12, double a13, double a22, double a23, double a33) {
    // Trigonometric closed form for symmetric 3x3 eigenvalues.
    const double q = (a11 + a22 + a33) / 3.0;
    const double b11 = a11 - q, b22 = a22 - q, b33 = a33 - q;
    const double p2 = b11 * b11 + b22 * b22 + b33 * b33 +
                      2.0 * (a12 * a12 + a13 * a13 + a23 * a23);
    if (p2 <= 0.0) return q;
    const double p = std::sqrt(p2 / 6.0);
    const double inv_p = 1.0 / p;
    const double c11 = b11 * inv_p, c22 = b22 * inv_p, c33 = b33 * inv_p;
    const double c12 = a12 * inv_p, c13 = a13 * inv_p, c23 = a23 * inv_p;
    double detB = c11 * (c22 * c33 - c23 * c23) - c12 * (c12 * c33 - c23 * c13) +
                  c13 * (c12 * c23 - c22 * c13);
    double r = detB / 2.0;
    r = std::min(1.0, std::max(-1.0, r));
    const double phi = std::acos(r) / 3.0;
    // Smallest eigenvalue.
    return q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
}

double DerivativeField::hess_min_eig(std::size_t k) const {
    if (lattice.dim() == 1) return hxx[k];
    double lo, hi;
    eig_sym2(hxx[k], hxy[k], hyy[k], lo, hi);
    return lo;
}

double DerivativeField::hess_max_eig(std::size_t k) const {
    if (lattice.dim() == 1) return hxx[k];
    double lo, hi;
    eig_sym2(hxx[k], hxy[k], hyy[k], lo, hi);
    return hi;
}

double DerivativeField::hess_det(std::size_t k) const {
    if (lattice.dim() == 1) return hxx[k];
    return hxx[k] * hyy[k] - hxy[k] * hxy[k];
}

double DerivativeField::hess_inv_quadform(std::size_t k, double a, double b) const {
    if (lattice.dim() == 1) return a * a / hxx[k];
    const double det = hxx[k] * hyy[k] - hxy[k] * hxy[k];
    // (Hess^{-1} g) . g with Hess = [[hxx,hxy],[hxy,hyy]].
    return (hyy[k] * a * a - 2.0 * hxy[k] * a * b + hxx[k] * b * b) / det;
}

namespace {

DerivativeField make_field(const GridFunction& f, bool extended) {
    const Lattice& lat = f.lattice();
    const std::size_t n = lat.size();
    DerivativeField d;
    d.lattice = lat;
    d.valid.assign(n, 0);
    d.gx.assign(n, 0.0);
    d.hxx.assign(n, 0.0);
    if (lat.dim() == 2) {
        d.gy.assign(n, 0.0);
        d.hxy.assign(n, 0.0);
        d.hyy.assign(n, 0.0);
    }

    auto fin = [&](double v) { return is_finite_value(v); };

    if (lat.dim() == 1) {
        const double h = lat.spacing(0);
        const int n0 = lat.count(0);
        for (int i = 0; i < n0; ++i) {
            const bool interior = i > 0 && i + 1 < n0;
            if (interior) {
                const double fm = f.at(i - 1), f0 = f.at(i), fp = f.at(i + 1);
                if (!fin(fm) || !fin(f0) || !fin(fp)) continue;
                d.gx[i] = (fp - fm) / (2.0 * h);
                d.hxx[i] = (fp - 2.0 * f0 + fm) / (h * h);
                d.valid[i] = 1;
            } else if (extended && n0 >= 3) {
                // Second-order one-sided stencils (exact for quadratics).
                const int s = (i == 0) ? 1 : -1;
                const double f0 = f.at(i), f1 = f.at(i + s), f2 = f.at(i + 2 * s);
                if (!fin(f0) || !fin(f1) || !fin(f2)) continue;
                d.gx[i] = s * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
                d.hxx[i] = (f0 - 2.0 * f1 + f2) / (h * h);
                d.valid[i] = 1;
            }
        }
        return d;
    }

    const double hx = lat.spacing(0), hy = lat.spacing(1);
    const int n0 = lat.count(0), n1 = lat.count(1);
    auto V = [&](int i, int j) { return f.at(i, j); };
    auto d1 = [&](double fm, double f0, double fp, double h, bool& ok) {
        (void)f0;
        if (!fin(fm) || !fin(fp)) { ok = false; return 0.0; }
        return (fp - fm) / (2.0 * h);
    };
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            const bool interior = i > 0 && i + 1 < n0 && j > 0 && j + 1 < n1;
            const std::size_t k = lat.index(i, j);
            if (interior) {
                const double f0 = V(i, j);
                const double fxm = V(i - 1, j), fxp = V(i + 1, j);
                const double fym = V(i, j - 1), fyp = V(i, j + 1);
                const double fpp = V(i + 1, j + 1), fpm = V(i + 1, j - 1);
                const double fmp = V(i - 1, j + 1), fmm = V(i - 1, j - 1);
                if (!fin(f0) || !fin(fxm) || !fin(fxp) || !fin(fym) || !fin(fyp) ||
                    !fin(fpp) || !fin(fpm) || !fin(fmp) || !fin(fmm))
                    continue;
                bool ok = true;
                d.gx[k] = d1(fxm, f0, fxp, hx, ok);
                d.gy[k] = d1(fym, f0, fyp, hy, ok);
                d.hxx[k] = (fxp - 2.0 * f0 + fxm) / (hx * hx);
                d.hyy[k] = (fyp - 2.0 * f0 + fym) / (hy * hy);
                d.hxy[k] = (fpp - fpm - fmp + fmm) / (4.0 * hx * hy);
                d.valid[k] = ok ? 1 : 0;
            } else if (extended && n0 >= 3 && n1 >= 3) {
                // Clamped 3-point windows; one-sided where needed.
                const int ci = std::min(std::max(i, 1), n0 - 2);
                const int cj = std::min(std::max(j, 1), n1 - 2);
                bool ok = true;
                auto need = [&](int a, int b) {
                    const double v = V(a, b);
                    if (!fin(v)) ok = false;
                    return v;
                };
                const double fxm = need(ci - 1, j), fx0 = need(ci, j), fxp = need(ci + 1, j);
                const double fym = need(i, cj - 1), fy0 = need(i, cj), fyp = need(i, cj + 1);
                if (!ok) continue;
                // First derivatives: quadratic fit through the 3-point window,
                // evaluated at the (possibly offset) target point.
                const double ax = (fxp - 2.0 * fx0 + fxm) / (hx * hx);
                const double bx = (fxp - fxm) / (2.0 * hx);
                d.gx[k] = bx + ax * (i - ci) * hx;
                d.hxx[k] = ax;
                const double ay = (fyp - 2.0 * fy0 + fym) / (hy * hy);
                const double by = (fyp - fym) / (2.0 * hy);
                d.gy[k] = by + ay * (j - cj) * hy;
                d.hyy[k] = ay;
                const double fpp = need(ci + 1, cj + 1), fpm = need(ci + 1, cj - 1);
                const double fmp = need(ci - 1, cj + 1), fmm = need(ci - 1, cj - 1);
                if (!ok) continue;
                d.hxy[k] = (fpp - fpm - fmp + fmm) / (4.0 * hx * hy);
                d.valid[k] = 1;
            }
        }
    }
    return d;
}

}  // namespace

DerivativeField finite_diff(const GridFunction& f) { return make_field(f, false); }

DerivativeField finite_diff_extended(const GridFunction& f) { return make_field(f, true); }

}  // namespace pinterp
