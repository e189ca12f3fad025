#include "pinterp/interp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pinterp/finite_diff.hpp"

namespace pinterp {

namespace {

void require_shared_lattice(const GridFunction& F0, const GridFunction& F1) {
    if (F0.lattice() != F1.lattice())
        throw std::invalid_argument("interp: endpoints must share a lattice");
}

DualLattice union_dual(const GridFunction& F0, const GridFunction& F1) {
    DualLattice d0 = auto_dual_lattice(F0);
    DualLattice d1 = auto_dual_lattice(F1);
    const Lattice& lat = F0.lattice();
    std::array<AxisSpec, 2> axes;
    DualLattice d;
    for (int a = 0; a < lat.dim(); ++a) {
        d.attained_lo[a] = std::min(d0.attained_lo[a], d1.attained_lo[a]);
        d.attained_hi[a] = std::max(d0.attained_hi[a], d1.attained_hi[a]);
        double lo = std::min(d0.lattice.lo(a), d1.lattice.lo(a));
        double hi = std::max(d0.lattice.hi(a), d1.lattice.hi(a));
        if (-lo == hi) lo = -hi;  // keep bitwise symmetry
        axes[a] = AxisSpec{lo, hi, lat.count(a)};
    }
    d.lattice = Lattice::make(std::span<const AxisSpec>(axes.data(), lat.dim()));
    return d;
}

}  // namespace

GridFunction interp_linear(const GridFunction& F0, const GridFunction& F1, double t) {
    require_shared_lattice(F0, F1);
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("interp: t must be in [0,1]");
    if (t == 0.0) return F0;
    if (t == 1.0) return F1;
    std::vector<double> v(F0.size());
    const double s = 1.0 - t;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double a = F0[k], b = F1[k];
        v[k] = (is_finite_value(a) && is_finite_value(b)) ? s * a + t * b : kPosInf;
    }
    GridFunction g(F0.lattice(), std::move(v));
    g.set_even(F0.even() && F1.even());
    g.set_provenance("linear(t=" + format_g12(t) + ")");
    return g;
}

GridFunction interp_one(const GridFunction& F0, const GridFunction& F1, double t) {
    require_shared_lattice(F0, F1);
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("interp: t must be in [0,1]");
    if (!F0.proper() || !F1.proper()) throw std::domain_error("interp: improper input");
    if (t == 0.0) return convex_envelope(F0);
    if (t == 1.0) return convex_envelope(F1);

    const DualLattice dual = union_dual(F0, F1);
    const GridFunction g0 = legendre(F0, dual);
    const GridFunction g1 = legendre(F1, dual);
    std::vector<double> ghat(g0.size());
    const double s = 1.0 - t;
    for (std::size_t k = 0; k < ghat.size(); ++k) {
        const double a = g0[k], b = g1[k];
        ghat[k] = (is_finite_value(a) && is_finite_value(b)) ? s * a + t * b : kPosInf;
    }
    GridFunction gh(dual.lattice, std::move(ghat));
    GridFunction out = legendre(gh, dual_to_target(gh, F0.lattice()));
    out.set_even(F0.even() && F1.even());
    out.set_provenance("infconv(t=" + format_g12(t) + ")");
    return out;
}

namespace {

SpaceTimeField build_family(const GridFunction& F0, const GridFunction& F1, int layers,
                            bool linear) {
    require_shared_lattice(F0, F1);
    if (layers < 3) throw std::invalid_argument("interp family: need >= 3 layers");
    SpaceTimeField f(F0.lattice(), layers);
    // Boundary layers bit-identical to the inputs.
    std::copy(F0.values().begin(), F0.values().end(), f.layer_values(0).begin());
    std::copy(F1.values().begin(), F1.values().end(), f.layer_values(layers - 1).begin());
    for (int i = 1; i + 1 < layers; ++i) {
        const double t = f.time(i);
        const GridFunction g = linear ? interp_linear(F0, F1, t) : interp_one(F0, F1, t);
        std::copy(g.values().begin(), g.values().end(), f.layer_values(i).begin());
    }
    f.set_even(F0.even() && F1.even());
    f.set_provenance((linear ? std::string("linear-family(") : std::string("infconv-family(")) +
                     F0.provenance() + "; " + F1.provenance() + ")");
    return f;
}

}  // namespace

SpaceTimeField interp_one_family(const GridFunction& F0, const GridFunction& F1, int layers) {
    return build_family(F0, F1, layers, false);
}

SpaceTimeField interp_linear_family(const GridFunction& F0, const GridFunction& F1, int layers) {
    return build_family(F0, F1, layers, true);
}

double conjugate_exponent(double p) {
    if (p == 1.0) return kPosInf;
    if (p == kPosInf) return 1.0;
    return p / (p - 1.0);
}

ResidualField residual_p(const SpaceTimeField& field, double p, double hess_floor) {
    if (!(p > 0.0)) throw std::invalid_argument("residual_p: p must be positive");
    if (!field.proper()) throw std::domain_error("residual_p: improper layer");
    const Lattice& lat = field.space();
    const int m = field.layers();
    const std::size_t n = lat.size();
    const double dt = field.dt();
    const bool inf_p = p == kPosInf;

    ResidualField r;
    r.layers = m;
    r.space = lat;
    r.dt = dt;
    r.p = p;
    r.residual.assign(static_cast<std::size_t>(m) * n, std::nan(""));
    r.det_h.assign(static_cast<std::size_t>(m) * n, std::nan(""));
    r.min_eig.assign(static_cast<std::size_t>(m) * n, std::nan(""));
    r.status.assign(static_cast<std::size_t>(m) * n, ResidualField::kNonEvaluable);
    r.min_det_h = kPosInf;
    r.min_eig_h = kPosInf;

    std::vector<DerivativeField> d(m);
    for (int i = 0; i < m; ++i) d[i] = finite_diff(field.layer(i));

    for (int i = 1; i + 1 < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t slot = static_cast<std::size_t>(i) * n + k;
            if (!d[i].is_valid(k) || !d[i - 1].is_valid(k) || !d[i + 1].is_valid(k)) continue;
            const double fm = field.layer_values(i - 1)[k];
            const double f0 = field.layer_values(i)[k];
            const double fp = field.layer_values(i + 1)[k];
            if (!is_finite_value(fm) || !is_finite_value(f0) || !is_finite_value(fp)) continue;

            const double dtt = (fp - 2.0 * f0 + fm) / (dt * dt);
            // Mixed derivative: central difference in t of the central
            // spatial gradient (symmetric stencil).
            const double gtx = (d[i + 1].gx[k] - d[i - 1].gx[k]) / (2.0 * dt);
            const double gty =
                lat.dim() == 2 ? (d[i + 1].gy[k] - d[i - 1].gy[k]) / (2.0 * dt) : 0.0;

            const double mins = d[i].hess_min_eig(k);
            if (!(mins >= hess_floor)) {
                r.status[slot] = ResidualField::kDegenerate;
                ++r.degenerate_count;
                continue;
            }

            double res, deth, meig, scale;
            if (inf_p) {
                res = dtt;
                deth = dtt;
                meig = dtt;
                scale = std::abs(dtt);
            } else {
                const double q = d[i].hess_inv_quadform(k, gtx, gty);
                res = dtt - q / p;
                if (lat.dim() == 1) {
                    const double phxx = p * d[i].hxx[k];
                    deth = dtt * phxx - gtx * gtx;
                    double lo, hi;
                    eig_sym2(dtt, gtx, phxx, lo, hi);
                    meig = lo;
                    scale = std::max({std::abs(dtt), std::abs(gtx), phxx});
                } else {
                    const double a = p * d[i].hxx[k], b = p * d[i].hxy[k], c = p * d[i].hyy[k];
                    deth = dtt * (a * c - b * b) - gtx * (gtx * c - b * gty) +
                           gty * (gtx * b - a * gty);
                    meig = min_eig_sym3(dtt, gtx, gty, a, b, c);
                    scale = std::max({std::abs(dtt), std::abs(gtx), std::abs(gty), a, c});
                }
            }
            r.residual[slot] = res;
            r.det_h[slot] = deth;
            r.min_eig[slot] = meig;
            r.status[slot] = ResidualField::kOk;
            ++r.evaluated;
            r.scale = std::max(r.scale, scale);
            if (std::abs(res) > r.sup_abs_residual) {
                r.sup_abs_residual = std::abs(res);
                r.worst_layer = i;
                r.worst_flat = k;
            }
            r.min_det_h = std::min(r.min_det_h, deth);
            r.min_eig_h = std::min(r.min_eig_h, meig);
        }
    }
    if (r.evaluated == 0) {
        r.min_det_h = std::nan("");
        r.min_eig_h = std::nan("");
    }
    return r;
}

namespace {

// Linear interpolation of a layer at an off-lattice point; +inf if the cell
// touches a non-finite sample or leaves the box.
double interp_layer(const SpaceTimeField& f, int layer, double x, double y) {
    const Lattice& lat = f.space();
    auto locate = [&](int axis, double v, int& i0, double& w) {
        const double lo = lat.lo(axis), h = lat.spacing(axis);
        const double s = (v - lo) / h;
        if (s < 0.0 || s > lat.count(axis) - 1) return false;
        i0 = std::min(static_cast<int>(s), lat.count(axis) - 2);
        w = s - i0;
        return true;
    };
    int i0, j0 = 0;
    double wx, wy = 0.0;
    if (!locate(0, x, i0, wx)) return kPosInf;
    if (lat.dim() == 2 && !locate(1, y, j0, wy)) return kPosInf;
    if (lat.dim() == 1) {
        const double a = f.at(layer, i0), b = f.at(layer, i0 + 1);
        if (!is_finite_value(a) || !is_finite_value(b)) return kPosInf;
        return a + wx * (b - a);
    }
    const double f00 = f.at(layer, i0, j0), f10 = f.at(layer, i0 + 1, j0);
    const double f01 = f.at(layer, i0, j0 + 1), f11 = f.at(layer, i0 + 1, j0 + 1);
    if (!is_finite_value(f00) || !is_finite_value(f10) || !is_finite_value(f01) ||
        !is_finite_value(f11))
        return kPosInf;
    return (1 - wx) * (1 - wy) * f00 + wx * (1 - wy) * f10 + (1 - wx) * wy * f01 + wx * wy * f11;
}

}  // namespace

CheckReport subfamily_check(const SpaceTimeField& field, double p, std::optional<double> tol_opt,
                            double hess_floor) {
    if (!(p >= 1.0)) throw std::invalid_argument("subfamily_check: p must be >= 1");
    const ResidualField r = residual_p(field, p, hess_floor);
    const Lattice& lat = field.space();
    double hmax = lat.spacing(0);
    if (lat.dim() == 2) hmax = std::max(hmax, lat.spacing(1));
    const double tol = tol_opt ? *tol_opt : (field.dt() * field.dt() + hmax * hmax) * r.scale;

    const double margin = r.evaluated ? r.min_eig_h : std::nan("");

    // Spot-check of the line condition (s,t) -> F(t, x0 + (t + sqrt(p-1) s) y0):
    // discrete Laplacian along a few fixed rays through the box center.
    double spot_min = kPosInf;
    if (p != kPosInf && field.layers() >= 5) {
        const double sq = std::sqrt(std::max(p - 1.0, 0.0));
        const double ds = field.dt();
        const int mid = field.layers() / 2;
        const double span0 = 0.1 * (lat.hi(0) - lat.lo(0));
        std::array<std::array<double, 2>, 3> dirs{{{span0, 0.0},
                                                   {0.6 * span0, 0.0},
                                                   {span0, span0}}};
        std::array<std::array<double, 2>, 2> origins{{{0.0, 0.0}, {0.4 * span0, 0.0}}};
        for (const auto& x0 : origins) {
            for (const auto& y0 : dirs) {
                if (lat.dim() == 1 && y0[1] != 0.0) continue;
                for (int i : {mid - 1, mid, mid + 1}) {
                    const double t = field.time(i);
                    auto phi = [&](int layer, double s) {
                        const double tt = field.time(layer);
                        const double ax = x0[0] + (tt + sq * s) * y0[0];
                        const double ay = x0[1] + (tt + sq * s) * y0[1];
                        return interp_layer(field, layer, ax, ay);
                    };
                    const double c = phi(i, 0.0);
                    const double tp = phi(i + 1, 0.0), tm = phi(i - 1, 0.0);
                    const double sp = phi(i, ds), sm = phi(i, -ds);
                    if (!is_finite_value(c) || !is_finite_value(tp) || !is_finite_value(tm) ||
                        !is_finite_value(sp) || !is_finite_value(sm))
                        continue;
                    const double lap = (tp - 2 * c + tm) / (field.dt() * field.dt()) +
                                       (sp - 2 * c + sm) / (ds * ds);
                    spot_min = std::min(spot_min, lap);
                    (void)t;
                }
            }
        }
    }

    std::ostringstream loc;
    if (r.worst_layer >= 0) {
        const auto pt = lat.point(r.worst_flat);
        loc << "t=" << format_g12(field.time(r.worst_layer)) << ",x=" << format_g12(pt[0]);
        if (lat.dim() == 2) loc << "," << format_g12(pt[1]);
    }
    std::ostringstream prov;
    prov << field.provenance() << "; p=" << format_g12(p) << "; degenerate=" << r.degenerate_count;
    if (spot_min < kPosInf) prov << "; line_laplacian_min=" << format_g12(spot_min);
    return CheckReport::make("subfamily", margin, tol, loc.str(), prov.str());
}

SpaceTimeField dual_family(const SpaceTimeField& field) {
    if (!field.proper()) throw std::domain_error("dual_family: improper layer");
    const Lattice& lat = field.space();
    const int m = field.layers();

    // Shared dual lattice: union of the layers' slope ranges.
    DualLattice dual;
    std::array<AxisSpec, 2> axes;
    for (int a = 0; a < lat.dim(); ++a) {
        double lo = kPosInf, hi = -kPosInf;
        for (int i = 0; i < m; ++i) {
            double l, h;
            slope_range(field.layer(i), a, l, h);
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
        dual.attained_lo[a] = lo;
        dual.attained_hi[a] = hi;
        if (-lo == hi) lo = -hi;
        axes[a] = AxisSpec{lo, hi, lat.count(a)};
    }
    dual.lattice = Lattice::make(std::span<const AxisSpec>(axes.data(), lat.dim()));

    std::vector<std::vector<double>> layers(m);
    for (int i = 0; i < m; ++i) {
        const GridFunction g = smooth_conjugate(field.layer(i), dual);
        layers[i].assign(g.values().begin(), g.values().end());
    }
    SpaceTimeField out =
        SpaceTimeField::from_layers(dual.lattice, std::move(layers), field.t_lo(), field.t_hi());
    out.set_even(field.even());
    out.set_provenance("dual(" + field.provenance() + ")");
    return out;
}

}  // namespace pinterp
