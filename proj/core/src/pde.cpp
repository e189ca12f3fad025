#include "pinterp/pde.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pinterp/finite_diff.hpp"
#include "pinterp/legendre.hpp"

namespace pinterp {

namespace {

// Spatial gradient/Hessian at one point with clamped second-order windows
// (one-sided at edges, exact for quadratics). Values must be finite.
struct SpatialStencil {
    const Lattice* lat;
    double hx, hy;
    int n0, n1;

    explicit SpatialStencil(const Lattice& l)
        : lat(&l), hx(l.spacing(0)), hy(l.dim() == 2 ? l.spacing(1) : 1.0),
          n0(l.count(0)), n1(l.dim() == 2 ? l.count(1) : 1) {}

    void grad(std::span<const double> v, int i, int j, double& gx, double& gy) const {
        const int ci = std::min(std::max(i, 1), n0 - 2);
        const double fm = v[lat->index(ci - 1, j)], f0 = v[lat->index(ci, j)],
                     fp = v[lat->index(ci + 1, j)];
        const double ax = (fp - 2.0 * f0 + fm) / (hx * hx);
        gx = (fp - fm) / (2.0 * hx) + ax * (i - ci) * hx;
        gy = 0.0;
        if (lat->dim() == 2) {
            const int cj = std::min(std::max(j, 1), n1 - 2);
            const double gm = v[lat->index(i, cj - 1)], g0 = v[lat->index(i, cj)],
                         gp = v[lat->index(i, cj + 1)];
            const double ay = (gp - 2.0 * g0 + gm) / (hy * hy);
            gy = (gp - gm) / (2.0 * hy) + ay * (j - cj) * hy;
        }
    }

    void hess(std::span<const double> v, int i, int j, double& hxx, double& hxy,
              double& hyy) const {
        const int ci = std::min(std::max(i, 1), n0 - 2);
        hxx = (v[lat->index(ci + 1, j)] - 2.0 * v[lat->index(ci, j)] + v[lat->index(ci - 1, j)]) /
              (hx * hx);
        hxy = 0.0;
        hyy = 0.0;
        if (lat->dim() == 2) {
            const int cj = std::min(std::max(j, 1), n1 - 2);
            hyy = (v[lat->index(i, cj + 1)] - 2.0 * v[lat->index(i, cj)] +
                   v[lat->index(i, cj - 1)]) / (hy * hy);
            hxy = (v[lat->index(ci + 1, cj + 1)] - v[lat->index(ci + 1, cj - 1)] -
                   v[lat->index(ci - 1, cj + 1)] + v[lat->index(ci - 1, cj - 1)]) /
                  (4.0 * hx * hy);
        }
    }
};

// (Hess)^{-1} g . g, or NaN when the Hessian falls below the floor.
double quadform(const Lattice& lat, double hxx, double hxy, double hyy, double gx, double gy,
                double floor_eps) {
    if (lat.dim() == 1) {
        if (!(hxx >= floor_eps)) return std::nan("");
        return gx * gx / hxx;
    }
    double lo, hi;
    eig_sym2(hxx, hxy, hyy, lo, hi);
    if (!(lo >= floor_eps)) return std::nan("");
    const double det = hxx * hyy - hxy * hxy;
    return (hyy * gx * gx - 2.0 * hxy * gx * gy + hxx * gy * gy) / det;
}

void symmetrize_layer(const Lattice& lat, std::span<double> v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::size_t mk = lat.mirror_index(k);
        if (mk <= k) continue;
        const double a = 0.5 * (v[k] + v[mk]);
        v[k] = a;
        v[mk] = a;
    }
}

double sweep_residual(const SpaceTimeField& f, double p, double floor_eps,
                      std::size_t& degenerate) {
    const Lattice& lat = f.space();
    const SpatialStencil st(lat);
    const double dt = f.dt();
    double sup = 0.0;
    for (int l = 1; l + 1 < f.layers(); ++l) {
        std::span<const double> vm = f.layer_values(l - 1);
        std::span<const double> v0 = f.layer_values(l);
        std::span<const double> vp = f.layer_values(l + 1);
        for (int i = 0; i < st.n0; ++i) {
            for (int j = 0; j < st.n1; ++j) {
                const std::size_t k = lat.index(i, j);
                const double dtt = (vp[k] - 2.0 * v0[k] + vm[k]) / (dt * dt);
                double gxm, gym, gxp, gyp;
                st.grad(vm, i, j, gxm, gym);
                st.grad(vp, i, j, gxp, gyp);
                const double gtx = (gxp - gxm) / (2.0 * dt);
                const double gty = (gyp - gym) / (2.0 * dt);
                double hxx, hxy, hyy;
                st.hess(v0, i, j, hxx, hxy, hyy);
                const double q = quadform(lat, hxx, hxy, hyy, gtx, gty, floor_eps);
                if (std::isnan(q)) {
                    ++degenerate;
                    continue;
                }
                sup = std::max(sup, std::abs(dtt - q / p));
            }
        }
    }
    return sup;
}

}  // namespace

std::pair<SpaceTimeField, SolveReport> solve_p_interpolation(const GridFunction& F0,
                                                             const GridFunction& F1, double p,
                                                             const SolverParams& params) {
    if (F0.lattice() != F1.lattice())
        throw std::invalid_argument("solve: endpoints must share a lattice");
    if (!(p >= 1.0)) throw std::invalid_argument("solve: p must be >= 1");
    for (std::size_t k = 0; k < F0.size(); ++k)
        if (!is_finite_value(F0[k]) || !is_finite_value(F1[k]))
            throw std::invalid_argument("solve: boundary data must be finite");

    GridFunction f0 = F0, f1 = F1;
    const auto r0 = certify_convexity_window(f0, params.hess_floor);
    const auto r1 = certify_convexity_window(f1, params.hess_floor);
    if (!r0 || !r1)
        throw std::invalid_argument("solve: boundary data not certified strongly convex");

    SolveReport rep;
    if (p == 1.0) {
        SpaceTimeField f = interp_one_family(F0, F1, params.time_layers);
        f.set_provenance("solve(p=1; " + F0.provenance() + "; " + F1.provenance() + ")");
        rep.converged = true;
        rep.final_residual = 0.0;
        return {std::move(f), rep};
    }
    if (p == kPosInf) {
        SpaceTimeField f = interp_linear_family(F0, F1, params.time_layers);
        f.set_provenance("solve(p=inf; " + F0.provenance() + "; " + F1.provenance() + ")");
        rep.converged = true;
        rep.final_residual = 0.0;
        return {std::move(f), rep};
    }

    SpaceTimeField f = interp_one_family(F0, F1, params.time_layers);
    const Lattice& lat = f.space();
    const SpatialStencil st(lat);
    const int m = f.layers();
    const double dt = f.dt();
    const bool even = F0.even() && F1.even();
    f.set_even(even);

    std::vector<std::vector<double>> next(m);
    for (int l = 0; l < m; ++l) next[l].assign(lat.size(), 0.0);

    bool projected_once = false;
    double last_hist = kPosInf;
    int sweep = 0;
    for (; sweep < params.max_sweeps; ++sweep) {
        // Damped Jacobi update of interior layers from the current field.
        for (int l = 1; l + 1 < m; ++l) {
            std::span<const double> vm = f.layer_values(l - 1);
            std::span<const double> v0 = f.layer_values(l);
            std::span<const double> vp = f.layer_values(l + 1);
            std::span<double> out = next[l];
            for (int i = 0; i < st.n0; ++i) {
                for (int j = 0; j < st.n1; ++j) {
                    const std::size_t k = lat.index(i, j);
                    double gxm, gym, gxp, gyp;
                    st.grad(vm, i, j, gxm, gym);
                    st.grad(vp, i, j, gxp, gyp);
                    const double gtx = (gxp - gxm) / (2.0 * dt);
                    const double gty = (gyp - gym) / (2.0 * dt);
                    double hxx, hxy, hyy;
                    st.hess(v0, i, j, hxx, hxy, hyy);
                    const double q = quadform(lat, hxx, hxy, hyy, gtx, gty, params.hess_floor);
                    if (std::isnan(q)) {
                        ++rep.degenerate_skips;
                        out[k] = v0[k];
                        continue;
                    }
                    const double target = 0.5 * (vm[k] + vp[k]) - 0.5 * dt * dt * q / p;
                    out[k] = (1.0 - params.damping) * v0[k] + params.damping * target;
                }
            }
            if (even) symmetrize_layer(lat, out);
        }
        for (int l = 1; l + 1 < m; ++l)
            std::copy(next[l].begin(), next[l].end(), f.layer_values(l).begin());

        // Periodic convexity projection.
        if ((sweep + 1) % params.convexify_every == 0) {
            double delta = 0.0;
            for (int l = 1; l + 1 < m; ++l) {
                GridFunction layer = f.layer(l);
                GridFunction env = convex_envelope(layer);
                std::span<double> v = f.layer_values(l);
                for (std::size_t k = 0; k < v.size(); ++k) {
                    if (is_finite_value(env[k])) {
                        delta = std::max(delta, std::abs(env[k] - v[k]));
                        v[k] = env[k];
                    }
                }
                if (even) symmetrize_layer(lat, v);
            }
            rep.projection_delta.push_back(delta);
            projected_once = true;
        }

        if ((sweep + 1) % params.residual_every == 0 || sweep + 1 == params.max_sweeps) {
            std::size_t degen = 0;
            const double res = sweep_residual(f, p, params.hess_floor, degen);
            rep.residual_history.push_back(res);
            if (projected_once && res > last_hist * (1.0 + 1e-9)) rep.monotone = false;
            last_hist = res;
            rep.final_residual = res;
            if (res <= params.tolerance) {
                rep.converged = true;
                ++sweep;
                break;
            }
        }
    }
    rep.sweeps = sweep;

    std::ostringstream prov;
    prov << "solve(p=" << format_g12(p) << "; " << F0.provenance() << "; " << F1.provenance()
         << "; layers=" << m << ")";
    f.set_provenance(prov.str());
    return {std::move(f), rep};
}

CheckReport certify_family(const SpaceTimeField& field, double p, std::optional<double> tol_opt,
                           double hess_floor) {
    const ResidualField r = residual_p(field, p, hess_floor);
    const Lattice& lat = field.space();
    const std::size_t n = lat.size();

    // Normalized determinant route: det H_p / (p^n det Hess F) equals the
    // residual in exact arithmetic; computing it separately cross-checks the
    // characterization.
    double sup_ndet = 0.0;
    const bool inf_p = p == kPosInf;
    const double pn = inf_p ? 1.0 : std::pow(p, lat.dim());
    std::vector<DerivativeField> d;
    if (!inf_p) {
        d.resize(field.layers());
        for (int l = 0; l < field.layers(); ++l) d[l] = finite_diff(field.layer(l));
    }
    for (int l = 1; l + 1 < field.layers(); ++l) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t slot = static_cast<std::size_t>(l) * n + k;
            if (r.status[slot] != ResidualField::kOk) continue;
            double nd;
            if (inf_p) {
                nd = r.det_h[slot];
            } else {
                const double dh = d[l].hess_det(k);
                nd = r.det_h[slot] / (pn * dh);
            }
            sup_ndet = std::max(sup_ndet, std::abs(nd));
        }
    }

    double hmax = lat.spacing(0);
    if (lat.dim() == 2) hmax = std::max(hmax, lat.spacing(1));
    const double tol = tol_opt ? *tol_opt : (field.dt() * field.dt() + hmax * hmax) * r.scale;
    const double worst = std::max(r.sup_abs_residual, sup_ndet);

    std::ostringstream loc;
    if (r.worst_layer >= 0) {
        const auto pt = lat.point(r.worst_flat);
        loc << "t=" << format_g12(field.time(r.worst_layer)) << ",x=" << format_g12(pt[0]);
        if (lat.dim() == 2) loc << "," << format_g12(pt[1]);
    }
    std::ostringstream prov;
    prov << field.provenance() << "; p=" << format_g12(p)
         << "; sup_res=" << format_g12(r.sup_abs_residual)
         << "; sup_ndet=" << format_g12(sup_ndet) << "; degenerate=" << r.degenerate_count;
    return CheckReport::make("certify_family", -worst, tol, loc.str(), prov.str());
}

}  // namespace pinterp
