#include "pinterp/checks.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pinterp/finite_diff.hpp"
#include "pinterp/interp.hpp"
#include "pinterp/legendre.hpp"
#include "pinterp/summation.hpp"

namespace pinterp {

double c_np(int n, double p) {
    if (n < 1 || !(p > 0.0)) throw std::invalid_argument("c_np: need n >= 1, p > 0");
    const double np = static_cast<double>(n) / p;
    return std::pow(p, np) * std::tgamma(1.0 + np);
}

double volume_via_gauge(const Body& K, double p, int points_per_axis) {
    if (!(p > 0.0)) throw std::invalid_argument("volume_via_gauge: p must be positive");
    if (!K.contains_origin_interior())
        throw std::domain_error("volume_via_gauge: origin outside body");
    const int n = K.dim();
    const double L = K.circumradius() * std::pow(34.0 * p, 1.0 / p);
    const int count = points_per_axis > 0 ? points_per_axis : (n == 1 ? 8001 : 901);
    Lattice lat = n == 1 ? Lattice::make1d(-L, L, count)
                         : Lattice::make2d(-L, L, count, -L, L, count);
    KahanSum s;
    for (std::size_t k = 0; k < lat.size(); ++k) {
        const auto pt = lat.point(k);
        const double g = K.gauge(std::span<const double>(pt.data(), n));
        const double e = std::pow(g, p) / p;
        if (e > 700.0) continue;
        s.add(cell_mass(lat, k) * std::exp(-e));
    }
    return s.value() / c_np(n, p);
}

CheckReport check_cnp_volume(const Body& K, double p, double tol_rel) {
    const double vol = volume_via_gauge(K, p);
    const double exact = K.volume();
    const double margin = tol_rel - std::abs(vol - exact) / exact;
    std::ostringstream prov;
    prov << K.describe() << "; p=" << format_g12(p) << "; lattice=" << format_g12(vol)
         << "; exact=" << format_g12(exact);
    // margin here is slack against the stated relative tolerance
    return CheckReport::make("cnp_volume", margin, 0.0, "", prov.str());
}

CheckReport check_prekopa(const GridFunction& F0, const GridFunction& F1,
                          const PrekopaOptions& opt) {
    const SpaceTimeField fam = interp_one_family(F0, F1, opt.layers);
    const AlphaProfile prof = alpha_profile(fam);
    double m = kPosInf;
    double worst_t = 0.0;
    for (int i = 1; i + 1 < fam.layers(); ++i) {
        if (prof.alpha_dd_fd[i] < m) {
            m = prof.alpha_dd_fd[i];
            worst_t = prof.t[i];
        }
    }
    std::ostringstream prov;
    prov << F0.provenance() << "; " << F1.provenance() << "; layers=" << opt.layers;
    return CheckReport::make("prekopa", m, opt.tolerance, "t=" + format_g12(worst_t), prov.str());
}

CheckReport check_brunn_minkowski(const Body& K0, const Body& K1, double t, double tol_rel) {
    if (K0.dim() != K1.dim()) throw std::invalid_argument("brunn_minkowski: dim mismatch");
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("brunn_minkowski: t must be in [0,1]");
    double vt, v0, v1;
    if (K0.dim() == 1) {
        v0 = K0.volume();
        v1 = K1.volume();
        const double h0 = 0.5 * v0, h1 = 0.5 * v1;
        vt = 2.0 * ((1.0 - t) * h0 + t * h1);
    } else {
        const std::vector<Vec2> P0 = K0.as_polygon();
        const std::vector<Vec2> P1 = K1.as_polygon();
        v0 = polygon_area(P0);
        v1 = polygon_area(P1);
        const std::vector<Vec2> A = polygon_scale(P0, 1.0 - t);
        const std::vector<Vec2> B = polygon_scale(P1, t);
        if (t == 0.0) vt = v0;
        else if (t == 1.0) vt = v1;
        else vt = polygon_area(minkowski_sum(A, B));
    }
    const double gm = std::pow(v0, 1.0 - t) * std::pow(v1, t);
    const double margin = (vt - gm) / gm;
    std::ostringstream prov;
    prov << K0.describe() << "; " << K1.describe() << "; |K0|=" << format_g12(v0)
         << "; |K1|=" << format_g12(v1) << "; |Kt|=" << format_g12(vt);
    return CheckReport::make("brunn_minkowski", margin, tol_rel, "t=" + format_g12(t),
                             prov.str());
}

CheckReport check_brascamp_lieb(const GridFunction& F, const GridFunction& u, double tol,
                                double hess_floor) {
    if (F.lattice() != u.lattice())
        throw std::invalid_argument("brascamp_lieb: lattice mismatch");
    const DerivativeField dF = finite_diff(F);
    const DerivativeField du = finite_diff(u);
    const ProbabilityWeights mu = weights_from_potential(F);

    // Restrict to stencil-valid, non-degenerate points and renormalize.
    KahanSum mass, rhs_sum, eu_sum;
    std::size_t excluded = 0;
    double excluded_mass = 0.0;
    std::vector<uint8_t> ok(F.size(), 0);
    for (std::size_t k = 0; k < F.size(); ++k) {
        if (mu.w[k] == 0.0) continue;
        if (!dF.is_valid(k) || !du.is_valid(k) || dF.hess_min_eig(k) < hess_floor) {
            ++excluded;
            excluded_mass += mu.w[k];
            continue;
        }
        ok[k] = 1;
        mass.add(mu.w[k]);
        const double gy = F.lattice().dim() == 2 ? du.gy[k] : 0.0;
        rhs_sum.add(mu.w[k] * dF.hess_inv_quadform(k, du.gx[k], gy));
        eu_sum.add(mu.w[k] * u[k]);
    }
    const double m = mass.value();
    if (!(m > 0.0)) throw std::domain_error("brascamp_lieb: no evaluable mass");
    const double eu = eu_sum.value() / m;
    KahanSum var;
    for (std::size_t k = 0; k < F.size(); ++k) {
        if (!ok[k]) continue;
        const double d = u[k] - eu;
        var.add(mu.w[k] * d * d);
    }
    const double rhs = rhs_sum.value() / m;
    const double lhs = var.value() / m;
    std::ostringstream prov;
    prov << F.provenance() << "; u=" << u.provenance() << "; rhs=" << format_g12(rhs)
         << "; var=" << format_g12(lhs);
    if (excluded > 0)
        prov << "; excluded=" << excluded << " (mass " << format_g12(excluded_mass) << ")";
    return CheckReport::make("brascamp_lieb", rhs - lhs, tol, "", prov.str());
}

CheckReport check_santalo(const GridFunction& f, double tol_rel) {
    if (!f.even() || !f.validate_even())
        throw std::domain_error("santalo: evenness violation");
    const int n = f.lattice().dim();
    const ProbabilityWeights mf = weights_from_potential(f);
    const GridFunction g = legendre(f, auto_dual_lattice(f));
    const ProbabilityWeights mg = weights_from_potential(g);
    const double product = mf.z * mg.z;
    const double bound = std::pow(2.0 * std::numbers::pi, n);
    std::ostringstream prov;
    prov << f.provenance() << "; product=" << format_g12(product)
         << "; bound=" << format_g12(bound);
    return CheckReport::make("santalo", bound - product, tol_rel * bound, "", prov.str());
}

namespace {

// Linear interpolation of a per-point array over the lattice box.
bool interp_array(const Lattice& lat, std::span<const double> v, double x, double y,
                  double& out) {
    auto locate = [&](int axis, double c, int& i0, double& w) {
        const double s = (c - lat.lo(axis)) / lat.spacing(axis);
        if (s < 0.0 || s > lat.count(axis) - 1) return false;
        i0 = std::min(static_cast<int>(s), lat.count(axis) - 2);
        w = s - i0;
        return true;
    };
    int i0, j0 = 0;
    double wx, wy = 0.0;
    if (!locate(0, x, i0, wx)) return false;
    if (lat.dim() == 2 && !locate(1, y, j0, wy)) return false;
    auto val = [&](int i, int j) { return v[lat.index(i, j)]; };
    if (lat.dim() == 1) {
        const double a = val(i0, 0), b = val(i0 + 1, 0);
        if (std::isnan(a) || std::isnan(b)) return false;
        out = a + wx * (b - a);
        return true;
    }
    const double f00 = val(i0, j0), f10 = val(i0 + 1, j0), f01 = val(i0, j0 + 1),
                 f11 = val(i0 + 1, j0 + 1);
    if (std::isnan(f00) || std::isnan(f10) || std::isnan(f01) || std::isnan(f11)) return false;
    out = (1 - wx) * (1 - wy) * f00 + wx * (1 - wy) * f10 + (1 - wx) * wy * f01 + wx * wy * f11;
    return true;
}

}  // namespace

CheckReport check_duality_identity(const SpaceTimeField& field, std::optional<double> tol_opt,
                                   double hess_floor) {
    const SpaceTimeField dualf = dual_family(field);
    const Lattice& lat = field.space();
    const Lattice& dlat = dualf.space();
    const int m = field.layers();
    const double dt = field.dt();
    const std::size_t nd = dlat.size();

    std::vector<DerivativeField> dF(m), dG(m);
    for (int l = 0; l < m; ++l) {
        dF[l] = finite_diff(field.layer(l));
        dG[l] = finite_diff(dualf.layer(l));
    }

    double worst = 0.0, worst_cross = 0.0;
    double worst_t = 0.0, worst_x = 0.0;
    double scale = 1.0;
    std::size_t evaluated = 0;

    std::vector<double> dttG(nd), gtxG(nd), gtyG(nd), hxxG(nd), hxyG(nd), hyyG(nd);
    for (int l = 1; l + 1 < m; ++l) {
        // G-side stencil fields on the dual lattice (NaN where invalid).
        for (std::size_t k = 0; k < nd; ++k) {
            const double gm = dualf.layer_values(l - 1)[k];
            const double g0 = dualf.layer_values(l)[k];
            const double gp = dualf.layer_values(l + 1)[k];
            const bool ok = is_finite_value(gm) && is_finite_value(g0) && is_finite_value(gp) &&
                            dG[l - 1].is_valid(k) && dG[l].is_valid(k) && dG[l + 1].is_valid(k);
            if (!ok) {
                dttG[k] = gtxG[k] = gtyG[k] = hxxG[k] = hxyG[k] = hyyG[k] = std::nan("");
                continue;
            }
            dttG[k] = (gp - 2.0 * g0 + gm) / (dt * dt);
            gtxG[k] = (dG[l + 1].gx[k] - dG[l - 1].gx[k]) / (2.0 * dt);
            gtyG[k] = dlat.dim() == 2 ? (dG[l + 1].gy[k] - dG[l - 1].gy[k]) / (2.0 * dt) : 0.0;
            hxxG[k] = dG[l].hxx[k];
            hxyG[k] = dlat.dim() == 2 ? dG[l].hxy[k] : 0.0;
            hyyG[k] = dlat.dim() == 2 ? dG[l].hyy[k] : 0.0;
        }

        for (std::size_t k = 0; k < lat.size(); ++k) {
            if (!dF[l].is_valid(k) || !dF[l - 1].is_valid(k) || !dF[l + 1].is_valid(k)) continue;
            if (dF[l].hess_min_eig(k) < hess_floor) continue;
            const double fm = field.layer_values(l - 1)[k];
            const double f0 = field.layer_values(l)[k];
            const double fp = field.layer_values(l + 1)[k];
            if (!is_finite_value(fm) || !is_finite_value(f0) || !is_finite_value(fp)) continue;
            const double dttF = (fp - 2.0 * f0 + fm) / (dt * dt);
            const double gtx = (dF[l + 1].gx[k] - dF[l - 1].gx[k]) / (2.0 * dt);
            const double gty =
                lat.dim() == 2 ? (dF[l + 1].gy[k] - dF[l - 1].gy[k]) / (2.0 * dt) : 0.0;
            const double rhsF = dF[l].hess_inv_quadform(k, gtx, gty) / 1.0;

            // Evaluate the G terms at y = grad F(t, x).
            const double yx = dF[l].gx[k];
            const double yy = lat.dim() == 2 ? dF[l].gy[k] : 0.0;
            double dttg, a, b = 0.0, hxx, hxy = 0.0, hyy = 0.0;
            if (!interp_array(dlat, dttG, yx, yy, dttg)) continue;
            if (!interp_array(dlat, gtxG, yx, yy, a)) continue;
            if (!interp_array(dlat, hxxG, yx, yy, hxx)) continue;
            if (dlat.dim() == 2) {
                if (!interp_array(dlat, gtyG, yx, yy, b)) continue;
                if (!interp_array(dlat, hxyG, yx, yy, hxy)) continue;
                if (!interp_array(dlat, hyyG, yx, yy, hyy)) continue;
            }
            const double resid = std::abs(dttF + dttg - rhsF);
            ++evaluated;
            scale = std::max(scale, std::abs(rhsF));
            if (resid > worst) {
                worst = resid;
                worst_t = field.time(l);
                worst_x = lat.point(k)[0];
            }
            // Cross-check (Hess G)^{-1} grad dt G . grad dt G at y.
            double rhsG;
            if (dlat.dim() == 1) {
                rhsG = hxx >= hess_floor ? a * a / hxx : std::nan("");
            } else {
                double lo, hi;
                eig_sym2(hxx, hxy, hyy, lo, hi);
                rhsG = lo >= hess_floor
                           ? (hyy * a * a - 2 * hxy * a * b + hxx * b * b) / (hxx * hyy - hxy * hxy)
                           : std::nan("");
            }
            if (!std::isnan(rhsG)) worst_cross = std::max(worst_cross, std::abs(rhsF - rhsG));
        }
    }
    if (evaluated == 0) throw std::domain_error("duality_identity: no evaluable points");

    double hmax = lat.spacing(0);
    if (lat.dim() == 2) hmax = std::max(hmax, lat.spacing(1));
    const double tol = tol_opt ? *tol_opt : 10.0 * (hmax + dt * dt) * scale;
    std::ostringstream loc, prov;
    loc << "t=" << format_g12(worst_t) << ",x=" << format_g12(worst_x);
    prov << field.provenance() << "; cross_route_gap=" << format_g12(worst_cross)
         << "; evaluated=" << evaluated;
    return CheckReport::make("duality_identity", -worst, tol, loc.str(), prov.str());
}

CheckReport check_gaussian_even_gap(const GridFunction& u, double tol) {
    if (!u.validate_even()) throw std::domain_error("gaussian_even_gap: evenness violation");
    const Lattice& lat = u.lattice();
    std::vector<double> gv(lat.size());
    for (std::size_t k = 0; k < lat.size(); ++k) {
        const auto p = lat.point(k);
        double q = p[0] * p[0];
        if (lat.dim() == 2) q += p[1] * p[1];
        gv[k] = 0.5 * q;
    }
    GridFunction gauss(lat, std::move(gv));
    const ProbabilityWeights gamma = weights_from_potential(gauss);
    const DerivativeField du = finite_diff(u);

    KahanSum mass, dirichlet, eu;
    std::vector<uint8_t> ok(lat.size(), 0);
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (gamma.w[k] == 0.0 || !du.is_valid(k)) continue;
        ok[k] = 1;
        mass.add(gamma.w[k]);
        double g2 = du.gx[k] * du.gx[k];
        if (lat.dim() == 2) g2 += du.gy[k] * du.gy[k];
        dirichlet.add(gamma.w[k] * g2);
        eu.add(gamma.w[k] * u[k]);
    }
    const double m = mass.value();
    const double e = eu.value() / m;
    KahanSum var;
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (!ok[k]) continue;
        const double d = u[k] - e;
        var.add(gamma.w[k] * d * d);
    }
    const double lhs = var.value() / m;
    const double rhs = 0.5 * dirichlet.value() / m;
    std::ostringstream prov;
    prov << "u=" << u.provenance() << "; half_dirichlet=" << format_g12(rhs)
         << "; var=" << format_g12(lhs);
    return CheckReport::make("gaussian_even_gap", rhs - lhs, tol, "", prov.str());
}

CheckReport check_b_family(const GridFunction& W, const BFamilyOptions& opt) {
    if (!W.even() || !W.validate_even()) throw std::domain_error("b_family: W must be even");
    const Lattice& lat = W.lattice();
    SpaceTimeField f(lat, opt.layers, -1.0, 1.0);
    for (int l = 0; l < opt.layers; ++l) {
        const double et = std::exp(f.time(l));
        std::span<double> v = f.layer_values(l);
        for (std::size_t k = 0; k < lat.size(); ++k) {
            const auto p = lat.point(k);
            double q = p[0] * p[0];
            if (lat.dim() == 2) q += p[1] * p[1];
            v[k] = et * 0.5 * q;
        }
    }
    f.set_even(true);
    f.set_provenance("exp(t)|x|^2/2 vs nu=" + W.provenance());

    const AlphaProfile prof = alpha_profile(f, &W);
    double m = kPosInf;
    double worst_t = 0.0;
    for (int i = 1; i + 1 < opt.layers; ++i) {
        if (prof.alpha_dd_fd[i] < m) {
            m = prof.alpha_dd_fd[i];
            worst_t = prof.t[i];
        }
    }
    const CheckReport cert = certify_family(f, 2.0);
    CheckReport rep = CheckReport::make("b_family", m, opt.tolerance, "t=" + format_g12(worst_t),
                                        f.provenance() + "; residual2_margin=" +
                                            format_g12(cert.margin) + "/tol " +
                                            format_g12(cert.tolerance));
    rep.pass = rep.pass && cert.pass;
    return rep;
}

CheckReport explore_conjecture(const Body& K0, const Body& K1, double lambda0, double lambda1,
                               const ConjectureOptions& opt) {
    if (K0.dim() != K1.dim()) throw std::invalid_argument("explore_conjecture: dim mismatch");
    if (!(lambda0 > 0.0) || !(lambda1 > 0.0))
        throw std::invalid_argument("explore_conjecture: lambdas must be positive");
    const int n = K0.dim();
    double L = opt.box_half_width;
    if (L <= 0.0) {
        const double r = std::max(K0.circumradius(), K1.circumradius());
        const double lmin = std::min(lambda0, lambda1);
        L = r * std::sqrt(20.0 / lmin);
    }
    Lattice lat = n == 1 ? Lattice::make1d(-L, L, opt.lattice_points)
                         : Lattice::make2d(-L, L, opt.lattice_points, -L, L, opt.lattice_points);
    auto make_f = [&](const Body& K, double lam) {
        GridFunction g = sample(FamilySpec::gauge_power(K, 2.0), lat);
        for (std::size_t k = 0; k < g.size(); ++k)
            if (is_finite_value(g[k])) g[k] *= 2.0 * lam;  // lambda ||x||^2
        g.set_provenance("lambda*gauge^2(" + K.describe() + ",l=" + format_g12(lam) + ")");
        return g;
    };
    GridFunction F0 = make_f(K0, lambda0);
    GridFunction F1 = make_f(K1, lambda1);

    auto [field, rep] = solve_p_interpolation(F0, F1, 2.0, opt.solver);
    const AlphaProfile prof = alpha_profile(field);
    double m = kPosInf;
    double worst_t = 0.0;
    for (int i = 1; i + 1 < field.layers(); ++i) {
        if (prof.alpha_dd_fd[i] < m) {
            m = prof.alpha_dd_fd[i];
            worst_t = prof.t[i];
        }
    }
    std::ostringstream prov;
    prov << "exploratory: " << F0.provenance() << "; " << F1.provenance()
         << "; solver_converged=" << (rep.converged ? "true" : "false")
         << "; final_residual=" << format_g12(rep.final_residual)
         << "; min_alpha_dd=" << format_g12(m);
    CheckReport out;
    out.name = "explore_conjecture";
    out.pass = true;  // exploratory: recorded margin, no pass/fail claim
    out.margin = m;
    out.tolerance = kPosInf;
    out.location = "t=" + format_g12(worst_t);
    out.provenance = prov.str();
    return out;
}

}  // namespace pinterp
