#include "pinterp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pinterp/summation.hpp"

namespace pinterp {

double cell_mass(const Lattice& lat, std::size_t flat) {
    int i, j;
    lat.unindex(flat, i, j);
    double m = lat.spacing(0) * ((i == 0 || i == lat.count(0) - 1) ? 0.5 : 1.0);
    if (lat.dim() == 2)
        m *= lat.spacing(1) * ((j == 0 || j == lat.count(1) - 1) ? 0.5 : 1.0);
    return m;
}

ProbabilityWeights weights_from_potential(const GridFunction& F, const GridFunction* W) {
    const Lattice& lat = F.lattice();
    if (W && W->lattice() != lat)
        throw std::invalid_argument("weights_from_potential: background lattice mismatch");

    ProbabilityWeights mu;
    mu.lattice = lat;
    mu.lebesgue_background = W == nullptr;
    mu.w.assign(lat.size(), 0.0);

    KahanSum z, bz;
    std::size_t supported = 0;
    for (std::size_t k = 0; k < lat.size(); ++k) {
        double e = F[k];
        if (W) {
            const double wv = (*W)[k];
            e = (is_finite_value(e) && is_finite_value(wv)) ? e + wv : kPosInf;
        }
        double term = 0.0;
        if (is_finite_value(e)) {
            if (e < -700.0) throw std::domain_error("weights_from_potential: overflowing mass");
            term = cell_mass(lat, k) * std::exp(-e);
            if (term > 0.0) ++supported;
        }
        mu.w[k] = term;
        z.add(term);
        int i, j;
        lat.unindex(k, i, j);
        const bool boundary = i == 0 || i == lat.count(0) - 1 ||
                              (lat.dim() == 2 && (j == 0 || j == lat.count(1) - 1));
        if (boundary) bz.add(term);
    }
    mu.z = z.value();
    if (!(mu.z > 0.0) || supported < 2)
        throw std::domain_error("weights_from_potential: zero mass");
    for (double& x : mu.w) x /= mu.z;
    mu.boundary_mass = bz.value() / mu.z;
    mu.tail_warning = mu.boundary_mass > 1e-6;
    return mu;
}

double mean(const ProbabilityWeights& mu, std::span<const double> u) {
    KahanSum s;
    for (std::size_t k = 0; k < mu.w.size(); ++k) {
        if (mu.w[k] == 0.0) continue;
        if (!is_finite_value(u[k]))
            throw std::domain_error("mean: u infinite on a positive-mass point");
        s.add(mu.w[k] * u[k]);
    }
    return s.value();
}

double mean(const ProbabilityWeights& mu, const GridFunction& u) { return mean(mu, u.values()); }

double variance(const ProbabilityWeights& mu, std::span<const double> u) {
    const double e = mean(mu, u);
    KahanSum s;
    for (std::size_t k = 0; k < mu.w.size(); ++k) {
        if (mu.w[k] == 0.0) continue;
        const double d = u[k] - e;
        s.add(mu.w[k] * d * d);
    }
    double v = s.value();
    if (v < 0.0) {
        if (v < -1e-14) throw std::domain_error("variance: negative beyond tolerance");
        v = 0.0;
    }
    return v;
}

double variance(const ProbabilityWeights& mu, const GridFunction& u) {
    return variance(mu, u.values());
}

double AlphaProfile::min_alpha_dd_fd() const {
    double m = kPosInf;
    for (std::size_t i = 0; i < alpha_dd_fd.size(); ++i)
        if (!boundary[i] && !std::isnan(alpha_dd_fd[i])) m = std::min(m, alpha_dd_fd[i]);
    return m;
}

double AlphaProfile::min_alpha_dd_int() const {
    double m = kPosInf;
    for (std::size_t i = 0; i < alpha_dd_int.size(); ++i)
        if (!boundary[i] && !std::isnan(alpha_dd_int[i])) m = std::min(m, alpha_dd_int[i]);
    return m;
}

namespace {

double layer_alpha(const SpaceTimeField& field, int i, const GridFunction* W) {
    const ProbabilityWeights mu = weights_from_potential(field.layer(i), W);
    return -std::log(mu.z);
}

double dd_integral_at(const SpaceTimeField& field, int i, const GridFunction* W) {
    const Lattice& lat = field.space();
    const double dt = field.dt();
    const ProbabilityWeights mu = weights_from_potential(field.layer(i), W);
    std::span<const double> fm = field.layer_values(i - 1);
    std::span<const double> f0 = field.layer_values(i);
    std::span<const double> fp = field.layer_values(i + 1);

    // dt F and dtt F by centered layer differences; points whose stencil is
    // non-finite are excluded with their mass (renormalized).
    KahanSum mass, e_u, e_dtt;
    std::vector<double> ut(lat.size(), 0.0);
    std::vector<uint8_t> ok(lat.size(), 0);
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (mu.w[k] == 0.0) continue;
        if (!is_finite_value(fm[k]) || !is_finite_value(fp[k])) continue;
        ut[k] = (fp[k] - fm[k]) / (2.0 * dt);
        ok[k] = 1;
        mass.add(mu.w[k]);
        e_u.add(mu.w[k] * ut[k]);
        e_dtt.add(mu.w[k] * ((fp[k] - 2.0 * f0[k] + fm[k]) / (dt * dt)));
    }
    const double m = mass.value();
    if (!(m > 0.0)) throw std::domain_error("alpha_dd_integral: no evaluable mass");
    const double eu = e_u.value() / m;
    KahanSum var;
    for (std::size_t k = 0; k < lat.size(); ++k) {
        if (!ok[k]) continue;
        const double d = ut[k] - eu;
        var.add(mu.w[k] * d * d);
    }
    return e_dtt.value() / m - var.value() / m;
}

}  // namespace

AlphaProfile alpha_profile(const SpaceTimeField& field, const GridFunction* W) {
    const int m = field.layers();
    AlphaProfile p;
    p.dt = field.dt();
    p.t.resize(m);
    p.alpha.resize(m);
    p.alpha_dd_fd.assign(m, std::nan(""));
    p.alpha_dd_int.assign(m, std::nan(""));
    p.boundary.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        p.t[i] = field.time(i);
        p.alpha[i] = layer_alpha(field, i, W);
    }
    p.boundary[0] = p.boundary[m - 1] = 1;
    for (int i = 1; i + 1 < m; ++i) {
        p.alpha_dd_fd[i] = (p.alpha[i + 1] - 2.0 * p.alpha[i] + p.alpha[i - 1]) / (p.dt * p.dt);
        p.alpha_dd_int[i] = dd_integral_at(field, i, W);
    }
    return p;
}

double alpha_dd_integral(const SpaceTimeField& field, int layer, const GridFunction* W) {
    if (layer <= 0 || layer >= field.layers() - 1)
        throw std::invalid_argument("alpha_dd_integral: boundary layer requested");
    return dd_integral_at(field, layer, W);
}

double ipp_residual(const GridFunction& F, const GridFunction& phi) {
    const Lattice& lat = F.lattice();
    if (lat.dim() != 1) throw std::invalid_argument("ipp_residual: 1D only");
    if (phi.lattice() != lat) throw std::invalid_argument("ipp_residual: lattice mismatch");
    const int n = lat.count(0);
    const double h = lat.spacing(0);

    // phi' must be compactly supported in the interior.
    const double scale = 1.0 + std::abs(phi[0]) + std::abs(phi[n - 1]);
    if (std::abs(phi[1] - phi[0]) > 1e-12 * scale * h ||
        std::abs(phi[n - 1] - phi[n - 2]) > 1e-12 * scale * h)
        throw std::domain_error("ipp_residual: support touching boundary");

    const ProbabilityWeights mu = weights_from_potential(F);
    KahanSum i1, i2, i3;
    for (int i = 1; i + 1 < n; ++i) {
        if (mu.w[i] == 0.0) continue;
        const double fp = (F[i + 1] - F[i - 1]) / (2.0 * h);
        const double fpp = (F[i + 1] - 2.0 * F[i] + F[i - 1]) / (h * h);
        const double pp = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
        const double ppp = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
        const double lphi = ppp - fp * pp;
        i1.add(mu.w[i] * lphi * lphi);
        i2.add(mu.w[i] * fpp * pp * pp);
        i3.add(mu.w[i] * ppp * ppp);
    }
    return std::abs(i1.value() - i2.value() - i3.value());
}

}  // namespace pinterp
