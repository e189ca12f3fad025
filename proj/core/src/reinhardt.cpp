#include "pinterp/reinhardt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pinterp/grid_function.hpp"
#include "pinterp/summation.hpp"

namespace pinterp {

namespace {

int default_res(int n) { return n == 1 ? 8192 : 128; }

int quantize(double r, double cell, int res) {
    // Number of cells whose center (k + 0.5) * cell lies at or below r.
    if (!(r > 0.0)) return 0;
    return std::min(res, static_cast<int>(std::floor(r / cell + 0.5)));
}

}  // namespace

ShadowGauge::ShadowGauge(int n, double R, int res, std::vector<int> heights, std::string desc)
    : n_(n), R_(R), res_(res), heights_(std::move(heights)), desc_(std::move(desc)) {
    if (n_ < 1 || n_ > 2) throw std::invalid_argument("ShadowGauge: n must be 1 or 2");
    if (!(R_ > 0.0) || res_ < 2) throw std::invalid_argument("ShadowGauge: bad grid");
    bool any = false;
    int prev = res_;
    for (int h : heights_) {
        if (h < 0 || h > res_) throw std::invalid_argument("ShadowGauge: heights out of range");
        if (h > prev) throw std::invalid_argument("ShadowGauge: not lower-closed");
        prev = h;
        any = any || h > 0;
    }
    if (!any) throw std::domain_error("ShadowGauge: empty shadow");
    if (heights_[0] == 0) throw std::invalid_argument("ShadowGauge: 0 not interior");

    // Spot check of log-log boundary concavity on sampled column triples.
    if (n_ == 2) {
        for (int i = 1; i + 1 < res_; i *= 2) {
            const int a = i / 2, b = i, c = std::min(2 * i, res_ - 1);
            if (c <= b || heights_[a] == 0 || heights_[b] == 0 || heights_[c] == 0) continue;
            const double ua = std::log(center(a)), ub = std::log(center(b)),
                         uc = std::log(center(c));
            const double va = std::log(center(heights_[a] - 1)),
                         vb = std::log(center(heights_[b] - 1)),
                         vc = std::log(center(heights_[c] - 1));
            // vb should sit above the chord through (ua, va) and (uc, vc).
            const double chord = va + (vc - va) * (ub - ua) / (uc - ua);
            const double cell_slack = 2.0 * cell() / center(std::max(heights_[b] - 1, 1));
            if (vb < chord - cell_slack) {
                log_warning_ = true;
                break;
            }
        }
    }
}

bool ShadowGauge::member(int i, int j) const {
    if (n_ == 1) return i >= 0 && i < heights_[0];
    return i >= 0 && i < res_ && j >= 0 && j < heights_[i];
}

bool ShadowGauge::contains(double r1, double r2) const {
    const int i = static_cast<int>(std::floor(r1 / cell()));
    if (n_ == 1) return i >= 0 && i < heights_[0];
    const int j = static_cast<int>(std::floor(r2 / cell()));
    return member(i, j);
}

ShadowGauge ShadowGauge::disc(double rho, int n, double R, int res) {
    if (!(rho > 0.0)) throw std::domain_error("ShadowGauge: empty shadow");
    if (res <= 0) res = default_res(n);
    const double cell = R / res;
    std::ostringstream desc;
    desc << "disc(rho=" << rho << ",n=" << n << ")";
    if (n == 1) return ShadowGauge(1, R, res, {quantize(rho, cell, res)}, desc.str());
    std::vector<int> h(res, 0);
    for (int i = 0; i < res; ++i) {
        const double c = (i + 0.5) * cell;
        if (c > rho) break;
        h[i] = quantize(std::sqrt(std::max(rho * rho - c * c, 0.0)), cell, res);
    }
    return ShadowGauge(2, R, res, std::move(h), desc.str());
}

ShadowGauge ShadowGauge::polydisc(double r1, double r2, double R, int res) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::domain_error("ShadowGauge: empty shadow");
    if (res <= 0) res = default_res(2);
    const double cell = R / res;
    std::vector<int> h(res, 0);
    const int w = quantize(r1, cell, res);
    const int ht = quantize(r2, cell, res);
    for (int i = 0; i < w; ++i) h[i] = ht;
    std::ostringstream desc;
    desc << "polydisc(" << r1 << "," << r2 << ")";
    return ShadowGauge(2, R, res, std::move(h), desc.str());
}

ShadowGauge ShadowGauge::l1(double c, double R, int res) {
    if (!(c > 0.0)) throw std::domain_error("ShadowGauge: empty shadow");
    if (res <= 0) res = default_res(2);
    const double cell = R / res;
    std::vector<int> h(res, 0);
    for (int i = 0; i < res; ++i) {
        const double ci = (i + 0.5) * cell;
        if (ci > c) break;
        h[i] = quantize(c - ci, cell, res);
    }
    std::ostringstream desc;
    desc << "l1-shadow(" << c << ")";
    return ShadowGauge(2, R, res, std::move(h), desc.str());
}

ShadowGauge ShadowGauge::staircase(std::vector<int> heights, double R) {
    const int res = static_cast<int>(heights.size());
    std::ostringstream desc;
    desc << "staircase(" << res << ")";
    return ShadowGauge(2, R, res, std::move(heights), desc.str());
}

double reinhardt_volume(const ShadowGauge& S) {
    const double cell = S.cell();
    if (S.n() == 1) {
        const double rho = S.height(0) * cell;
        return std::numbers::pi * rho * rho;
    }
    KahanSum s;
    for (int i = 0; i < S.resolution(); ++i) {
        const int h = S.height(i);
        if (h == 0) break;
        // sum_{j<h} (j+0.5) cell^2 = (h cell)^2 / 2
        const double col = 0.5 * (h * cell) * (h * cell);
        s.add(S.center(i) * cell * col);
    }
    const double pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
    return pi2 * s.value();
}

namespace {

ShadowGauge pair_shadow(const ShadowGauge& S0, const ShadowGauge& S1, double t, bool geometric) {
    if (!S0.compatible(S1))
        throw std::invalid_argument("reinhardt_interpolate: incompatible grids");
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("reinhardt_interpolate: t in [0,1]");
    if (t == 0.0) return S0;
    if (t == 1.0) return S1;
    const double s = 1.0 - t;
    auto combine = [&](double a, double b) {
        return geometric ? std::pow(a, s) * std::pow(b, t) : s * a + t * b;
    };
    const int res = S0.resolution();
    const double cell = S0.cell();

    if (S0.n() == 1) {
        const double a = S0.center(S0.height(0) - 1);
        const double b = S1.center(S1.height(0) - 1);
        return ShadowGauge::disc(combine(a, b), 1, S0.extent(), res);
    }

    // Boundary staircases: maximal points (center(i), center(h_i - 1)).
    std::vector<double> bucket(res, -1.0);
    for (int i = 0; i < res; ++i) {
        const int h0 = S0.height(i);
        if (h0 == 0) break;
        const double a1 = S0.center(i), a2 = S0.center(h0 - 1);
        for (int j = 0; j < res; ++j) {
            const int h1 = S1.height(j);
            if (h1 == 0) break;
            const double b1 = S1.center(j), b2 = S1.center(h1 - 1);
            const double g1 = combine(a1, b1);
            const double g2 = combine(a2, b2);
            const int idx = std::min(quantize(g1, cell, res) - 1, res - 1);
            if (idx >= 0) bucket[idx] = std::max(bucket[idx], g2);
        }
    }
    for (int i = res - 2; i >= 0; --i) bucket[i] = std::max(bucket[i], bucket[i + 1]);
    std::vector<int> h(res, 0);
    for (int i = 0; i < res; ++i) h[i] = bucket[i] > 0.0 ? quantize(bucket[i], cell, res) : 0;
    return ShadowGauge::staircase(std::move(h), S0.extent());
}

}  // namespace

ShadowGauge reinhardt_interpolate(const ShadowGauge& S0, const ShadowGauge& S1, double t) {
    return pair_shadow(S0, S1, t, true);
}

ShadowGauge reinhardt_arithmetic(const ShadowGauge& S0, const ShadowGauge& S1, double t) {
    return pair_shadow(S0, S1, t, false);
}

bool reinhardt_contained(const ShadowGauge& inner, const ShadowGauge& outer) {
    if (!inner.compatible(outer)) throw std::invalid_argument("containment: incompatible grids");
    if (inner.n() == 1) return inner.height(0) <= outer.height(0);
    for (int i = 0; i < inner.resolution(); ++i)
        if (inner.height(i) > outer.height(i)) return false;
    return true;
}

CheckReport check_reinhardt_logconcavity(const ShadowGauge& S0, const ShadowGauge& S1,
                                         std::span<const double> ts, double tol_rel) {
    const double v0 = reinhardt_volume(S0);
    const double v1 = reinhardt_volume(S1);
    double min_margin = kPosInf;
    double worst_t = 0.0;
    std::vector<double> logv(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts[k];
        const ShadowGauge St = reinhardt_interpolate(S0, S1, t);
        const double vt = reinhardt_volume(St);
        logv[k] = std::log(vt);
        const double gm = std::pow(v0, 1.0 - t) * std::pow(v1, t);
        const double margin = vt / gm - 1.0;
        if (margin < min_margin) {
            min_margin = margin;
            worst_t = t;
        }
    }
    // Discrete log-concavity across the sample set.
    double lc_violation = 0.0;
    for (std::size_t k = 1; k + 1 < ts.size(); ++k)
        lc_violation = std::max(lc_violation, logv[k + 1] + logv[k - 1] - 2.0 * logv[k]);

    std::ostringstream prov;
    prov << S0.describe() << "; " << S1.describe() << "; |K0|=" << format_g12(v0)
         << "; |K1|=" << format_g12(v1) << "; logconcavity_violation=" << format_g12(lc_violation);
    CheckReport rep = CheckReport::make("reinhardt_logconcavity", min_margin, tol_rel,
                                        "t=" + format_g12(worst_t), prov.str());
    rep.pass = rep.pass && lc_violation <= 4.0 * tol_rel;
    return rep;
}

}  // namespace pinterp
