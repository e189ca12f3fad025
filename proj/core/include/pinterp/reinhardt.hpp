#pragma once

#include <span>
#include <string>
#include <vector>

#include "pinterp/report.hpp"

namespace pinterp {

/// Shadow of coordinates moduli of a Reinhardt body: a lower-closed cell
/// set on [0, R]^n (n = 1 or 2), membership sampled at cell centers and
/// stored as a monotone staircase.
class ShadowGauge {
public:
    /// Euclidean-ball shadow of radius rho.
    static ShadowGauge disc(double rho, int n, double R, int res = 0);
    /// Polydisc shadow (box) with radii r1, r2.
    static ShadowGauge polydisc(double r1, double r2, double R, int res = 0);
    /// l1 shadow { r1 + r2 <= c }.
    static ShadowGauge l1(double c, double R, int res = 0);
    /// Custom monotone staircase of per-column member-cell counts.
    static ShadowGauge staircase(std::vector<int> heights, double R);

    int n() const { return n_; }
    double extent() const { return R_; }
    int resolution() const { return res_; }
    double cell() const { return R_ / res_; }
    double center(int i) const { return (i + 0.5) * cell(); }

    int height(int i) const { return n_ == 1 ? heights_[0] : heights_[i]; }
    bool member(int i, int j = 0) const;
    /// Cell-center quantized membership of a point.
    bool contains(double r1, double r2 = 0.0) const;
    std::span<const int> heights() const { return heights_; }

    bool compatible(const ShadowGauge& o) const {
        return n_ == o.n_ && R_ == o.R_ && res_ == o.res_;
    }

    /// Log-log boundary midpoint-concavity spot check (Reinhardt convex
    /// bodies have logarithmically convex shadows); warning only.
    bool log_convexity_warning() const { return log_warning_; }

    std::string describe() const { return desc_; }

private:
    ShadowGauge(int n, double R, int res, std::vector<int> heights, std::string desc);
    int n_ = 1;
    double R_ = 1.0;
    int res_ = 0;
    std::vector<int> heights_;
    bool log_warning_ = false;
    std::string desc_;
};

/// (2 pi)^n int_S prod r_j dr by the midpoint rule on the shadow grid.
double reinhardt_volume(const ShadowGauge& S);

/// Coordinatewise geometric-mean interpolation: the lower closure of
/// { (a1^{1-t} b1^t, a2^{1-t} b2^t) : a in S0, b in S1 }, computed by
/// pairing the boundary staircases. t = 0 and t = 1 return the inputs.
ShadowGauge reinhardt_interpolate(const ShadowGauge& S0, const ShadowGauge& S1, double t);

/// Arithmetic-pairing shadow (Minkowski-combination shadow), used by the
/// geometric-mean containment check.
ShadowGauge reinhardt_arithmetic(const ShadowGauge& S0, const ShadowGauge& S1, double t);

/// S_t column-wise contained in the arithmetic shadow (coordinatewise AM-GM).
bool reinhardt_contained(const ShadowGauge& inner, const ShadowGauge& outer);

/// |K_t| >= |K0|^{1-t} |K1|^t (1 - tol) at the given t samples, plus
/// discrete log-concavity of t -> |K_t| across the sample set.
CheckReport check_reinhardt_logconcavity(const ShadowGauge& S0, const ShadowGauge& S1,
                                         std::span<const double> ts, double tol_rel = 2e-3);

}  // namespace pinterp
