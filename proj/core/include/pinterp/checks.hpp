#pragma once

#include <optional>

#include "pinterp/bodies.hpp"
#include "pinterp/family.hpp"
#include "pinterp/measures.hpp"
#include "pinterp/pde.hpp"
#include "pinterp/report.hpp"

namespace pinterp {

/// c_{n,p} = p^{n/p} Gamma(1 + n/p), so that int e^{-||x||_K^p / p} = c_{n,p} |K|.
double c_np(int n, double p);

/// Lattice estimate of |K| via int e^{-||x||_K^p/p} dx / c_{n,p}.
double volume_via_gauge(const Body& K, double p, int points_per_axis = 0);

struct PrekopaOptions {
    int layers = 25;
    double tolerance = 1e-6;
};
/// Builds the inf-convolution family of (F0, F1) and verifies min alpha'' >= -tol.
CheckReport check_prekopa(const GridFunction& F0, const GridFunction& F1,
                          const PrekopaOptions& opt = {});

/// |(1-t)K0 + tK1| >= |K0|^{1-t} |K1|^t, relative margin. Exact interval
/// arithmetic in 1D; polygon Minkowski sum (shoelace area) in 2D.
CheckReport check_brunn_minkowski(const Body& K0, const Body& K1, double t,
                                  double tol_rel = 1e-9);

/// Volume identity margin: |volume_via_gauge - |K|| / |K| <= tol.
CheckReport check_cnp_volume(const Body& K, double p, double tol_rel = 1e-3);

/// Var_mu(u) <= int (Hess F)^{-1} grad u . grad u dmu for strongly convex F.
CheckReport check_brascamp_lieb(const GridFunction& F, const GridFunction& u,
                                double tol = 1e-8, double hess_floor = 1e-6);

/// int e^{-f} int e^{-Lf} <= (2pi)^n for even f; margin absolute against
/// (2pi)^n, tolerance relative.
CheckReport check_santalo(const GridFunction& f, double tol_rel = 1e-3);

/// dtt F + dtt G = (Hess F)^{-1} grad dt F . grad dt F with G = LF evaluated
/// at y = grad F(t,x); also cross-checks the dual quadratic form route.
CheckReport check_duality_identity(const SpaceTimeField& field,
                                   std::optional<double> tol = std::nullopt,
                                   double hess_floor = 1e-6);

/// Gaussian even-mode gap: Var_gamma(u) <= (1/2) int |grad u|^2 dgamma for
/// even u (second Hermite level).
CheckReport check_gaussian_even_gap(const GridFunction& u, double tol = 1e-6);

struct BFamilyOptions {
    int layers = 33;
    double tolerance = 1e-6;
};
/// F(t,x) = e^t |x|^2/2 on t in [-1,1] against d nu = e^{-W} dx: alpha_nu
/// convex, plus a p=2 residual certificate for the family.
CheckReport check_b_family(const GridFunction& W, const BFamilyOptions& opt = {});

struct ConjectureOptions {
    SolverParams solver;
    int lattice_points = 65;
    double box_half_width = 0.0;  // 0 = auto from the bodies
};
/// Exploratory alpha profile of the solved 2-family for lambda_i ||x||_{K_i}^2
/// data. Watermarked; never fails.
CheckReport explore_conjecture(const Body& K0, const Body& K1, double lambda0, double lambda1,
                               const ConjectureOptions& opt = {});

}  // namespace pinterp
