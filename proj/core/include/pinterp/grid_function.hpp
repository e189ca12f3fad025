#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinterp/lattice.hpp"

namespace pinterp {

class FamilySpec;

/// +infinity sentinel for extended-real values. Absorbing in sup/inf,
/// zero mass under e^{-F}.
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

inline bool is_finite_value(double v) { return v < kPosInf && v > -kPosInf; }

/// Extended-real-valued function sampled on a uniform lattice.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(Lattice lat, std::vector<double> values);

    const Lattice& lattice() const { return lat_; }
    std::span<const double> values() const { return v_; }
    std::span<double> values() { return v_; }
    double operator[](std::size_t flat) const { return v_[flat]; }
    double& operator[](std::size_t flat) { return v_[flat]; }
    double at(int i, int j = 0) const { return v_[lat_.index(i, j)]; }
    std::size_t size() const { return v_.size(); }

    bool even() const { return even_; }
    void set_even(bool e) { even_ = e; }
    /// Checks |f(x) - f(-x)| <= 1e-12 (1 + |f(x)|) on symmetric lattices.
    bool validate_even(double tol = 1e-12) const;

    /// Certified strong-convexity window [1/R, R], when established.
    std::optional<double> convexity_window() const { return window_R_; }
    void set_convexity_window(std::optional<double> R) { window_R_ = R; }
    bool convexity_warning() const { return convexity_warning_; }
    void set_convexity_warning(bool w) { convexity_warning_ = w; }

    /// Analytic generator, when the function was produced by sample().
    std::shared_ptr<const FamilySpec> family() const { return family_; }
    void set_family(std::shared_ptr<const FamilySpec> f) { family_ = std::move(f); }

    const std::string& provenance() const { return prov_; }
    void set_provenance(std::string p) { prov_ = std::move(p); }

    std::size_t finite_count() const;
    bool proper() const { return finite_count() > 0; }

    double min_finite() const;
    /// Lipschitz estimate: max one-sided difference quotient over finite pairs.
    double lipschitz_estimate() const;

private:
    Lattice lat_;
    std::vector<double> v_;
    bool even_ = false;
    std::optional<double> window_R_;
    bool convexity_warning_ = false;
    std::shared_ptr<const FamilySpec> family_;
    std::string prov_;
};

/// Discrete convexity certificate: positive-definite interior Hessian with
/// eigenvalues in [1/R - tol, R + tol]. Returns the window R on success and
/// stamps it on f.
std::optional<double> certify_convexity_window(GridFunction& f, double eig_floor = 1e-9);

/// Warn threshold for tail mass of e^{-F} outside a box of half-width L
/// when F >= |x|^2 / (2R): exp(-L^2/(4R)).
double tail_bound(double box_half_width, double window_R);

}  // namespace pinterp
