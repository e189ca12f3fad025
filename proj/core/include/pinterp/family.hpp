#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "pinterp/bodies.hpp"
#include "pinterp/grid_function.hpp"
#include "pinterp/lattice.hpp"

namespace pinterp {

/// Analytic catalog of convex generators: quadratics (1/2) x'Ax, gauge
/// powers ||x||_K^q / q, even polynomials in |x|, and tabulated data.
class FamilySpec {
public:
    enum class Kind { Quadratic, GaugePower, EvenPolynomial, CustomTable };

    static FamilySpec quadratic(double lambda);
    static FamilySpec quadratic2d(double a11, double a12, double a22);
    /// ||x||_K^q / q with q >= 1 and 0 interior to K.
    static FamilySpec gauge_power(Body body, double q);
    /// sum_k c_k |x|^(2k), k = 1..m (1D uses |x| = |x_1|).
    static FamilySpec even_polynomial(std::vector<double> coeffs, int dim = 1);
    static FamilySpec custom_table(std::vector<double> values, int dim = 1);

    /// Same generator translated to be centered at `center`.
    FamilySpec shifted(std::array<double, 2> center) const;

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool is_even() const;
    /// Evaluates the generator at x (any point, not only lattice points).
    /// Invalid for CustomTable.
    double eval(std::span<const double> x) const;
    /// Lower strong-convexity parameter when cheaply known (quadratics).
    double quadratic_lambda() const { return a11_; }
    const Body* body() const { return kind_ == Kind::GaugePower ? &body_ : nullptr; }
    double gauge_exponent() const { return q_; }

    std::string describe() const;

    const std::vector<double>& table() const { return table_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    std::array<double, 2> center() const { return center_; }

private:
    Kind kind_ = Kind::Quadratic;
    int dim_ = 1;
    double a11_ = 1, a12_ = 0, a22_ = 1;  // Quadratic
    Body body_ = Body::box({1.0});        // GaugePower
    double q_ = 2.0;
    std::vector<double> coeffs_;          // EvenPolynomial
    std::vector<double> table_;           // CustomTable
    std::array<double, 2> center_{0, 0};
};

/// Samples the generator on a lattice. Sets the even flag for even
/// generators on symmetric lattices, attaches analytic provenance, and
/// flags (not errors) non-convex custom tables.
GridFunction sample(const FamilySpec& family, const Lattice& lattice);

}  // namespace pinterp
