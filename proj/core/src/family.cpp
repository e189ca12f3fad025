#include "pinterp/family.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pinterp {

FamilySpec FamilySpec::quadratic(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("quadratic: lambda must be positive");
    FamilySpec f;
    f.kind_ = Kind::Quadratic;
    f.dim_ = 1;
    f.a11_ = lambda;
    return f;
}

FamilySpec FamilySpec::quadratic2d(double a11, double a12, double a22) {
    if (!(a11 > 0.0) || !(a11 * a22 - a12 * a12 > 0.0))
        throw std::invalid_argument("quadratic2d: matrix must be positive-definite");
    FamilySpec f;
    f.kind_ = Kind::Quadratic;
    f.dim_ = 2;
    f.a11_ = a11; f.a12_ = a12; f.a22_ = a22;
    return f;
}

FamilySpec FamilySpec::gauge_power(Body body, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("gauge_power: exponent must be >= 1");
    if (!body.contains_origin_interior())
        throw std::invalid_argument("gauge_power: body must contain the origin");
    FamilySpec f;
    f.kind_ = Kind::GaugePower;
    f.dim_ = body.dim();
    f.body_ = std::move(body);
    f.q_ = q;
    return f;
}

FamilySpec FamilySpec::even_polynomial(std::vector<double> coeffs, int dim) {
    if (coeffs.empty()) throw std::invalid_argument("even_polynomial: need coefficients");
    if (dim < 1 || dim > 2) throw std::invalid_argument("even_polynomial: dim must be 1 or 2");
    FamilySpec f;
    f.kind_ = Kind::EvenPolynomial;
    f.dim_ = dim;
    f.coeffs_ = std::move(coeffs);
    return f;
}

FamilySpec FamilySpec::custom_table(std::vector<double> values, int dim) {
    FamilySpec f;
    f.kind_ = Kind::CustomTable;
    f.dim_ = dim;
    f.table_ = std::move(values);
    return f;
}

FamilySpec FamilySpec::shifted(std::array<double, 2> center) const {
    if (kind_ == Kind::CustomTable)
        throw std::invalid_argument("shifted: not supported for custom tables");
    FamilySpec f = *this;
    f.center_ = center;
    return f;
}

bool FamilySpec::is_even() const {
    if (center_[0] != 0.0 || center_[1] != 0.0) return false;
    switch (kind_) {
        case Kind::Quadratic:
        case Kind::EvenPolynomial:
            return true;
        case Kind::GaugePower:
            return body_.centrally_symmetric();
        case Kind::CustomTable:
            return false;  // decided from samples
    }
    return false;
}

double FamilySpec::eval(std::span<const double> x) const {
    double p[2] = {x[0] - center_[0], dim_ == 2 ? x[1] - center_[1] : 0.0};
    switch (kind_) {
        case Kind::Quadratic:
            if (dim_ == 1) return 0.5 * a11_ * p[0] * p[0];
            return 0.5 * (a11_ * p[0] * p[0] + 2.0 * a12_ * p[0] * p[1] + a22_ * p[1] * p[1]);
        case Kind::GaugePower: {
            const double g = body_.gauge(std::span<const double>(p, dim_));
            return std::pow(g, q_) / q_;
        }
        case Kind::EvenPolynomial: {
            const double r2 = p[0] * p[0] + (dim_ == 2 ? p[1] * p[1] : 0.0);
            double acc = 0.0, pw = r2;
            for (double c : coeffs_) {
                acc += c * pw;
                pw *= r2;
            }
            return acc;
        }
        case Kind::CustomTable:
            throw std::domain_error("custom table has no analytic evaluation");
    }
    return 0.0;
}

std::string FamilySpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Quadratic:
            if (dim_ == 1) os << "quadratic(lambda=" << a11_ << ")";
            else os << "quadratic2d(" << a11_ << "," << a12_ << "," << a22_ << ")";
            break;
        case Kind::GaugePower:
            os << "gauge-power(" << body_.describe() << ",q=" << q_ << ")";
            break;
        case Kind::EvenPolynomial: {
            os << "even-poly(";
            for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
            os << ",d" << dim_ << ")";
            break;
        }
        case Kind::CustomTable:
            os << "custom-table(" << table_.size() << ")";
            break;
    }
    if (center_[0] != 0.0 || center_[1] != 0.0)
        os << "@(" << center_[0] << "," << center_[1] << ")";
    return os.str();
}

namespace {

bool table_convex(const Lattice& lat, const std::vector<double>& v) {
    // Discrete midpoint convexity along axes and diagonals, small slack.
    const double tol = 1e-9;
    auto ok = [&](double a, double b, double c) {
        if (!is_finite_value(a) || !is_finite_value(b) || !is_finite_value(c)) return true;
        return a + c - 2.0 * b >= -tol * (1.0 + std::abs(b));
    };
    if (lat.dim() == 1) {
        for (int i = 1; i + 1 < lat.count(0); ++i)
            if (!ok(v[i - 1], v[i], v[i + 1])) return false;
        return true;
    }
    for (int i = 0; i < lat.count(0); ++i)
        for (int j = 1; j + 1 < lat.count(1); ++j)
            if (!ok(v[lat.index(i, j - 1)], v[lat.index(i, j)], v[lat.index(i, j + 1)])) return false;
    for (int j = 0; j < lat.count(1); ++j)
        for (int i = 1; i + 1 < lat.count(0); ++i)
            if (!ok(v[lat.index(i - 1, j)], v[lat.index(i, j)], v[lat.index(i + 1, j)])) return false;
    for (int i = 1; i + 1 < lat.count(0); ++i)
        for (int j = 1; j + 1 < lat.count(1); ++j) {
            if (!ok(v[lat.index(i - 1, j - 1)], v[lat.index(i, j)], v[lat.index(i + 1, j + 1)])) return false;
            if (!ok(v[lat.index(i - 1, j + 1)], v[lat.index(i, j)], v[lat.index(i + 1, j - 1)])) return false;
        }
    return true;
}

}  // namespace

GridFunction sample(const FamilySpec& family, const Lattice& lattice) {
    if (family.dim() != lattice.dim())
        throw std::invalid_argument("sample: family and lattice dimensions differ");

    std::vector<double> v(lattice.size());
    if (family.kind() == FamilySpec::Kind::CustomTable) {
        if (family.table().size() != lattice.size())
            throw std::invalid_argument("sample: table size does not match lattice");
        v = family.table();
    } else {
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto p = lattice.point(k);
            v[k] = family.eval(std::span<const double>(p.data(), lattice.dim()));
        }
    }

    GridFunction f(lattice, std::move(v));
    bool even = false;
    if (family.kind() == FamilySpec::Kind::CustomTable) {
        bool sym = true;
        for (int a = 0; a < lattice.dim(); ++a) sym = sym && lattice.symmetric(a);
        even = sym && f.validate_even();
        if (!table_convex(lattice, family.table())) f.set_convexity_warning(true);
    } else {
        bool sym = true;
        for (int a = 0; a < lattice.dim(); ++a) sym = sym && lattice.symmetric(a);
        even = family.is_even() && sym;
    }
    f.set_even(even);
    f.set_family(std::make_shared<FamilySpec>(family));
    f.set_provenance(family.describe() + " on " + lattice.describe());
    return f;
}

}  // namespace pinterp
