#include "pinterp/grid_function.hpp"

#include <cmath>
#include <stdexcept>

#include "pinterp/finite_diff.hpp"

namespace pinterp {

GridFunction::GridFunction(Lattice lat, std::vector<double> values)
    : lat_(std::move(lat)), v_(std::move(values)) {
    if (v_.size() != lat_.size())
        throw std::invalid_argument("GridFunction: values size does not match lattice");
    for (double x : v_)
        if (std::isnan(x) || x == -kPosInf)
            throw std::invalid_argument("GridFunction: values must be finite or +inf");
}

bool GridFunction::validate_even(double tol) const {
    for (int a = 0; a < lat_.dim(); ++a)
        if (!lat_.symmetric(a)) return false;
    for (std::size_t k = 0; k < v_.size(); ++k) {
        const double f = v_[k];
        const double g = v_[lat_.mirror_index(k)];
        if (!is_finite_value(f) || !is_finite_value(g)) {
            if (f != g) return false;
            continue;
        }
        if (std::abs(f - g) > tol * (1.0 + std::abs(f))) return false;
    }
    return true;
}

std::size_t GridFunction::finite_count() const {
    std::size_t n = 0;
    for (double x : v_) n += is_finite_value(x) ? 1 : 0;
    return n;
}

double GridFunction::min_finite() const {
    double m = kPosInf;
    for (double x : v_)
        if (x < m) m = x;
    return m;
}

double GridFunction::lipschitz_estimate() const {
    double lip = 0.0;
    const int d = lat_.dim();
    if (d == 1) {
        const double h = lat_.spacing(0);
        for (int i = 0; i + 1 < lat_.count(0); ++i) {
            const double a = v_[i], b = v_[i + 1];
            if (is_finite_value(a) && is_finite_value(b))
                lip = std::max(lip, std::abs(b - a) / h);
        }
        return lip;
    }
    for (int i = 0; i < lat_.count(0); ++i) {
        for (int j = 0; j < lat_.count(1); ++j) {
            const double v = v_[lat_.index(i, j)];
            if (!is_finite_value(v)) continue;
            if (i + 1 < lat_.count(0)) {
                const double w = v_[lat_.index(i + 1, j)];
                if (is_finite_value(w)) lip = std::max(lip, std::abs(w - v) / lat_.spacing(0));
            }
            if (j + 1 < lat_.count(1)) {
                const double w = v_[lat_.index(i, j + 1)];
                if (is_finite_value(w)) lip = std::max(lip, std::abs(w - v) / lat_.spacing(1));
            }
        }
    }
    return lip;
}

std::optional<double> certify_convexity_window(GridFunction& f, double eig_floor) {
    const DerivativeField d = finite_diff(f);
    double lo = kPosInf, hi = 0.0;
    std::size_t n_valid = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!d.is_valid(k)) continue;
        ++n_valid;
        lo = std::min(lo, d.hess_min_eig(k));
        hi = std::max(hi, d.hess_max_eig(k));
    }
    if (n_valid == 0 || !(lo > eig_floor)) {
        f.set_convexity_window(std::nullopt);
        return std::nullopt;
    }
    const double R = std::max({hi, 1.0 / lo, 1.0});
    f.set_convexity_window(R);
    return R;
}

double tail_bound(double box_half_width, double window_R) {
    return std::exp(-box_half_width * box_half_width / (4.0 * window_R));
}

}  // namespace pinterp
