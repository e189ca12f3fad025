#include "pinterp/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pinterp {

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

double polygon_area(std::span<const Vec2> poly) {
    double a = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

bool polygon_is_convex_ccw(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < 0.0) return false;
    }
    return polygon_area(poly) > 0.0;
}

bool polygon_contains_origin(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        // Origin strictly left of every CCW edge.
        if (p.x * q.y - q.x * p.y <= 0.0) return false;
    }
    return true;
}

std::vector<Vec2> polygon_scale(std::span<const Vec2> poly, double s) {
    std::vector<Vec2> out(poly.begin(), poly.end());
    for (Vec2& v : out) { v.x *= s; v.y *= s; }
    return out;
}

std::vector<Vec2> polygon_translate(std::span<const Vec2> poly, Vec2 t) {
    std::vector<Vec2> out(poly.begin(), poly.end());
    for (Vec2& v : out) { v.x += t.x; v.y += t.y; }
    return out;
}

std::vector<Vec2> minkowski_sum(std::span<const Vec2> a, std::span<const Vec2> b) {
    if (a.size() < 3 || b.size() < 3)
        throw std::invalid_argument("minkowski_sum: need polygons");
    auto bottom = [](std::span<const Vec2> p) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (p[i].y < p[k].y || (p[i].y == p[k].y && p[i].x < p[k].x)) k = i;
        return k;
    };
    const std::size_t na = a.size(), nb = b.size();
    std::size_t ia = bottom(a), ib = bottom(b);
    std::vector<Vec2> out;
    out.reserve(na + nb);
    std::size_t ca = 0, cb = 0;
    Vec2 cur{a[ia].x + b[ib].x, a[ia].y + b[ib].y};
    while (ca < na || cb < nb) {
        out.push_back(cur);
        const Vec2& ea0 = a[(ia) % na];
        const Vec2& ea1 = a[(ia + 1) % na];
        const Vec2& eb0 = b[(ib) % nb];
        const Vec2& eb1 = b[(ib + 1) % nb];
        const Vec2 da{ea1.x - ea0.x, ea1.y - ea0.y};
        const Vec2 db{eb1.x - eb0.x, eb1.y - eb0.y};
        double turn = da.x * db.y - da.y * db.x;
        bool take_a;
        if (ca >= na) take_a = false;
        else if (cb >= nb) take_a = true;
        else take_a = turn > 0.0 || turn == 0.0;  // parallel edges: advance a (b follows next loop)
        if (take_a) {
            cur.x += da.x; cur.y += da.y;
            ia = (ia + 1) % na; ++ca;
        } else {
            cur.x += db.x; cur.y += db.y;
            ib = (ib + 1) % nb; ++cb;
        }
    }
    return out;
}

Body Body::box(std::vector<double> half_widths) {
    if (half_widths.empty() || half_widths.size() > 2)
        throw std::invalid_argument("box: dim must be 1 or 2");
    for (double h : half_widths)
        if (!(h > 0.0)) throw std::invalid_argument("box: half-widths must be positive");
    Body b;
    b.kind_ = Kind::Box;
    b.dim_ = static_cast<int>(half_widths.size());
    b.hw_ = std::move(half_widths);
    return b;
}

Body Body::ellipsoid(double a11, double a12, double a22) {
    if (!(a11 > 0.0) || !(a11 * a22 - a12 * a12 > 0.0))
        throw std::invalid_argument("ellipsoid: matrix must be positive-definite");
    Body b;
    b.kind_ = Kind::Ellipsoid;
    b.dim_ = 2;
    b.a11_ = a11; b.a12_ = a12; b.a22_ = a22;
    return b;
}

Body Body::l1_ball(double scale, int dim) {
    if (!(scale > 0.0)) throw std::invalid_argument("l1_ball: scale must be positive");
    if (dim < 1 || dim > 2) throw std::invalid_argument("l1_ball: dim must be 1 or 2");
    Body b;
    b.kind_ = Kind::L1Ball;
    b.dim_ = dim;
    b.scale_ = scale;
    return b;
}

Body Body::polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: need >= 3 vertices");
    if (polygon_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    if (!polygon_is_convex_ccw(vertices))
        throw std::invalid_argument("polygon: vertices not in convex position");
    Body b;
    b.kind_ = Kind::Polygon;
    b.dim_ = 2;
    b.verts_ = std::move(vertices);
    const std::size_t n = b.verts_.size();
    b.normals_.resize(n);
    b.offsets_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = b.verts_[i];
        const Vec2& q = b.verts_[(i + 1) % n];
        // Outward normal of CCW edge (p, q).
        b.normals_[i] = Vec2{q.y - p.y, p.x - q.x};
        b.offsets_[i] = b.normals_[i].x * p.x + b.normals_[i].y * p.y;
    }
    return b;
}

double Body::gauge(std::span<const double> x) const {
    switch (kind_) {
        case Kind::Box: {
            double g = 0.0;
            for (int a = 0; a < dim_; ++a) g = std::max(g, std::abs(x[a]) / hw_[a]);
            return g;
        }
        case Kind::Ellipsoid: {
            const double q = a11_ * x[0] * x[0] + 2.0 * a12_ * x[0] * x[1] + a22_ * x[1] * x[1];
            return std::sqrt(std::max(q, 0.0));
        }
        case Kind::L1Ball: {
            double s = 0.0;
            for (int a = 0; a < dim_; ++a) s += std::abs(x[a]);
            return s / scale_;
        }
        case Kind::Polygon: {
            if (!contains_origin_interior())
                throw std::domain_error("polygon gauge: origin not interior");
            double g = 0.0;
            for (std::size_t i = 0; i < normals_.size(); ++i) {
                const double v = (normals_[i].x * x[0] + normals_[i].y * x[1]) / offsets_[i];
                g = std::max(g, v);
            }
            return g;
        }
    }
    return 0.0;
}

double Body::volume() const {
    switch (kind_) {
        case Kind::Box: {
            double v = 1.0;
            for (double h : hw_) v *= 2.0 * h;
            return v;
        }
        case Kind::Ellipsoid:
            return std::numbers::pi / std::sqrt(a11_ * a22_ - a12_ * a12_);
        case Kind::L1Ball:
            return dim_ == 1 ? 2.0 * scale_ : 2.0 * scale_ * scale_;
        case Kind::Polygon:
            return polygon_area(verts_);
    }
    return 0.0;
}

bool Body::centrally_symmetric() const {
    if (kind_ != Kind::Polygon) return true;
    for (const Vec2& v : verts_) {
        bool found = false;
        for (const Vec2& w : verts_) {
            if (std::abs(w.x + v.x) <= 1e-12 * (1.0 + std::abs(v.x)) &&
                std::abs(w.y + v.y) <= 1e-12 * (1.0 + std::abs(v.y))) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool Body::contains_origin_interior() const {
    if (kind_ != Kind::Polygon) return true;
    return polygon_contains_origin(verts_);
}

double Body::circumradius() const {
    switch (kind_) {
        case Kind::Box: {
            double s = 0.0;
            for (double h : hw_) s += h * h;
            return std::sqrt(s);
        }
        case Kind::Ellipsoid: {
            // 1/sqrt(lambda_min(A)).
            const double tr = a11_ + a22_, det = a11_ * a22_ - a12_ * a12_;
            const double lmin = 0.5 * (tr - std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
            return 1.0 / std::sqrt(lmin);
        }
        case Kind::L1Ball:
            return scale_;
        case Kind::Polygon: {
            double r = 0.0;
            for (const Vec2& v : verts_) r = std::max(r, std::hypot(v.x, v.y));
            return r;
        }
    }
    return 0.0;
}

double Body::inradius() const {
    switch (kind_) {
        case Kind::Box: {
            double r = std::numeric_limits<double>::infinity();
            for (double h : hw_) r = std::min(r, h);
            return r;
        }
        case Kind::Ellipsoid: {
            const double tr = a11_ + a22_, det = a11_ * a22_ - a12_ * a12_;
            const double lmax = 0.5 * (tr + std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
            return 1.0 / std::sqrt(lmax);
        }
        case Kind::L1Ball:
            return dim_ == 1 ? scale_ : scale_ / std::numbers::sqrt2;
        case Kind::Polygon: {
            double r = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < normals_.size(); ++i) {
                const double nn = std::hypot(normals_[i].x, normals_[i].y);
                r = std::min(r, offsets_[i] / nn);
            }
            return r;
        }
    }
    return 0.0;
}

std::vector<Vec2> Body::as_polygon(int segments) const {
    switch (kind_) {
        case Kind::Box:
            if (dim_ != 2) throw std::domain_error("as_polygon: 1D body");
            return {Vec2{hw_[0], hw_[1]}, Vec2{-hw_[0], hw_[1]}, Vec2{-hw_[0], -hw_[1]},
                    Vec2{hw_[0], -hw_[1]}};
        case Kind::L1Ball:
            if (dim_ != 2) throw std::domain_error("as_polygon: 1D body");
            return {Vec2{scale_, 0}, Vec2{0, scale_}, Vec2{-scale_, 0}, Vec2{0, -scale_}};
        case Kind::Polygon:
            return verts_;
        case Kind::Ellipsoid: {
            // Boundary points x(t) = A^{-1/2} (cos t, sin t).
            const double tr = a11_ + a22_, det = a11_ * a22_ - a12_ * a12_;
            const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
            const double l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
            // Eigenvector for l1.
            double ex, ey;
            if (std::abs(a12_) > 1e-300) { ex = l1 - a22_; ey = a12_; }
            else if (a11_ >= a22_) { ex = 1; ey = 0; }
            else { ex = 0; ey = 1; }
            const double en = std::hypot(ex, ey);
            ex /= en; ey /= en;
            const double r1 = 1.0 / std::sqrt(l1), r2 = 1.0 / std::sqrt(l2);
            std::vector<Vec2> out(segments);
            for (int k = 0; k < segments; ++k) {
                const double th = 2.0 * std::numbers::pi * k / segments;
                const double u = r1 * std::cos(th), v = r2 * std::sin(th);
                out[k] = Vec2{u * ex - v * ey, u * ey + v * ex};
            }
            return out;
        }
    }
    return {};
}

std::string Body::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Box:
            os << (dim_ == 1 ? "interval(" : "box(");
            for (std::size_t i = 0; i < hw_.size(); ++i) os << (i ? "," : "") << hw_[i];
            os << ")";
            break;
        case Kind::Ellipsoid:
            os << "ellipsoid(" << a11_ << "," << a12_ << "," << a22_ << ")";
            break;
        case Kind::L1Ball:
            os << "l1(" << scale_ << ",d" << dim_ << ")";
            break;
        case Kind::Polygon:
            os << "polygon(" << verts_.size() << "v)";
            break;
    }
    return os.str();
}

}  // namespace pinterp
