#pragma once

#include <span>
#include <string>
#include <vector>

namespace pinterp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Exact convex-polygon helpers (CCW vertex order).
double polygon_area(std::span<const Vec2> poly);
bool polygon_is_convex_ccw(std::span<const Vec2> poly);
bool polygon_contains_origin(std::span<const Vec2> poly);
std::vector<Vec2> polygon_scale(std::span<const Vec2> poly, double s);
std::vector<Vec2> polygon_translate(std::span<const Vec2> poly, Vec2 v);
/// Minkowski sum of two convex CCW polygons by sorted edge-vector merge.
std::vector<Vec2> minkowski_sum(std::span<const Vec2> a, std::span<const Vec2> b);

/// Centrally-symmetric (origin-centered) convex body in dimension 1 or 2,
/// except Polygon which may be translated off-center. Provides the gauge
/// (Minkowski functional), exact volume, and a polygonal approximation.
class Body {
public:
    enum class Kind { Box, Ellipsoid, L1Ball, Polygon };

    /// Box with per-axis half-widths; dim = half_widths.size() (1 = interval).
    static Body box(std::vector<double> half_widths);
    /// 2D ellipsoid {x : x' A x <= 1}, A symmetric positive-definite.
    static Body ellipsoid(double a11, double a12, double a22);
    /// Cross-polytope {sum |x_i| <= scale}.
    static Body l1_ball(double scale, int dim);
    /// Convex polygon from CCW vertices (convex position required).
    static Body polygon(std::vector<Vec2> vertices);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    /// Minkowski gauge min{s > 0 : x/s in K}. Requires origin in interior.
    double gauge(std::span<const double> x) const;
    /// Exact Lebesgue volume (length / area).
    double volume() const;
    /// Central symmetry (exact for catalog kinds; vertex test for polygons).
    bool centrally_symmetric() const;
    bool contains_origin_interior() const;
    /// Radius of the smallest origin-centered disc containing K.
    double circumradius() const;
    /// Radius of the largest origin-centered disc inside K.
    double inradius() const;

    /// 2D polygonal approximation (boundary-inscribed); exact for polygons
    /// and boxes. `segments` applies to curved boundaries.
    std::vector<Vec2> as_polygon(int segments = 256) const;

    std::string describe() const;

    // Kind-specific accessors used by samplers.
    const std::vector<double>& half_widths() const { return hw_; }
    double ell_a11() const { return a11_; }
    double ell_a12() const { return a12_; }
    double ell_a22() const { return a22_; }
    double l1_scale() const { return scale_; }
    const std::vector<Vec2>& vertices() const { return verts_; }

private:
    Kind kind_ = Kind::Box;
    int dim_ = 1;
    std::vector<double> hw_;          // Box
    double a11_ = 1, a12_ = 0, a22_ = 1;  // Ellipsoid
    double scale_ = 1;                // L1Ball
    std::vector<Vec2> verts_;         // Polygon (CCW)
    // Polygon half-plane form n_e . x <= d_e, for the gauge.
    std::vector<Vec2> normals_;
    std::vector<double> offsets_;
};

}  // namespace pinterp
