#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace sphcap {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Angle of a point in [0, 2pi).
double polar_angle(Point p);

using Ring = std::vector<Point>;

/// Planar set bounded by closed polygonal rings. After validate(), outer
/// rings are counter-clockwise and holes clockwise, so the interior is always
/// on the left of each edge.
struct MultiPolygon {
    std::vector<Ring> rings;

    std::size_t vertex_count() const;
    double scale() const; ///< largest vertex distance from the origin
};

/// Open radial window lo < |x| < hi; hi may be +inf.
class AnnulusWindow {
public:
    AnnulusWindow(double lo, double hi);

    static AnnulusWindow everything() { return {0.0, std::numeric_limits<double>::infinity()}; }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool contains(double r) const { return r > lo_ && r < hi_; }
    /// Length of [a, b] inside the window.
    double overlap(double a, double b) const;

private:
    double lo_;
    double hi_;
};

enum class SliceKind { Empty, Full, Partial };

struct AngularInterval {
    double start = 0.0; ///< in [0, 2pi)
    double end = 0.0;   ///< start < end <= start + 2pi; may exceed 2pi when wrapping

    double width() const { return end - start; }
};

/// The slice E cap circle(r) as angular intervals.
struct ArcSet {
    double radius = 0.0;
    std::vector<AngularInterval> intervals;
    SliceKind kind = SliceKind::Empty;

    double total_width() const;
    double length() const { return radius * total_width(); }
    int arc_count() const { return kind == SliceKind::Partial ? static_cast<int>(intervals.size()) : 0; }
    bool contains_angle(double angle) const;
};

struct SliceEndpoint {
    double angle = 0.0;
    Point normal;            ///< outward unit normal of the crossed edge
    double radial = 0.0;     ///< xhat . nu
    double tangential = 0.0; ///< |nu_parallel|
    std::size_t ring = 0;
    std::size_t edge = 0;
};

struct SliceStats {
    double radius = 0.0;
    int p = 0;
    double g = 0.0;
    std::vector<SliceEndpoint> endpoints;
};

// Tolerances, relative to MultiPolygon::scale().
inline constexpr double kTangencyTol = 1e-12;    // on r^2 - d^2, times scale^2
inline constexpr double kFullSliceTol = 1e-9;    // radians
inline constexpr double kVertexTol = 1e-12;      // coincident vertices, times scale
inline constexpr double kCriticalDedupTol = 1e-12;

MultiPolygon validate(MultiPolygon poly);

double ring_signed_area(const Ring& ring);
double area(const MultiPolygon& poly);
double perimeter(const MultiPolygon& poly);
Point barycenter(const MultiPolygon& poly);
MultiPolygon recenter(const MultiPolygon& poly, Point origin);

/// Even-odd rule over all rings.
bool point_in_polygon(const MultiPolygon& poly, Point p);

double perimeter_in_annulus(const MultiPolygon& poly, const AnnulusWindow& window);

/// Area of poly intersected with the disk of radius r about the origin.
double area_in_disk(const MultiPolygon& poly, double r);

ArcSet circle_slice(const MultiPolygon& poly, double r);
SliceStats slice_stats(const MultiPolygon& poly, double r);

std::vector<double> critical_radii(const MultiPolygon& poly);

} // namespace sphcap
