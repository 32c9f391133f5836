#include "sphcap/geometry.hpp"

#include "sphcap/error.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace sphcap {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::SelfIntersection: return "SelfIntersection";
    case ErrorKind::DegenerateRing: return "DegenerateRing";
    case ErrorKind::ZeroArea: return "ZeroArea";
    case ErrorKind::TangencyUnresolved: return "TangencyUnresolved";
    case ErrorKind::MalformedProfile: return "MalformedProfile";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::DegenerateOutput: return "DegenerateOutput";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InfeasibleParameters: return "InfeasibleParameters";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

double polar_angle(Point p)
{
    double a = std::atan2(p.y, p.x);
    if (a < 0.0)
        a += kTwoPi;
    if (a >= kTwoPi)
        a = 0.0;
    return a;
}

std::size_t MultiPolygon::vertex_count() const
{
    std::size_t n = 0;
    for (const auto& ring : rings)
        n += ring.size();
    return n;
}

double MultiPolygon::scale() const
{
    double s = 0.0;
    for (const auto& ring : rings)
        for (const auto& p : ring)
            s = std::max(s, norm(p));
    return s;
}

AnnulusWindow::AnnulusWindow(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (!(lo >= 0.0) || std::isnan(hi) || !(hi > lo))
        throw Error(ErrorKind::InvalidParameter, "annulus window needs 0 <= lo < hi");
}

double AnnulusWindow::overlap(double a, double b) const
{
    return std::max(0.0, std::min(b, hi_) - std::max(a, lo_));
}

double ArcSet::total_width() const
{
    double w = 0.0;
    for (const auto& iv : intervals)
        w += iv.width();
    return w;
}

bool ArcSet::contains_angle(double angle) const
{
    for (const auto& iv : intervals) {
        double a = angle;
        while (a < iv.start)
            a += kTwoPi;
        if (a <= iv.end)
            return true;
    }
    return false;
}

namespace {

    struct Edge {
        Point a;
        Point b;
        std::size_t ring;
        std::size_t index;
    };

    std::vector<Edge> collect_edges(const MultiPolygon& poly)
    {
        std::vector<Edge> edges;
        edges.reserve(poly.vertex_count());
        for (std::size_t r = 0; r < poly.rings.size(); ++r) {
            const auto& ring = poly.rings[r];
            for (std::size_t i = 0; i < ring.size(); ++i)
                edges.push_back({ring[i], ring[(i + 1) % ring.size()], r, i});
        }
        return edges;
    }

    int orientation(Point a, Point b, Point c)
    {
        const double v = cross(b - a, c - a);
        return (v > 0.0) - (v < 0.0);
    }

    bool on_segment(Point a, Point b, Point p)
    {
        return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
               p.y <= std::max(a.y, b.y);
    }

    bool segments_touch(Point p1, Point q1, Point p2, Point q2)
    {
        // Disjoint boxes first: orientation signs of nearly collinear, far-apart
        // segments are rounding noise.
        if (std::max(p1.x, q1.x) < std::min(p2.x, q2.x) || std::max(p2.x, q2.x) < std::min(p1.x, q1.x) ||
            std::max(p1.y, q1.y) < std::min(p2.y, q2.y) || std::max(p2.y, q2.y) < std::min(p1.y, q1.y))
            return false;
        const int o1 = orientation(p1, q1, p2);
        const int o2 = orientation(p1, q1, q2);
        const int o3 = orientation(p2, q2, p1);
        const int o4 = orientation(p2, q2, q1);
        if (o1 != o2 && o3 != o4)
            return true;
        if (o1 == 0 && on_segment(p1, q1, p2))
            return true;
        if (o2 == 0 && on_segment(p1, q1, q2))
            return true;
        if (o3 == 0 && on_segment(p2, q2, p1))
            return true;
        if (o4 == 0 && on_segment(p2, q2, q1))
            return true;
        return false;
    }

    bool adjacent(const Edge& e, const Edge& f, std::size_t ring_size)
    {
        if (e.ring != f.ring)
            return false;
        const std::size_t d = e.index > f.index ? e.index - f.index : f.index - e.index;
        return d == 1 || d == ring_size - 1;
    }

    // Uniform-grid broad phase; any touching pair of non-adjacent edges is fatal.
    void check_simple(const MultiPolygon& poly)
    {
        const auto edges = collect_edges(poly);
        if (edges.empty())
            return;

        for (std::size_t r = 0; r < poly.rings.size(); ++r) {
            const auto& ring = poly.rings[r];
            const std::size_t n = ring.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Point a = ring[(i + n - 1) % n];
                const Point b = ring[i];
                const Point c = ring[(i + 1) % n];
                if (orientation(a, b, c) == 0 && dot(c - b, b - a) < 0.0) {
                    std::ostringstream msg;
                    msg << "ring " << r << " folds back on itself at vertex " << i;
                    throw Error(ErrorKind::SelfIntersection, msg.str());
                }
            }
        }

        double xmin = edges[0].a.x, xmax = xmin, ymin = edges[0].a.y, ymax = ymin;
        for (const auto& e : edges) {
            xmin = std::min({xmin, e.a.x, e.b.x});
            xmax = std::max({xmax, e.a.x, e.b.x});
            ymin = std::min({ymin, e.a.y, e.b.y});
            ymax = std::max({ymax, e.a.y, e.b.y});
        }
        const auto cells = static_cast<std::size_t>(
            std::clamp(std::sqrt(static_cast<double>(edges.size())), 1.0, 1024.0));
        const double w = std::max(xmax - xmin, 1e-300);
        const double h = std::max(ymax - ymin, 1e-300);
        auto cell_of = [&](double v, double lo, double extent) {
            const double f = (v - lo) / extent * static_cast<double>(cells);
            return std::min(cells - 1, static_cast<std::size_t>(std::max(0.0, f)));
        };

        std::vector<std::vector<std::size_t>> grid(cells * cells);
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto& e = edges[k];
            const std::size_t cx0 = cell_of(std::min(e.a.x, e.b.x), xmin, w);
            const std::size_t cx1 = cell_of(std::max(e.a.x, e.b.x), xmin, w);
            const std::size_t cy0 = cell_of(std::min(e.a.y, e.b.y), ymin, h);
            const std::size_t cy1 = cell_of(std::max(e.a.y, e.b.y), ymin, h);
            for (std::size_t cy = cy0; cy <= cy1; ++cy)
                for (std::size_t cx = cx0; cx <= cx1; ++cx)
                    grid[cy * cells + cx].push_back(k);
        }

        for (const auto& bucket : grid) {
            for (std::size_t i = 0; i < bucket.size(); ++i) {
                const auto& e = edges[bucket[i]];
                for (std::size_t j = i + 1; j < bucket.size(); ++j) {
                    const auto& f = edges[bucket[j]];
                    if (adjacent(e, f, poly.rings[e.ring].size()))
                        continue;
                    if (segments_touch(e.a, e.b, f.a, f.b)) {
                        std::ostringstream msg;
                        msg << "edge " << e.index << " of ring " << e.ring << " meets edge " << f.index
                            << " of ring " << f.ring << " near (" << e.a.x << ", " << e.a.y << ")";
                        throw Error(ErrorKind::SelfIntersection, msg.str());
                    }
                }
            }
        }
    }

    bool point_in_ring(const Ring& ring, Point p)
    {
        bool inside = false;
        const std::size_t n = ring.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Point a = ring[i];
            const Point b = ring[j];
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x)
                    inside = !inside;
            }
        }
        return inside;
    }

    struct Crossing {
        double angle;
        std::size_t ring;
        std::size_t edge;
        Point at;
        Point direction;
    };

    // Vertices with |V| >= r count as outside, which makes the crossing count
    // of every ring even, also when the circle passes through a vertex.
    std::vector<Crossing> circle_crossings(const MultiPolygon& poly, double r, double scale)
    {
        std::vector<Crossing> out;
        const double r2 = r * r;
        const double tol = kTangencyTol * scale * scale;
        for (std::size_t ri = 0; ri < poly.rings.size(); ++ri) {
            const auto& ring = poly.rings[ri];
            const std::size_t n = ring.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Point p = ring[i];
                const Point q = ring[(i + 1) % n];
                const Point d = q - p;
                const double len2 = dot(d, d);
                const bool p_in = dot(p, p) < r2;
                const bool q_in = dot(q, q) < r2;
                if (p_in && q_in)
                    continue;
                const double t_foot = -dot(p, d) / len2;
                const double c = cross(p, d);
                const double h = r2 - c * c / len2; // r^2 - dist(origin, line)^2
                const double half = std::sqrt(std::max(0.0, h) / len2);
                auto emit = [&](double t) {
                    t = std::clamp(t, 0.0, 1.0);
                    const Point x = p + t * d;
                    out.push_back({polar_angle(x), ri, i, x, d});
                };
                if (p_in != q_in) {
                    emit(p_in ? t_foot + half : t_foot - half);
                    continue;
                }
                if (t_foot <= 0.0 || t_foot >= 1.0)
                    continue;
                if (std::abs(h) < tol) {
                    std::ostringstream msg;
                    msg << "circle of radius " << r << " is tangent to edge " << i << " of ring " << ri;
                    throw Error(ErrorKind::TangencyUnresolved, msg.str());
                }
                if (h > 0.0) {
                    emit(t_foot - half);
                    emit(t_foot + half);
                }
            }
        }
        std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) { return a.angle < b.angle; });
        return out;
    }

    ArcSet arcs_from_crossings(const MultiPolygon& poly, double r, const std::vector<Crossing>& xs)
    {
        ArcSet arcs;
        arcs.radius = r;
        if (xs.empty()) {
            if (point_in_polygon(poly, {r, 0.0})) {
                arcs.kind = SliceKind::Full;
                arcs.intervals.push_back({0.0, kTwoPi});
            }
            return arcs;
        }

        const std::size_t m = xs.size();
        assert(m % 2 == 0);
        auto gap_end = [&](std::size_t k) { return k + 1 < m ? xs[k + 1].angle : xs[0].angle + kTwoPi; };

        std::size_t widest = 0;
        for (std::size_t k = 1; k < m; ++k)
            if (gap_end(k) - xs[k].angle > gap_end(widest) - xs[widest].angle)
                widest = k;
        const double seed = 0.5 * (xs[widest].angle + gap_end(widest));
        const bool seed_inside = point_in_polygon(poly, {r * std::cos(seed), r * std::sin(seed)});

        for (std::size_t k = 0; k < m; ++k) {
            const bool inside = ((k % 2) == (widest % 2)) == seed_inside;
            if (!inside)
                continue;
            const double start = xs[k].angle;
            const double end = gap_end(k);
            if (end > start)
                arcs.intervals.push_back({start, end});
        }
        std::sort(arcs.intervals.begin(), arcs.intervals.end(),
                  [](const AngularInterval& a, const AngularInterval& b) { return a.start < b.start; });

        const double total = arcs.total_width();
        if (total >= kTwoPi - kFullSliceTol) {
            arcs.kind = SliceKind::Full;
            arcs.intervals = {{0.0, kTwoPi}};
        } else if (arcs.intervals.empty()) {
            arcs.kind = SliceKind::Empty;
        } else {
            arcs.kind = SliceKind::Partial;
        }
        return arcs;
    }

    void require_radius(double r)
    {
        if (!(r > 0.0) || !std::isfinite(r))
            throw Error(ErrorKind::InvalidParameter, "slice radius must be positive and finite");
    }

    // Measure of {t in [0,1] : |p + t d| < r}.
    double inside_param_length(Point p, Point d, double r)
    {
        if (std::isinf(r))
            return 1.0;
        const double len2 = dot(d, d);
        const double t_foot = -dot(p, d) / len2;
        const double c = cross(p, d);
        const double h = r * r - c * c / len2;
        if (h <= 0.0)
            return 0.0;
        const double half = std::sqrt(h / len2);
        return std::max(0.0, std::min(1.0, t_foot + half) - std::max(0.0, t_foot - half));
    }

} // namespace

MultiPolygon validate(MultiPolygon poly)
{
    if (poly.rings.empty())
        throw Error(ErrorKind::ZeroArea, "polygon has no rings");
    for (const auto& ring : poly.rings)
        for (const auto& p : ring)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw Error(ErrorKind::DegenerateRing, "non-finite vertex coordinate");

    const double tol = kVertexTol * std::max(poly.scale(), 1e-300);
    for (std::size_t r = 0; r < poly.rings.size(); ++r) {
        Ring cleaned;
        cleaned.reserve(poly.rings[r].size());
        for (const auto& p : poly.rings[r])
            if (cleaned.empty() || norm(p - cleaned.back()) > tol)
                cleaned.push_back(p);
        while (cleaned.size() > 1 && norm(cleaned.front() - cleaned.back()) <= tol)
            cleaned.pop_back();
        if (cleaned.size() < 3) {
            std::ostringstream msg;
            msg << "ring " << r << " has fewer than 3 distinct vertices";
            throw Error(ErrorKind::DegenerateRing, msg.str());
        }
        // A zero-area ring that is not a line folds over itself; check_simple reports it.
        const bool flat = std::all_of(cleaned.begin(), cleaned.end(), [&](Point q) {
            return std::abs(cross(cleaned[1] - cleaned[0], q - cleaned[0])) <= tol * norm(cleaned[1] - cleaned[0]);
        });
        if (flat) {
            std::ostringstream msg;
            msg << "ring " << r << " encloses no area";
            throw Error(ErrorKind::DegenerateRing, msg.str());
        }
        poly.rings[r] = std::move(cleaned);
    }

    check_simple(poly);

    // Nesting depth decides orientation: even depth is an outer boundary.
    const std::size_t n = poly.rings.size();
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t depth = 0;
        for (std::size_t s = 0; s < n; ++s)
            if (s != r && point_in_ring(poly.rings[s], poly.rings[r].front()))
                ++depth;
        const bool want_ccw = depth % 2 == 0;
        if ((ring_signed_area(poly.rings[r]) > 0.0) != want_ccw)
            std::reverse(poly.rings[r].begin(), poly.rings[r].end());
    }

    const double s = poly.scale();
    if (!(area(poly) > kVertexTol * s * s))
        throw Error(ErrorKind::ZeroArea, "polygon area is not positive");
    return poly;
}

double ring_signed_area(const Ring& ring)
{
    double a = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
        a += cross(ring[i], ring[(i + 1) % n]);
    return 0.5 * a;
}

double area(const MultiPolygon& poly)
{
    double a = 0.0;
    for (const auto& ring : poly.rings)
        a += ring_signed_area(ring);
    return a;
}

double perimeter(const MultiPolygon& poly)
{
    double len = 0.0;
    for (const auto& ring : poly.rings)
        for (std::size_t i = 0; i < ring.size(); ++i)
            len += norm(ring[(i + 1) % ring.size()] - ring[i]);
    return len;
}

Point barycenter(const MultiPolygon& poly)
{
    double a = 0.0, mx = 0.0, my = 0.0;
    for (const auto& ring : poly.rings) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point p = ring[i];
            const Point q = ring[(i + 1) % n];
            const double c = cross(p, q);
            a += c;
            mx += (p.x + q.x) * c;
            my += (p.y + q.y) * c;
        }
    }
    return {mx / (3.0 * a), my / (3.0 * a)};
}

MultiPolygon recenter(const MultiPolygon& poly, Point origin)
{
    MultiPolygon out = poly;
    for (auto& ring : out.rings)
        for (auto& p : ring)
            p = p - origin;
    return out;
}

bool point_in_polygon(const MultiPolygon& poly, Point p)
{
    bool inside = false;
    for (const auto& ring : poly.rings)
        if (point_in_ring(ring, p))
            inside = !inside;
    return inside;
}

double perimeter_in_annulus(const MultiPolygon& poly, const AnnulusWindow& window)
{
    double len = 0.0;
    for (const auto& ring : poly.rings) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point p = ring[i];
            const Point d = ring[(i + 1) % n] - p;
            // {r_lo < |x| < r_hi}: the inner disk is nested in the outer one.
            const double f = inside_param_length(p, d, window.hi()) - inside_param_length(p, d, window.lo());
            len += std::max(0.0, f) * norm(d);
        }
    }
    return len;
}

double area_in_disk(const MultiPolygon& poly, double r)
{
    if (!(r > 0.0))
        return 0.0;
    const double r2 = r * r;
    double total = 0.0;
    for (const auto& ring : poly.rings) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point p = ring[i];
            const Point q = ring[(i + 1) % n];
            const Point d = q - p;
            const double len2 = dot(d, d);
            // Split the edge where it crosses the circle; each piece is either
            // a chord triangle (inside) or a circular sector (outside).
            double cuts[4] = {0.0, 0.0, 0.0, 1.0};
            int k = 1;
            const double t_foot = -dot(p, d) / len2;
            const double h = r2 - cross(p, d) * cross(p, d) / len2;
            if (h > 0.0) {
                const double half = std::sqrt(h / len2);
                for (double t : {t_foot - half, t_foot + half})
                    if (t > 0.0 && t < 1.0)
                        cuts[k++] = t;
            }
            cuts[k++] = 1.0;
            for (int j = 0; j + 1 < k; ++j) {
                const Point a = p + cuts[j] * d;
                const Point b = p + cuts[j + 1] * d;
                const Point mid = 0.5 * (a + b);
                if (dot(mid, mid) < r2)
                    total += 0.5 * cross(a, b);
                else
                    total += 0.5 * r2 * std::atan2(cross(a, b), dot(a, b));
            }
        }
    }
    return total;
}

ArcSet circle_slice(const MultiPolygon& poly, double r)
{
    require_radius(r);
    return arcs_from_crossings(poly, r, circle_crossings(poly, r, poly.scale()));
}

SliceStats slice_stats(const MultiPolygon& poly, double r)
{
    require_radius(r);
    const auto xs = circle_crossings(poly, r, poly.scale());
    const ArcSet arcs = arcs_from_crossings(poly, r, xs);

    SliceStats stats;
    stats.radius = r;
    if (arcs.kind != SliceKind::Partial)
        return stats;
    if (xs.size() != 2 * arcs.intervals.size())
        throw Error(ErrorKind::TangencyUnresolved, "slice has coincident arc endpoints");

    stats.p = static_cast<int>(xs.size());
    for (const auto& x : xs) {
        const double len = norm(x.direction);
        SliceEndpoint ep;
        ep.angle = x.angle;
        ep.normal = {x.direction.y / len, -x.direction.x / len};
        const Point radial_dir = (1.0 / norm(x.at)) * x.at;
        const Point tangent_dir = {-radial_dir.y, radial_dir.x};
        ep.radial = dot(radial_dir, ep.normal);
        ep.tangential = std::abs(dot(tangent_dir, ep.normal));
        ep.ring = x.ring;
        ep.edge = x.edge;
        if (ep.tangential <= std::sqrt(kTangencyTol)) {
            std::ostringstream msg;
            msg << "edge " << x.edge << " of ring " << x.ring << " is tangent to the circle of radius " << r;
            throw Error(ErrorKind::TangencyUnresolved, msg.str());
        }
        stats.g += ep.radial / ep.tangential;
        stats.endpoints.push_back(ep);
    }
    return stats;
}

std::vector<double> critical_radii(const MultiPolygon& poly)
{
    std::vector<double> radii;
    for (const auto& ring : poly.rings) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point p = ring[i];
            const Point d = ring[(i + 1) % n] - p;
            radii.push_back(norm(p));
            const double t = -dot(p, d) / dot(d, d);
            if (t > 0.0 && t < 1.0)
                radii.push_back(norm(p + t * d));
        }
    }
    std::sort(radii.begin(), radii.end());
    const double tol = kCriticalDedupTol * std::max(poly.scale(), 1e-300);
    std::vector<double> out;
    for (double r : radii)
        if (out.empty() || r - out.back() > tol)
            out.push_back(r);
    return out;
}

} // namespace sphcap
