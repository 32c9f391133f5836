#include "sphcap/shapes.hpp"

#include "sphcap/error.hpp"

#include <algorithm>
#include <numbers>
#include <optional>

namespace sphcap {

namespace {

    constexpr double kPi = std::numbers::pi;

    void require(bool ok, ErrorKind kind, const char* what)
    {
        if (!ok)
            throw Error(kind, what);
    }

    Ring disk_ring(Point center, double radius, int n)
    {
        Ring ring;
        ring.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double a = kTwoPi * k / n;
            ring.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
        }
        return ring;
    }

    Ring rotated(const Ring& ring, double angle)
    {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        Ring out;
        out.reserve(ring.size());
        for (const auto& p : ring)
            out.push_back({c * p.x - s * p.y, s * p.x + c * p.y});
        return out;
    }

    // Point where the horizontal line y = level leaves the convex ring on the
    // side sign(x) = side.
    Point junction(const Ring& ball, double level, double side)
    {
        const std::size_t n = ball.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point a = ball[i];
            const Point b = ball[(i + 1) % n];
            if ((a.y - level) * (b.y - level) > 0.0 || a.y == b.y)
                continue;
            const double t = (level - a.y) / (b.y - a.y);
            const Point x{a.x + t * (b.x - a.x), level};
            if (x.x * side > 0.0)
                return x;
        }
        throw Error(ErrorKind::InfeasibleParameters, "tentacle does not meet the ball");
    }

    double param(const ShapeSpec& spec, const std::string& key)
    {
        const auto it = spec.parameters.find(key);
        if (it == spec.parameters.end())
            throw Error(ErrorKind::InvalidParameter, "shape '" + spec.name + "' needs parameter '" + key + "'");
        return it->second;
    }

} // namespace

MultiPolygon gen_disk(Point center, double radius, int n)
{
    require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidParameter, "disk radius must be positive");
    require(n >= 16, ErrorKind::InvalidParameter, "disk needs at least 16 vertices");
    return validate(MultiPolygon{{disk_ring(center, radius, n)}});
}

MultiPolygon gen_half_disk(double radius, int n)
{
    require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidParameter, "half-disk radius must be positive");
    require(n >= 4 && n % 2 == 0, ErrorKind::InvalidParameter, "half-disk needs an even vertex budget of at least 4");
    const int chords = n / 2;
    Ring ring;
    for (int k = 0; k <= chords; ++k) {
        const double a = -kPi / 2 + kPi * k / chords;
        // Exact end points on the diameter.
        if (k == 0)
            ring.push_back({0.0, -radius});
        else if (k == chords)
            ring.push_back({0.0, radius});
        else
            ring.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    ring.push_back({0.0, 0.0});
    return validate(MultiPolygon{{ring}});
}

MultiPolygon gen_tentacle_set(double ball_r, double len_long, double len_short, double width_long, int n,
                              TentacleLayout* layout)
{
    require(ball_r > 0.0 && len_long > 0.0 && len_short > 0.0 && width_long > 0.0, ErrorKind::InvalidParameter,
            "tentacle set dimensions must be positive");
    require(n >= 16, ErrorKind::InvalidParameter, "tentacle ball needs at least 16 vertices");
    const double width_short = len_long * width_long / len_short;
    // The junction must cross ball edges, not the extreme vertices at y = +-r.
    const double max_width = 2.0 * ball_r * std::sin(kTwoPi / n * std::floor(n / 4.0));
    require(width_long < max_width && width_short < max_width, ErrorKind::InfeasibleParameters,
            "tentacle width exceeds the ball diameter");

    const Ring ball = disk_ring({0.0, 0.0}, ball_r, n);
    const Point rb = junction(ball, -width_long / 2, 1.0);
    const Point rt = junction(ball, width_long / 2, 1.0);
    const Point lt = junction(ball, width_short / 2, -1.0);
    const Point lb = junction(ball, -width_short / 2, -1.0);
    const double x_right = ball_r + len_long;
    const double x_left = -(ball_r + len_short);

    const double a_rt = polar_angle(rt), a_lt = polar_angle(lt), a_lb = polar_angle(lb), a_rb = polar_angle(rb);
    Ring ring{rb, {x_right, -width_long / 2}, {x_right, width_long / 2}, rt};
    for (const auto& v : ball) {
        const double a = polar_angle(v);
        if (a > a_rt && a < a_lt)
            ring.push_back(v);
    }
    ring.insert(ring.end(), {lt, {x_left, width_short / 2}, {x_left, -width_short / 2}, lb});
    for (const auto& v : ball) {
        const double a = polar_angle(v);
        if (a > a_lb && a < a_rb)
            ring.push_back(v);
    }

    MultiPolygon poly = validate(MultiPolygon{{ring}});
    const Point c = barycenter(poly);
    if (layout) {
        layout->width_short = width_short;
        layout->area_long = len_long * width_long;
        layout->area_short = len_short * width_short;
        layout->ball_center = Point{0.0, 0.0} - c;
    }
    return validate(recenter(poly, c));
}

MultiPolygon gen_two_disks(double distance, double radius, double angle_offset, int n)
{
    require(radius > 0.0 && distance > 0.0, ErrorKind::InvalidParameter, "disk distance and radius must be positive");
    require(n >= 16, ErrorKind::InvalidParameter, "disks need at least 16 vertices");
    const double separation = 2.0 * distance * std::abs(std::sin(angle_offset / 2));
    require(radius < distance && separation > 2.0 * radius, ErrorKind::Overlap, "disks overlap");
    const Ring first = disk_ring({distance, 0.0}, radius, n);
    return validate(MultiPolygon{{first, rotated(first, angle_offset)}});
}

MultiPolygon gen_three_disks(double distance, double radius, int n)
{
    require(radius > 0.0 && distance > 0.0, ErrorKind::InvalidParameter, "disk distance and radius must be positive");
    require(n >= 16, ErrorKind::InvalidParameter, "disks need at least 16 vertices");
    require(radius < distance && distance * std::sqrt(3.0) > 2.0 * radius, ErrorKind::Overlap, "disks overlap");
    const Ring first = disk_ring({distance, 0.0}, radius, n);
    return validate(MultiPolygon{{first, rotated(first, kTwoPi / 3), rotated(first, 2 * kTwoPi / 3)}});
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"disk", "half-disk", "two-disks", "two-disks-asym", "three-disks",
                                                "tentacle"};
    return names;
}

ShapeSpec default_spec(const std::string& name)
{
    if (name == "disk")
        return {name, {{"center_x", 0.0}, {"center_y", 0.0}, {"radius", 1.0}}, 256};
    if (name == "half-disk")
        return {name, {{"radius", 1.0}}, 256};
    if (name == "two-disks")
        return {name, {{"distance", 2.0}, {"radius", 0.5}, {"angle_offset", kPi}}, 128};
    if (name == "two-disks-asym")
        return {name, {{"distance", 2.0}, {"radius", 0.5}, {"angle_offset", 1.7}}, 128};
    if (name == "three-disks")
        return {name, {{"distance", 2.0}, {"radius", 0.5}}, 128};
    if (name == "tentacle")
        return {name, {{"ball_radius", 1.0}, {"len_long", 4.0}, {"len_short", 2.0}, {"width_long", 0.1}}, 128};
    throw Error(ErrorKind::InvalidParameter, "unknown shape preset '" + name + "'");
}

MultiPolygon generate(const ShapeSpec& spec)
{
    const int n = spec.resolution;
    if (spec.name == "disk")
        return gen_disk({param(spec, "center_x"), param(spec, "center_y")}, param(spec, "radius"), n);
    if (spec.name == "half-disk")
        return gen_half_disk(param(spec, "radius"), n);
    if (spec.name == "two-disks" || spec.name == "two-disks-asym")
        return gen_two_disks(param(spec, "distance"), param(spec, "radius"), param(spec, "angle_offset"), n);
    if (spec.name == "three-disks")
        return gen_three_disks(param(spec, "distance"), param(spec, "radius"), n);
    if (spec.name == "tentacle")
        return gen_tentacle_set(param(spec, "ball_radius"), param(spec, "len_long"), param(spec, "len_short"),
                                param(spec, "width_long"), n);
    throw Error(ErrorKind::InvalidParameter, "unknown shape preset '" + spec.name + "'");
}

} // namespace sphcap
