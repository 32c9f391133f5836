#include "sphcap/rearrangement.hpp"

#include "sphcap/error.hpp"

#include <algorithm>
#include <cassert>

namespace sphcap {

namespace {

    bool partial(double theta) { return theta > 0.0 && theta < kHalfPi; }

    double snap(double theta)
    {
        theta = std::clamp(theta, 0.0, kHalfPi);
        if (theta < kSnapTol)
            return 0.0;
        if (kHalfPi - theta < kSnapTol)
            return kHalfPi;
        return theta;
    }

    enum class Anchor { None, XAxis, YAxis };

    Anchor anchor_of(double theta)
    {
        if (theta == 0.0)
            return Anchor::XAxis;
        if (theta == kHalfPi)
            return Anchor::YAxis;
        return Anchor::None;
    }

    struct PolarPoint {
        double r;
        double phi;
        bool jump; ///< joined to the previous point along the circle
    };

    template <typename F>
    void for_each_link(const std::vector<ProfileStation>& st, F&& f)
    {
        for (std::size_t k = 1; k < st.size(); ++k)
            f(st[k - 1], st[k]);
    }

    // First-quadrant polyline of one boundary run, with circular links expanded.
    Ring quadrant_polyline(const std::vector<PolarPoint>& run, int angular_steps, double scale)
    {
        Ring out;
        auto emit = [&](double r, double phi) {
            if (phi == 0.0)
                out.push_back({r, 0.0});
            else if (phi == kHalfPi)
                out.push_back({0.0, r});
            else
                out.push_back({r * std::cos(phi), r * std::sin(phi)});
        };
        for (std::size_t k = 0; k < run.size(); ++k) {
            const auto& b = run[k];
            if (k > 0 && b.jump) {
                const auto& a = run[k - 1];
                const double dphi = b.phi - a.phi;
                if (b.r * std::abs(dphi) > 1e-9 * scale) {
                    const int m = static_cast<int>(std::floor(angular_steps * std::abs(dphi) / kTwoPi));
                    for (int j = 1; j <= m; ++j)
                        emit(b.r, a.phi + dphi * j / (m + 1));
                }
            }
            emit(b.r, b.phi);
        }
        return out;
    }

    void append(Ring& ring, const Ring& part, bool reversed, Point (*mirror)(Point))
    {
        auto push = [&](Point p) {
            p = mirror(p);
            if (ring.empty() || !(ring.back() == p))
                ring.push_back(p);
        };
        if (reversed)
            for (auto it = part.rbegin(); it != part.rend(); ++it)
                push(*it);
        else
            for (const auto& p : part)
                push(p);
    }

    Point q1(Point p) { return p; }
    Point q2(Point p) { return {-p.x, p.y}; }
    Point q3(Point p) { return {-p.x, -p.y}; }
    Point q4(Point p) { return {p.x, -p.y}; }

    void close_ring(Ring& ring, std::vector<Ring>& out)
    {
        while (ring.size() > 1 && ring.front() == ring.back())
            ring.pop_back();
        if (ring.size() >= 3 && ring_signed_area(ring) != 0.0)
            out.push_back(std::move(ring));
    }

} // namespace

std::vector<Point> DoubleCap::endpoints() const
{
    if (endpoint_count() == 0)
        return {};
    const double c = radius * std::cos(theta);
    const double s = radius * std::sin(theta);
    return {{c, s}, {-c, s}, {-c, -s}, {c, -s}};
}

ArcSet DoubleCap::arcs() const
{
    ArcSet a;
    a.radius = radius;
    if (theta >= kHalfPi) {
        a.kind = SliceKind::Full;
        a.intervals = {{0.0, kTwoPi}};
    } else if (theta > 0.0) {
        a.kind = SliceKind::Partial;
        a.intervals = {{std::numbers::pi - theta, std::numbers::pi + theta}, {kTwoPi - theta, kTwoPi + theta}};
    }
    return a;
}

DoubleCap double_cap(double r, double theta)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorKind::InvalidParameter, "double cap radius must be positive");
    if (!(theta >= 0.0 && theta <= kHalfPi))
        throw Error(ErrorKind::InvalidParameter, "double cap angle must lie in [0, pi/2]");
    return {r, theta};
}

RearrangedSet::RearrangedSet(RadialProfile profile) : profile_(std::move(profile))
{
    for (auto& t : profile_.theta)
        t = snap(t);
    for (auto& j : profile_.jumps) {
        j.theta_minus = snap(j.theta_minus);
        j.theta_plus = snap(j.theta_plus);
    }
    for (std::size_t i = 0; i < profile_.size(); ++i)
        profile_.v[i] = 4.0 * profile_.grid.radii[i] * profile_.theta[i];
    stations_ = profile_stations(profile_);
    // Below the first sample theta_at() holds theta constant, so the set is a
    // cone down to the origin; give it a station so its radial edges count.
    if (!stations_.empty() && stations_.front().r > 0.0) {
        ProfileStation apex = stations_.front();
        apex.r = 0.0;
        stations_.front().link = ProfileStation::Link::Chord;
        stations_.insert(stations_.begin(), apex);
    }
}

RearrangedSet rearrange(const RadialProfile& profile) { return RearrangedSet(profile); }

double perimeter_rearranged(const RearrangedSet& rset, const AnnulusWindow& window)
{
    double total = 0.0;
    for_each_link(rset.stations(), [&](const ProfileStation& a, const ProfileStation& b) {
        const double arc = 2.0 * (a.r + b.r) * std::abs(b.theta - a.theta);
        if (b.link == ProfileStation::Link::Jump) {
            if (window.contains(b.r))
                total += arc;
            return;
        }
        const double dr = b.r - a.r;
        if (dr <= 0.0)
            return;
        const double p = partial(a.theta) && partial(b.theta) ? 4.0 : 0.0;
        total += std::hypot(p * dr, arc) * window.overlap(a.r, b.r) / dr;
    });
    const double check = perimeter_rearranged_parametric(rset, window);
    assert(std::abs(total - check) <= 1e-12 * std::max(1.0, total));
    (void)check;
    return total;
}

double perimeter_rearranged_parametric(const RearrangedSet& rset, const AnnulusWindow& window)
{
    double total = 0.0;
    for_each_link(rset.stations(), [&](const ProfileStation& a, const ProfileStation& b) {
        const double mid = 0.5 * (a.r + b.r);
        const double dtheta = std::abs(b.theta - a.theta);
        if (b.link == ProfileStation::Link::Jump) {
            if (window.contains(b.r))
                total += 4.0 * mid * dtheta;
            return;
        }
        const double dr = b.r - a.r;
        if (dr <= 0.0)
            return;
        const double branch = partial(a.theta) && partial(b.theta) ? 4.0 * std::hypot(dr, mid * dtheta)
                                                                   : 4.0 * mid * dtheta;
        total += branch * window.overlap(a.r, b.r) / dr;
    });
    return total;
}

double rearranged_endpoint_integral(const RearrangedSet& rset, const AnnulusWindow& window)
{
    double total = 0.0;
    for_each_link(rset.stations(), [&](const ProfileStation& a, const ProfileStation& b) {
        if (b.link != ProfileStation::Link::Jump && partial(a.theta) && partial(b.theta))
            total += 4.0 * window.overlap(a.r, b.r);
    });
    return total;
}

ArcSet slice_of_rearranged(const RearrangedSet& rset, double r)
{
    return double_cap(r, snap(theta_at(rset.profile(), r))).arcs();
}

MultiPolygon rasterize(const RearrangedSet& rset, int angular_steps)
{
    if (angular_steps < 4)
        throw Error(ErrorKind::InvalidParameter, "angular steps must be at least 4");
    const auto& st = rset.stations();
    const double scale = std::max(rset.profile().scale, rset.profile().r_max());

    // The cone below the first sample is cut off at that radius: tracing it to
    // the origin would make the two lobes of the set touch there.
    const auto first = std::find_if(st.begin(), st.end(), [](const auto& s) { return s.r > 0.0; });
    std::vector<PolarPoint> graph;
    graph.reserve(st.size() + 1);
    if (first != st.end() && partial(first->theta))
        graph.push_back({first->r, 0.0, false});
    for (auto s = first; s != st.end(); ++s)
        graph.push_back(
            {s->r, s->theta, s->link == ProfileStation::Link::Jump || (!graph.empty() && graph.back().r == s->r)});

    std::vector<Ring> rings;
    auto finish = [&](std::vector<PolarPoint>& run) {
        const Anchor first = anchor_of(run.front().phi);
        const Anchor last = anchor_of(run.back().phi);
        assert(first != Anchor::None && last != Anchor::None);
        if (run.size() < 3 && first == last)
            return;
        if (first == Anchor::YAxis && last == Anchor::XAxis) {
            std::reverse(run.begin(), run.end());
            // The jump flag belongs to the later point of each pair.
            for (std::size_t k = run.size(); k-- > 1;)
                run[k].jump = run[k - 1].jump;
            run.front().jump = false;
        }
        const Ring quad = quadrant_polyline(run, angular_steps, scale);
        if (first == last) {
            const bool on_x = first == Anchor::XAxis;
            Ring a, b;
            append(a, quad, false, q1);
            append(a, quad, true, on_x ? q4 : q2);
            append(b, quad, false, on_x ? q2 : q4);
            append(b, quad, true, q3);
            close_ring(a, rings);
            close_ring(b, rings);
        } else {
            Ring a;
            append(a, quad, false, q1);
            append(a, quad, true, q2);
            append(a, quad, false, q3);
            append(a, quad, true, q4);
            close_ring(a, rings);
        }
    };

    std::vector<PolarPoint> run;
    for (const auto& pt : graph) {
        const bool is_anchor = anchor_of(pt.phi) != Anchor::None;
        if (!run.empty())
            run.push_back(pt);
        if (is_anchor) {
            if (run.size() >= 2)
                finish(run);
            run.assign(1, pt);
        }
    }

    if (rings.empty())
        throw Error(ErrorKind::DegenerateOutput, "rearranged set has no boundary to trace");
    try {
        return validate(MultiPolygon{std::move(rings)});
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ZeroArea || e.kind() == ErrorKind::DegenerateRing)
            throw Error(ErrorKind::DegenerateOutput, e.what());
        throw;
    }
}

} // namespace sphcap
