#include "sphcap/profile.hpp"

#include "sphcap/error.hpp"
#include "sphcap/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <charconv>
#include <climits>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sphcap {

namespace {

    constexpr double kSegmentSkipTol = 1e-9; // relative to scale
    constexpr double kProbeOffset = 1e-8;    // relative to scale
    constexpr double kRangeSlack = 1e-8;     // relative, for loaded v <= 2 pi r

    double theta_from_slice(const ArcSet& arcs)
    {
        switch (arcs.kind) {
        case SliceKind::Empty: return 0.0;
        case SliceKind::Full: return kHalfPi;
        case SliceKind::Partial: break;
        }
        return std::clamp(arcs.length() / (4.0 * arcs.radius), 0.0, kHalfPi);
    }

    std::string trim(std::string s)
    {
        const auto not_space = [](unsigned char c) { return !std::isspace(c); };
        s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
        s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
        return s;
    }

    std::vector<std::string> split_csv(const std::string& line)
    {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(trim(field));
        return fields;
    }

    double parse_number(const std::string& text, std::size_t line_no)
    {
        double value = 0.0;
        const auto* first = text.data();
        const auto* last = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
            std::ostringstream msg;
            msg << "line " << line_no << ": '" << text << "' is not a finite number";
            throw Error(ErrorKind::MalformedProfile, msg.str());
        }
        return value;
    }

} // namespace

double RadialProfile::r_max() const
{
    double r = grid.radii.empty() ? 0.0 : grid.radii.back();
    for (const auto& j : jumps)
        r = std::max(r, j.r);
    return r;
}

std::vector<ProfileStation> profile_stations(const RadialProfile& profile)
{
    std::vector<ProfileStation> out;
    out.reserve(profile.size() + 2 * profile.jumps.size() + 1);
    auto link = [&] { return out.empty() ? ProfileStation::Link::Start : ProfileStation::Link::Chord; };

    std::size_t j = 0;
    const auto& jumps = profile.jumps;
    for (std::size_t i = 0; i <= profile.size(); ++i) {
        const double r = i < profile.size() ? profile.grid.radii[i] : INFINITY;
        for (; j < jumps.size() && jumps[j].r < r; ++j) {
            const int p_before = i > 0 ? profile.p[i - 1] : 0;
            const int p_after = i < profile.size() ? profile.p[i] : 0;
            out.push_back({jumps[j].r, jumps[j].theta_minus, p_before, link()});
            out.push_back({jumps[j].r, jumps[j].theta_plus, p_after, ProfileStation::Link::Jump});
        }
        if (i < profile.size())
            out.push_back({r, profile.theta[i], profile.p[i], link()});
    }
    if (!out.empty() && out.back().theta > 0.0)
        out.push_back({out.back().r, 0.0, 0, ProfileStation::Link::Jump});
    return out;
}

RadialGrid build_grid(const MultiPolygon& poly, int samples_per_segment)
{
    if (samples_per_segment < kMinSamplesPerSegment)
        throw Error(ErrorKind::InvalidParameter, "samples per segment must be at least 8");
    const double scale = poly.scale();
    const double skip = kSegmentSkipTol * scale;

    std::vector<double> breaks{0.0};
    for (double c : critical_radii(poly))
        if (c - breaks.back() > skip)
            breaks.push_back(c);

    RadialGrid grid;
    const auto n = static_cast<std::size_t>(samples_per_segment);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double lo = breaks[k];
        const double hi = breaks[k + 1];
        const double step = (hi - lo) / static_cast<double>(n - 1);
        const double probe = std::min(kProbeOffset * scale, 0.25 * step);
        RadialSegment seg{lo, hi, grid.radii.size(), n};
        for (std::size_t i = 0; i < n; ++i) {
            double r = lo + step * static_cast<double>(i);
            if (i == 0)
                r = lo + probe;
            else if (i + 1 == n)
                r = hi - probe;
            grid.radii.push_back(r);
            grid.segment_of.push_back(grid.segments.size());
        }
        grid.segments.push_back(seg);
    }
    return grid;
}

RadialProfile build_profile(const MultiPolygon& poly, int samples_per_segment)
{
    RadialProfile prof;
    prof.grid = build_grid(poly, samples_per_segment);
    prof.from_polygon = true;
    prof.scale = poly.scale();

    const std::size_t n = prof.grid.radii.size();
    prof.v.assign(n, 0.0);
    prof.theta.assign(n, 0.0);
    prof.arc_count.assign(n, 0);
    prof.p.assign(n, 0);

    const std::vector<double> base = prof.grid.radii;
    auto& radii = prof.grid.radii;
    parallel_for(n, [&](std::size_t i) {
        ArcSet arcs;
        try {
            arcs = circle_slice(poly, base[i]);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TangencyUnresolved)
                throw;
            // One retry, pushed toward the neighbouring sample of the same segment.
            const auto& seg = prof.grid.segments[prof.grid.segment_of[i]];
            const std::size_t local = i - seg.first;
            const std::size_t nb = local + 1 < seg.count ? i + 1 : i - 1;
            const double gap = base[nb] - base[i];
            radii[i] = base[i] + 1e-3 * gap;
            arcs = circle_slice(poly, radii[i]);
        }
        prof.v[i] = arcs.kind == SliceKind::Full ? kTwoPi * radii[i] : arcs.length();
        prof.theta[i] = theta_from_slice(arcs);
        prof.arc_count[i] = arcs.arc_count();
        prof.p[i] = 2 * prof.arc_count[i];
    });
    return prof;
}

std::vector<double> theta_derivative(const RadialProfile& profile)
{
    const auto& x = profile.grid.radii;
    const auto& f = profile.theta;
    std::vector<double> d(profile.size(), 0.0);
    for (const auto& seg : profile.grid.segments) {
        const std::size_t a = seg.first;
        const std::size_t m = seg.count;
        if (m == 2)
            d[a] = d[a + 1] = (f[a + 1] - f[a]) / (x[a + 1] - x[a]);
        if (m < 3)
            continue;
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t c = a + std::clamp<std::size_t>(k, 1, m - 2);
            const double h1 = x[c] - x[c - 1];
            const double h2 = x[c + 1] - x[c];
            const double f0 = f[c - 1], f1 = f[c], f2 = f[c + 1];
            if (k == 0) {
                d[a] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f0 + (h1 + h2) / (h1 * h2) * f1 - h1 / (h2 * (h1 + h2)) * f2;
            } else if (k == m - 1) {
                d[a + k] = h2 / (h1 * (h1 + h2)) * f0 - (h1 + h2) / (h1 * h2) * f1 + (2 * h2 + h1) / (h2 * (h1 + h2)) * f2;
            } else {
                d[c] = -h2 / (h1 * (h1 + h2)) * f0 + (h2 - h1) / (h1 * h2) * f1 + h1 / (h2 * (h1 + h2)) * f2;
            }
        }
    }
    return d;
}

double tv_4r_dtheta(const RadialProfile& profile, const AnnulusWindow& window)
{
    const auto st = profile_stations(profile);
    double tv = 0.0;
    for (std::size_t k = 1; k < st.size(); ++k) {
        const auto& a = st[k - 1];
        const auto& b = st[k];
        const double jump = 2.0 * (a.r + b.r) * std::abs(b.theta - a.theta);
        if (b.link == ProfileStation::Link::Jump) {
            if (window.contains(b.r))
                tv += jump;
        } else if (b.r > a.r) {
            tv += jump * window.overlap(a.r, b.r) / (b.r - a.r);
        }
    }
    return tv;
}

GammaSet radii_with_arcs(const RadialProfile& profile, const AnnulusWindow& window, int min_arcs, int max_arcs)
{
    GammaSet out;
    const auto& r = profile.grid.radii;
    for (const auto& seg : profile.grid.segments) {
        bool open = false;
        double run_lo = 0.0;
        auto close = [&](double hi) {
            const double lo = std::max(run_lo, window.lo());
            const double top = std::min(hi, window.hi());
            if (top > lo) {
                out.intervals.push_back({lo, top});
                out.measure += top - lo;
            }
            open = false;
        };
        for (std::size_t k = 0; k < seg.count; ++k) {
            const std::size_t i = seg.first + k;
            const double left = k == 0 ? seg.lo : 0.5 * (r[i - 1] + r[i]);
            const bool hit = profile.partial(i) && profile.arc_count[i] >= min_arcs && profile.arc_count[i] <= max_arcs;
            if (hit && !open) {
                open = true;
                run_lo = left;
            } else if (!hit && open) {
                close(left);
            }
        }
        if (open)
            close(seg.hi);
    }
    return out;
}

GammaSet gamma_measure(const RadialProfile& profile, const AnnulusWindow& window)
{
    return radii_with_arcs(profile, window, 1, 1);
}

double cumulative_area(const RadialProfile& profile, double r)
{
    if (!(r > 0.0))
        return 0.0;
    double area = 0.0;
    double r0 = 0.0, v0 = 0.0;
    for (const auto& s : profile_stations(profile)) {
        const double v1 = 4.0 * s.r * s.theta;
        if (s.r > r0) {
            if (r <= s.r) {
                const double vr = v0 + (v1 - v0) * (r - r0) / (s.r - r0);
                return area + 0.5 * (v0 + vr) * (r - r0);
            }
            area += 0.5 * (v0 + v1) * (s.r - r0);
        }
        r0 = s.r;
        v0 = v1;
    }
    return area;
}

double theta_at(const RadialProfile& profile, double r)
{
    const auto st = profile_stations(profile);
    if (st.empty() || r > st.back().r)
        return 0.0;
    if (r <= st.front().r)
        return st.front().theta;
    for (std::size_t k = 1; k < st.size(); ++k) {
        const auto& a = st[k - 1];
        const auto& b = st[k];
        if (r <= b.r && b.r > a.r)
            return a.theta + (b.theta - a.theta) * (r - a.r) / (b.r - a.r);
    }
    return 0.0;
}

RadialProfile load_profile(std::istream& in)
{
    RadialProfile prof;
    std::string line;
    std::size_t line_no = 0;
    int r_col = -1, v_col = -1, arcs_col = -1;
    std::size_t columns = 0;
    std::vector<double> rs, vs;
    std::vector<int> arcs;

    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto fields = split_csv(line);
        if (r_col < 0) {
            columns = fields.size();
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (fields[c] == "r")
                    r_col = static_cast<int>(c);
                else if (fields[c] == "v")
                    v_col = static_cast<int>(c);
                else if (fields[c] == "arc_count")
                    arcs_col = static_cast<int>(c);
            }
            if (r_col != 0 || v_col != 1)
                throw Error(ErrorKind::MalformedProfile, "profile header must start with 'r,v'");
            continue;
        }
        if (fields[0] == "jump") {
            if (fields.size() != 4)
                throw Error(ErrorKind::MalformedProfile,
                            "line " + std::to_string(line_no) + ": jump rows are 'jump,r,theta_minus,theta_plus'");
            ProfileJump j{parse_number(fields[1], line_no), parse_number(fields[2], line_no),
                          parse_number(fields[3], line_no)};
            if (!(j.r > 0.0))
                throw Error(ErrorKind::MalformedProfile, "line " + std::to_string(line_no) + ": jump radius must be positive");
            for (double t : {j.theta_minus, j.theta_plus})
                if (t < 0.0 || t > kHalfPi * (1.0 + kRangeSlack))
                    throw Error(ErrorKind::RangeViolation,
                                "line " + std::to_string(line_no) + ": jump angle outside [0, pi/2]");
            j.theta_minus = std::min(j.theta_minus, kHalfPi);
            j.theta_plus = std::min(j.theta_plus, kHalfPi);
            prof.jumps.push_back(j);
            continue;
        }
        if (fields.size() != columns)
            throw Error(ErrorKind::MalformedProfile, "line " + std::to_string(line_no) + ": wrong number of fields");
        const double r = parse_number(fields[0], line_no);
        const double v = parse_number(fields[1], line_no);
        if (!(r > 0.0) || (!rs.empty() && r <= rs.back()))
            throw Error(ErrorKind::MalformedProfile,
                        "line " + std::to_string(line_no) + ": radii must be positive and strictly increasing");
        if (v < 0.0 || v > kTwoPi * r * (1.0 + kRangeSlack))
            throw Error(ErrorKind::RangeViolation, "line " + std::to_string(line_no) + ": v outside [0, 2 pi r]");
        rs.push_back(r);
        vs.push_back(std::min(v, kTwoPi * r));
        arcs.push_back(arcs_col >= 0 ? static_cast<int>(parse_number(fields[arcs_col], line_no)) : -1);
    }
    if (rs.empty())
        throw Error(ErrorKind::MalformedProfile, "profile has no sample rows");

    std::sort(prof.jumps.begin(), prof.jumps.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
    for (std::size_t k = 1; k < prof.jumps.size(); ++k)
        if (prof.jumps[k].r == prof.jumps[k - 1].r)
            throw Error(ErrorKind::MalformedProfile, "two jumps declared at the same radius");
    for (const auto& j : prof.jumps)
        if (std::binary_search(rs.begin(), rs.end(), j.r))
            throw Error(ErrorKind::MalformedProfile, "a sample row coincides with a jump radius");

    // Segments are delimited by the declared jumps.
    std::vector<double> breaks{0.0};
    for (const auto& j : prof.jumps)
        breaks.push_back(j.r);
    breaks.push_back(std::max(rs.back(), breaks.back()) * (1.0 + 1e-12) + 1e-300);

    std::size_t i = 0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        RadialSegment seg{breaks[k], k + 2 == breaks.size() ? rs.back() : breaks[k + 1], i, 0};
        while (i < rs.size() && rs[i] < breaks[k + 1]) {
            prof.grid.radii.push_back(rs[i]);
            prof.grid.segment_of.push_back(prof.grid.segments.size());
            ++seg.count;
            ++i;
        }
        if (seg.count > 0)
            prof.grid.segments.push_back(seg);
    }

    for (std::size_t s = 0; s < rs.size(); ++s) {
        const double r = rs[s];
        double theta = std::clamp(vs[s] / (4.0 * r), 0.0, kHalfPi);
        if (theta < kFullSliceTol)
            theta = 0.0;
        if (kHalfPi - theta < kFullSliceTol)
            theta = kHalfPi;
        prof.v.push_back(vs[s]);
        prof.theta.push_back(theta);
        const bool partial = theta > 0.0 && theta < kHalfPi;
        // Without an arc_count column a partial slice is read as one arc.
        const int count = partial ? (arcs[s] >= 0 ? arcs[s] : 1) : 0;
        prof.arc_count.push_back(count);
        prof.p.push_back(2 * count);
    }
    prof.scale = prof.r_max();
    return prof;
}

RadialProfile load_profile_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open profile '" + path + "'");
    return load_profile(in);
}

void write_profile_csv(const RadialProfile& profile, std::ostream& out)
{
    out << std::setprecision(9);
    out << "r,v,theta,arc_count,p\n";
    for (std::size_t i = 0; i < profile.size(); ++i)
        out << profile.grid.radii[i] << ',' << profile.v[i] << ',' << profile.theta[i] << ',' << profile.arc_count[i]
            << ',' << profile.p[i] << '\n';
    for (const auto& j : profile.jumps)
        out << "jump," << j.r << ',' << j.theta_minus << ',' << j.theta_plus << '\n';
}

} // namespace sphcap
