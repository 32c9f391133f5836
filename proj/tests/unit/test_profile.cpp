#include "sphcap/error.hpp"
#include "sphcap/parallel.hpp"
#include "sphcap/profile.hpp"
#include "sphcap/shapes.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace sphcap;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

RadialProfile from_csv(const std::string& text)
{
    std::istringstream in(text);
    return load_profile(in);
}

// Half-width of the arc cut from the circle of radius r by the disk of radius rho at distance c.
double lens_half_width(double r, double c, double rho) { return std::acos((r * r + c * c - rho * rho) / (2 * r * c)); }

} // namespace

TEST_CASE("grid splits at critical radii and respects the sample floor")
{
    const MultiPolygon sq = validate({{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}});
    const RadialGrid g = build_grid(sq, 16);
    REQUIRE(g.segments.size() == 2);
    CHECK(g.segments[0].lo == 0.0);
    CHECK(g.segments[0].hi == Approx(1.0));
    CHECK(g.segments[1].hi == Approx(std::sqrt(2.0)));
    CHECK(g.radii.size() == 32);
    for (std::size_t i = 0; i < g.radii.size(); ++i) {
        const auto& s = g.segments[g.segment_of[i]];
        CHECK(g.radii[i] > s.lo);
        CHECK(g.radii[i] < s.hi);
    }
    CHECK(kind_of([&] { build_grid(sq, 7); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("disk centered at the origin: full slices")
{
    const MultiPolygon disk = gen_disk({0, 0}, 1.0, 128);
    const RadialProfile prof = build_profile(disk, 64);
    const double inner = std::cos(kPi / 128);
    for (std::size_t i = 0; i < prof.size(); ++i) {
        const double r = prof.grid.radii[i];
        if (r < inner) {
            CHECK(prof.theta[i] == kPi / 2);
            CHECK(prof.v[i] == Approx(kTwoPi * r));
            CHECK(prof.arc_count[i] == 0);
        }
    }
    const auto d = theta_derivative(prof);
    for (std::size_t i = 0; i < prof.size(); ++i)
        if (prof.grid.radii[i] < inner)
            CHECK(std::abs(d[i]) < 1e-9);
}

TEST_CASE("half-disk: a quarter-turn cap on every inner circle")
{
    const MultiPolygon hd = gen_half_disk(1.0, 256);
    const RadialProfile prof = build_profile(hd, 64);
    const double inner = std::cos(kPi / 128);
    const auto d = theta_derivative(prof);
    for (std::size_t i = 0; i < prof.size(); ++i) {
        const double r = prof.grid.radii[i];
        if (r < inner) {
            CHECK(prof.theta[i] == Approx(kPi / 4).epsilon(1e-12));
            CHECK(prof.v[i] == Approx(kPi * r).epsilon(1e-12));
            CHECK(prof.arc_count[i] == 1);
            CHECK(prof.p[i] == 2);
            CHECK(std::abs(d[i]) < 1e-6);
        }
    }
}

TEST_CASE("two symmetric disks: two arcs, twice the lens width")
{
    const MultiPolygon two = gen_two_disks(2.0, 1.0, kPi, 2048);
    const RadialProfile prof = build_profile(two, 8);
    for (std::size_t i = 0; i < prof.size(); ++i) {
        const double r = prof.grid.radii[i];
        if (r < 1.01 || r > 2.99)
            continue;
        CHECK(prof.arc_count[i] == 2);
        CHECK(prof.v[i] == Approx(2.0 * 2.0 * r * lens_half_width(r, 2.0, 1.0)).epsilon(1e-4));
    }
}

TEST_CASE("theta' of an off-center disk matches the differentiated lens width")
{
    // theta(r) = arccos((r^2 + 3) / (4 r)) / 2 for the disk of radius 1 at distance 2.
    const MultiPolygon off = gen_disk({2, 0}, 1.0, 2048);
    const RadialProfile prof = build_profile(off, 9);
    const auto d = theta_derivative(prof);
    double worst = 0.0;
    int checked = 0;
    for (const auto& seg : prof.grid.segments) {
        const std::size_t i = seg.first + seg.count / 2; // mid-segment sample
        const double r = prof.grid.radii[i];
        if (r < 1.05 || r > 2.95)
            continue;
        const double u = (r * r + 3.0) / (4.0 * r);
        const double du = (r * r - 3.0) / (4.0 * r * r);
        const double exact = -0.5 * du / std::sqrt(1.0 - u * u);
        worst = std::max(worst, std::abs(d[i] - exact) / std::max(1.0, std::abs(exact)));
        ++checked;
    }
    CHECK(checked > 100);
    MESSAGE("max theta' deviation " << worst);
    CHECK(worst < 1e-4);
}

TEST_CASE("tv of |4 r D theta|")
{
    const RadialProfile disk = build_profile(gen_disk({0, 0}, 1.0, 256), 32);
    CHECK(tv_4r_dtheta(disk, {0.0, 2.0}) == Approx(kTwoPi).epsilon(1e-3));
    CHECK(tv_4r_dtheta(disk, {0.0, 0.99 * std::cos(kPi / 256)}) == 0.0);
    CHECK(tv_4r_dtheta(disk, {5.0, 6.0}) == 0.0);

    const RadialProfile hd = build_profile(gen_half_disk(1.0, 256), 32);
    CHECK(tv_4r_dtheta(hd, {0.0, 2.0}) == Approx(kPi).epsilon(1e-3));
}

TEST_CASE("declared jumps count when strictly inside the window")
{
    const RadialProfile prof = from_csv("r,v\n0.25,0.785398163\n0.5,1.570796327\n0.75,2.35619449\njump,1,0.785398163,0\n");
    REQUIRE(prof.jumps.size() == 1);
    CHECK(prof.jumps[0].theta_minus == Approx(kPi / 4));
    CHECK(tv_4r_dtheta(prof, {0.0, 2.0}) == Approx(kPi));
    CHECK(tv_4r_dtheta(prof, {0.0, 1.0}) < 1e-8); // nine-digit rounding of the rows only
}

TEST_CASE("gamma_measure")
{
    const RadialProfile hd = build_profile(gen_half_disk(1.0, 256), 64);
    const GammaSet g = gamma_measure(hd, {0.0, 2.0});
    CHECK(g.measure == Approx(1.0).epsilon(0.01));
    CHECK(g.intervals.size() == 1);

    CHECK(gamma_measure(build_profile(gen_two_disks(2.0, 1.0, kPi, 256), 32), {0.0, 4.0}).measure == 0.0);
    CHECK(gamma_measure(build_profile(gen_disk({0, 0}, 1.0, 256), 32), {0.0, 2.0}).measure <
          2.0 * (1.0 - std::cos(kPi / 256)));
}

TEST_CASE("gamma_measure is monotone and additive over windows")
{
    const RadialProfile prof = build_profile(generate(default_spec("tentacle")), 64);
    const double R = prof.r_max();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, R);
    for (int k = 0; k < 20; ++k) {
        double a = u(rng), b = u(rng);
        if (a > b)
            std::swap(a, b);
        const double left = gamma_measure(prof, {0.0, a}).measure;
        const double mid = gamma_measure(prof, {a, b}).measure;
        const double right = gamma_measure(prof, {b, 2 * R}).measure;
        const double whole = gamma_measure(prof, {0.0, 2 * R}).measure;
        CHECK(left + mid + right == Approx(whole).epsilon(1e-12));
        CHECK(gamma_measure(prof, {0.0, b}).measure >= left);
        CHECK(mid <= b - a + 1e-12);
    }
}

TEST_CASE("cumulative area agrees with polygon clipping")
{
    for (const auto& name : preset_names()) {
        const MultiPolygon p = generate(default_spec(name));
        const RadialProfile prof = build_profile(p, 64);
        CHECK(cumulative_area(prof, 0.0) == 0.0);
        for (int k = 1; k <= 8; ++k) {
            const double r = p.scale() * k / 8.0;
            const double exact = area_in_disk(p, r);
            CHECK(cumulative_area(prof, r) == Approx(exact).epsilon(1e-3).scale(1e-9));
        }
    }
    CHECK(cumulative_area(build_profile(gen_disk({0, 0}, 1.0, 512), 32), 1.0) == Approx(kPi).epsilon(5e-3));
    CHECK(cumulative_area(build_profile(gen_half_disk(1.0, 512), 32), 1.0) == Approx(kPi / 2).epsilon(5e-3));
}

TEST_CASE("doubling the samples barely moves tv, gamma and area")
{
    for (const auto& name : preset_names()) {
        const MultiPolygon p = generate(default_spec(name));
        const RadialProfile a = build_profile(p, 64);
        const RadialProfile b = build_profile(p, 128);
        const AnnulusWindow w(0.0, 1.05 * p.scale());
        CHECK(tv_4r_dtheta(a, w) == Approx(tv_4r_dtheta(b, w)).epsilon(0.01));
        CHECK(gamma_measure(a, w).measure == Approx(gamma_measure(b, w).measure).epsilon(0.01).scale(0.01));
        CHECK(cumulative_area(a, p.scale()) == Approx(cumulative_area(b, p.scale())).epsilon(0.01));
    }
}

TEST_CASE("profile does not depend on the thread count")
{
    const MultiPolygon p = generate(default_spec("three-disks"));
    set_thread_count(1);
    const RadialProfile one = build_profile(p, 32);
    set_thread_count(4);
    const RadialProfile four = build_profile(p, 32);
    set_thread_count(0);
    CHECK(one.theta == four.theta);
    CHECK(one.arc_count == four.arc_count);
}

TEST_CASE("profile CSV loading")
{
    const RadialProfile hd = from_csv("r,v\n0.25,0.785398163\n0.5,1.570796327\n0.75,2.35619449\n");
    for (double t : hd.theta)
        CHECK(t == Approx(kPi / 4));
    CHECK(hd.arc_count[0] == 1);

    const RadialProfile counted = from_csv("r,v,arc_count\n1,1,3\n2,1,2\n");
    CHECK(counted.arc_count == std::vector<int>{3, 2});
    CHECK(counted.p == std::vector<int>{6, 4});

    CHECK(kind_of([] { from_csv("r,v\n1,7\n"); }) == ErrorKind::RangeViolation);
    CHECK(kind_of([] { from_csv("v,r\n1,1\n"); }) == ErrorKind::MalformedProfile);
    CHECK(kind_of([] { from_csv("r,v\n1,1\n1,1\n"); }) == ErrorKind::MalformedProfile);
    CHECK(kind_of([] { from_csv("r,v\n1,abc\n"); }) == ErrorKind::MalformedProfile);
    CHECK(kind_of([] { from_csv("r,v\n"); }) == ErrorKind::MalformedProfile);
    CHECK(kind_of([] { from_csv("r,v\n1,1\njump,1,0.5,0\n"); }) == ErrorKind::MalformedProfile);
    CHECK(kind_of([] { from_csv("r,v\n1,1\njump,2,2,0\n"); }) == ErrorKind::RangeViolation);
}

TEST_CASE("profile CSV round trip")
{
    const RadialProfile orig = build_profile(generate(default_spec("tentacle")), 32);
    std::stringstream buf;
    write_profile_csv(orig, buf);
    const RadialProfile back = load_profile(buf);
    REQUIRE(back.size() == orig.size());
    for (std::size_t i = 0; i < orig.size(); ++i) {
        CHECK(back.theta[i] == Approx(orig.theta[i]).epsilon(1e-8));
        CHECK(back.arc_count[i] == orig.arc_count[i]);
    }
    const AnnulusWindow w(0.0, 10.0);
    CHECK(tv_4r_dtheta(back, w) == Approx(tv_4r_dtheta(orig, w)).epsilon(1e-7));
    CHECK(gamma_measure(back, w).measure == Approx(gamma_measure(orig, w).measure).epsilon(1e-7));
}
