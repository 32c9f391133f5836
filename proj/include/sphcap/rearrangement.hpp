#pragma once

#include "sphcap/geometry.hpp"
#include "sphcap/profile.hpp"

#include <vector>

namespace sphcap {

inline constexpr double kSnapTol = 1e-9; // radians
inline constexpr int kDefaultAngularSteps = 1024;

/// Two arcs of the circle of radius r, of half-width theta, centred on the
/// angles 0 and pi.
struct DoubleCap {
    double radius = 0.0;
    double theta = 0.0;

    double arc_length() const { return 4.0 * radius * theta; }
    int endpoint_count() const { return theta > 0.0 && theta < kHalfPi ? 4 : 0; }
    std::vector<Point> endpoints() const;
    ArcSet arcs() const;
};

DoubleCap double_cap(double r, double theta);

/// The set whose slice at every radius is the double cap carrying the same
/// arc length as the source profile.
class RearrangedSet {
public:
    explicit RearrangedSet(RadialProfile profile);

    const RadialProfile& profile() const { return profile_; }
    const std::vector<ProfileStation>& stations() const { return stations_; }

private:
    RadialProfile profile_;
    std::vector<ProfileStation> stations_;
};

RearrangedSet rearrange(const RadialProfile& profile);

/// Perimeter inside the annulus from the slice formula: the integral of
/// sqrt(p^2 + (4 r theta')^2) with p = 4 on {0 < theta < pi/2}, plus 4 r |dtheta|
/// for every jump strictly inside the window.
double perimeter_rearranged(const RearrangedSet& rset, const AnnulusWindow& window);

/// Same quantity as four times the arc length of the boundary branch
/// r -> r (cos theta, sin theta).
double perimeter_rearranged_parametric(const RearrangedSet& rset, const AnnulusWindow& window);

/// Integral over the window of the endpoint count of the rearranged slices.
double rearranged_endpoint_integral(const RearrangedSet& rset, const AnnulusWindow& window);

ArcSet slice_of_rearranged(const RearrangedSet& rset, double r);

/// Polygon tracing the four boundary branches through every profile station;
/// jump arcs get about angular_steps vertices per full turn.
MultiPolygon rasterize(const RearrangedSet& rset, int angular_steps = kDefaultAngularSteps);

} // namespace sphcap
