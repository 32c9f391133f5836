#pragma once

#include "sphcap/geometry.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sphcap {

inline constexpr int kDefaultSamplesPerSegment = 256;
inline constexpr int kMinSamplesPerSegment = 8;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

struct RadialSegment {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t first = 0; ///< index of the first sample
    std::size_t count = 0;
};

/// Radii at which slices are evaluated. Segments are delimited by critical
/// radii (polygons) or declared jumps (loaded profiles); every sample lies
/// strictly inside its segment.
struct RadialGrid {
    std::vector<RadialSegment> segments;
    std::vector<double> radii;
    std::vector<std::size_t> segment_of; ///< per sample
};

struct ProfileJump {
    double r = 0.0;
    double theta_minus = 0.0;
    double theta_plus = 0.0;
};

struct RadialProfile {
    RadialGrid grid;
    std::vector<double> v;
    std::vector<double> theta;
    std::vector<int> arc_count;
    std::vector<int> p;
    std::vector<ProfileJump> jumps;
    bool from_polygon = false;
    double scale = 0.0; ///< length scale used for tolerances

    std::size_t size() const { return grid.radii.size(); }
    double r_max() const;
    bool partial(std::size_t i) const { return theta[i] > 0.0 && theta[i] < kHalfPi; }
};

/// One point of the piecewise description of theta(r). Consecutive stations
/// are joined either by a chord (theta varies continuously in between) or by
/// a jump (same radius, theta changes along an arc of the circle).
struct ProfileStation {
    enum class Link { Start, Chord, Jump };

    double r = 0.0;
    double theta = 0.0;
    int p = 0;
    Link link = Link::Start;
};

/// Samples, declared jumps, and a closing drop to theta = 0 after the last
/// station. Chords across declared jumps are never emitted.
std::vector<ProfileStation> profile_stations(const RadialProfile& profile);

RadialGrid build_grid(const MultiPolygon& poly, int samples_per_segment);
RadialProfile build_profile(const MultiPolygon& poly, int samples_per_segment = kDefaultSamplesPerSegment);

/// d theta / dr per sample, finite differences within each segment.
std::vector<double> theta_derivative(const RadialProfile& profile);

/// |4 r D theta| (window): continuous part plus declared jumps strictly inside.
double tv_4r_dtheta(const RadialProfile& profile, const AnnulusWindow& window);

struct RadialInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct GammaSet {
    std::vector<RadialInterval> intervals;
    double measure = 0.0;
};

/// Radii whose slice is a single proper arc.
GammaSet gamma_measure(const RadialProfile& profile, const AnnulusWindow& window);

/// Measure of radii whose slice has at least min_arcs arcs.
GammaSet radii_with_arcs(const RadialProfile& profile, const AnnulusWindow& window, int min_arcs, int max_arcs);

/// Integral of v from 0 to r.
double cumulative_area(const RadialProfile& profile, double r);

/// theta at an arbitrary radius, linear between chord-linked stations.
double theta_at(const RadialProfile& profile, double r);

RadialProfile load_profile(std::istream& in);
RadialProfile load_profile_file(const std::string& path);
void write_profile_csv(const RadialProfile& profile, std::ostream& out);

} // namespace sphcap
