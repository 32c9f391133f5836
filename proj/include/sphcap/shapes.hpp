#pragma once

#include "sphcap/geometry.hpp"

#include <map>
#include <string>
#include <vector>

namespace sphcap {

/// Regular n-gon inscribed in the circle of the given centre and radius,
/// first vertex at angle 0.
MultiPolygon gen_disk(Point center, double radius, int n);

/// {x > 0} inside the circle of the given radius: n/2 chords on the arc, the
/// two diameter end points and the origin.
MultiPolygon gen_half_disk(double radius, int n);

struct TentacleLayout {
    double width_short = 0.0;
    double area_long = 0.0;
    double area_short = 0.0;
    Point ball_center; ///< after the shift that puts the barycenter at the origin
};

/// Ball with a long thin rectangle along +x and a short one along -x. The
/// short width is chosen so both rectangles have the same area; the whole set
/// is then translated so that its barycenter is the origin.
MultiPolygon gen_tentacle_set(double ball_r, double len_long, double len_short, double width_long, int n,
                              TentacleLayout* layout = nullptr);

/// Disk at (distance, 0) and its rotation about the origin by angle_offset.
MultiPolygon gen_two_disks(double distance, double radius, double angle_offset, int n);

/// Disk at (distance, 0) and its rotations by 120 and 240 degrees.
MultiPolygon gen_three_disks(double distance, double radius, int n);

struct ShapeSpec {
    std::string name;
    std::map<std::string, double> parameters;
    int resolution = 0;
};

/// Preset names accepted by default_spec(): disk, half-disk, two-disks,
/// two-disks-asym, three-disks, tentacle.
const std::vector<std::string>& preset_names();
ShapeSpec default_spec(const std::string& name);
MultiPolygon generate(const ShapeSpec& spec);

} // namespace sphcap
