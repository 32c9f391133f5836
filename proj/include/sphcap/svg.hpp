#pragma once

#include "sphcap/geometry.hpp"

#include <string>

namespace sphcap {

/// Two panels on a fixed 1000x500 canvas: the set on the left, its
/// rearrangement on the right, each with the dashed circle of the largest
/// radius of either set. Coordinates are printed to three decimals.
std::string render_svg(const MultiPolygon& original, const MultiPolygon& rearranged);

void render(const MultiPolygon& original, const MultiPolygon& rearranged, const std::string& path);

} // namespace sphcap
