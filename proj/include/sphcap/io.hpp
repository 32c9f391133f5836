#pragma once

#include "sphcap/geometry.hpp"
#include "sphcap/verify.hpp"

#include <json.hpp>

#include <string>

namespace sphcap {

/// {"rings": [[[x, y], ...], ...]}; the result is validated, so orientation is fixed on load.
MultiPolygon polygon_from_json(const nlohmann::json& doc);
MultiPolygon load_polygon_file(const std::string& path);

/// Coordinates are written at full precision so a reload reproduces the polygon exactly.
nlohmann::json polygon_to_json(const MultiPolygon& poly);

/// Rounds to 9 significant digits for reproducible text output.
double sig9(double value);

nlohmann::json report_to_json(const VerificationReport& report, const std::string& source, int resolution);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace sphcap
