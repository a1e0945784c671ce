#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thermowit/thermolimit.hpp"
#include "thermowit/witness.hpp"

namespace thermowit::io {

/// Locale-independent, round-trip-stable number text ("%.12g", "nan").
std::string format_number(double v);

/// UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

/// Header `kT_over_J,B_over_J,W,entangled`, one row per cell, row-major in B then kT.
std::string region_csv(const RegionGrid& grid);
nlohmann::json region_json(const RegionGrid& grid, const nlohmann::json& metadata);

struct BoundaryEndpoints {
  double zero_field_kt_c = 0.0;      ///< B = 0 root of the witness integral
  double zero_temperature_b_c = 0.0;  ///< 2 sqrt(1 - pi^2/16)
};

/// Header `B_over_J,kTc_over_J`; analytic endpoints as leading `#` comments;
/// B values without a crossing carry `no-crossing`.
std::string boundary_csv(const BoundaryCurve& curve, const BoundaryEndpoints& endpoints);
nlohmann::json boundary_json(const BoundaryCurve& curve, const BoundaryEndpoints& endpoints,
                             const nlohmann::json& metadata);

std::string witness_csv(const WitnessReport& report);
nlohmann::json witness_json(const WitnessReport& report);

/// Static SVG of the entangled region (one filled polygon) with the W = 1
/// contour and labelled kT/|J|, B/|J| axes. Vertex data coordinates are
/// repeated in a `data-points` attribute.
std::string region_svg(const RegionPolygon& polygon, const RegionAxes& axes);

/// Data-coordinate vertices of every `entangled-region` polygon in an SVG.
std::vector<std::vector<std::pair<double, double>>> parse_region_polygons(std::string_view svg);

}  // namespace thermowit::io
