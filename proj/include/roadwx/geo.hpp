// Copyright 2026 The roadwx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace roadwx {

// WGS84 degrees. GeoJSON files store (lon, lat); everything in memory is
// (lat, lon).
struct LatLon {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const LatLon&, const LatLon&) = default;
};

inline constexpr double kEarthRadiusM = 6371008.8;

bool is_valid(LatLon p);

// Haversine distance on a sphere of radius kEarthRadiusM.
double great_circle_m(LatLon a, LatLon b);

// Sum of great-circle distances between consecutive points. Throws
// InvalidInput for fewer than two points.
double polyline_length(std::span<const LatLon> line);

struct PolylineProjection {
  std::size_t edge = 0;     // index of the first vertex of the closest edge
  double t = 0.0;           // position within that edge, [0, 1]
  LatLon point;             // closest point on the line
  double distance_m = 0.0;  // from the query point to `point`
  double offset_m = 0.0;    // distance along the line up to `point`
};

// Closest point on the polyline. Uses a local equirectangular plane for the
// per-edge projection, which is accurate at road-segment scales.
PolylineProjection project_onto_polyline(std::span<const LatLon> line, LatLon p);

double point_to_polyline_m(std::span<const LatLon> line, LatLon p);

// The point `offset_m` metres along the line, clamped to its ends.
LatLon point_along(std::span<const LatLon> line, double offset_m);

LatLon polyline_midpoint(std::span<const LatLon> line);

}  // namespace roadwx
