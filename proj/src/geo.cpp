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

#include "roadwx/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "roadwx/errors.hpp"

namespace roadwx {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

LatLon lerp(LatLon a, LatLon b, double t) {
  return {a.lat + (b.lat - a.lat) * t, a.lon + (b.lon - a.lon) * t};
}

}  // namespace

bool is_valid(LatLon p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

double great_circle_m(LatLon a, LatLon b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double polyline_length(std::span<const LatLon> line) {
  if (line.size() < 2) throw InvalidInput("polyline needs at least two points");
  double total = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) total += great_circle_m(line[i - 1], line[i]);
  return total;
}

PolylineProjection project_onto_polyline(std::span<const LatLon> line, LatLon p) {
  if (line.empty()) throw InvalidInput("cannot project onto an empty polyline");
  PolylineProjection best;
  best.point = line.front();
  best.distance_m = great_circle_m(p, line.front());
  if (line.size() == 1) return best;

  const double kx = std::cos(p.lat * kDegToRad) * kDegToRad * kEarthRadiusM;
  const double ky = kDegToRad * kEarthRadiusM;
  double walked = 0.0;
  bool first = true;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const LatLon a = line[i];
    const LatLon b = line[i + 1];
    const double ax = (a.lon - p.lon) * kx, ay = (a.lat - p.lat) * ky;
    const double bx = (b.lon - p.lon) * kx, by = (b.lat - p.lat) * ky;
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? -(ax * dx + ay * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const LatLon q = t == 0.0 ? a : (t == 1.0 ? b : lerp(a, b, t));
    const double d = great_circle_m(p, q);
    if (first || d < best.distance_m) {
      first = false;
      best.edge = i;
      best.t = t;
      best.point = q;
      best.distance_m = d;
      best.offset_m = walked + great_circle_m(a, q);
    }
    walked += great_circle_m(a, b);
  }
  return best;
}

double point_to_polyline_m(std::span<const LatLon> line, LatLon p) {
  return project_onto_polyline(line, p).distance_m;
}

LatLon point_along(std::span<const LatLon> line, double offset_m) {
  if (line.empty()) throw InvalidInput("empty polyline");
  if (offset_m <= 0.0) return line.front();
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const double step = great_circle_m(line[i], line[i + 1]);
    if (walked + step >= offset_m && step > 0.0) {
      return lerp(line[i], line[i + 1], (offset_m - walked) / step);
    }
    walked += step;
  }
  return line.back();
}

LatLon polyline_midpoint(std::span<const LatLon> line) {
  return point_along(line, polyline_length(line) / 2.0);
}

}  // namespace roadwx
