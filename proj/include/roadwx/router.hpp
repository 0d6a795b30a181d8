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

// Preference vectors and preference-weighted shortest paths.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roadwx/fusion.hpp"
#include "roadwx/graph.hpp"

namespace roadwx {

enum class ImportanceRating : std::uint8_t { kUnimportant, kSomewhat, kImportant, kVery };
inline constexpr std::array kAllImportanceRatings = {
    ImportanceRating::kUnimportant, ImportanceRating::kSomewhat, ImportanceRating::kImportant,
    ImportanceRating::kVery};

// 0.05 / 0.25 / 0.5 / 0.75.
double raw_value(ImportanceRating r);
std::string_view to_string(ImportanceRating r);
std::optional<ImportanceRating> parse_importance_rating(std::string_view name);

// Four nonnegative components in (length, traffic, weather, events) order,
// summing to 1.
class PreferenceVector {
 public:
  // Normalizes by the sum. Throws InvalidInput for negative or non-finite
  // components or a zero sum.
  static PreferenceVector from_components(const std::array<double, 4>& raw);

  PreferenceVector() = delete;

  double length() const { return c_[0]; }
  double traffic() const { return c_[1]; }
  double weather() const { return c_[2]; }
  double events() const { return c_[3]; }
  const std::array<double, 4>& components() const { return c_; }

  friend bool operator==(const PreferenceVector&, const PreferenceVector&) = default;

 private:
  explicit PreferenceVector(const std::array<double, 4>& c) : c_(c) {}
  std::array<double, 4> c_;
};

PreferenceVector preference_from_ratings(const std::array<ImportanceRating, 4>& ratings);

double edge_cost(const SegmentWeightVector& w, const PreferenceVector& p);

using SegmentWeights = std::map<std::string, SegmentWeightVector, std::less<>>;

struct Route {
  std::vector<NodeId> nodes;
  std::vector<std::string> segments;
  double total_cost = 0.0;
  double total_length_m = 0.0;
  SegmentWeightVector breakdown;
  // Distance from the requested coordinates to the snapped end nodes.
  double from_snap_m = 0.0;
  double to_snap_m = 0.0;

  friend bool operator==(const Route&, const Route&) = default;
};

// Dijkstra between the nodes nearest to `from` and `to`. Among equal-cost
// predecessors the smaller node id wins, then the smaller segment id.
// Throws GraphError on an empty network or a segment without weights, and
// NoRoute when the destination is unreachable.
Route shortest_route(const RoadNetwork& network, const SegmentWeights& weights,
                     const PreferenceVector& p, LatLon from, LatLon to);

// Same search between known node ids.
Route shortest_route_between(const RoadNetwork& network, const SegmentWeights& weights,
                             const PreferenceVector& p, NodeId source, NodeId target);

// Componentwise sum of the traversed segments' vectors.
SegmentWeightVector route_breakdown(const Route& route, const SegmentWeights& weights);

}  // namespace roadwx
