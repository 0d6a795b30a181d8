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

// The routable road network: polylines split at intersection nodes, an
// undirected adjacency over the pieces, nearest-node lookup and the
// assignment of measurement stations to segments.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "roadwx/geo.hpp"
#include "roadwx/ingest.hpp"

namespace roadwx {

using NodeId = std::int64_t;
inline constexpr NodeId kUnresolvedNode = -1;
inline constexpr double kDefaultSnapToleranceM = 1.0;

struct Node {
  NodeId id = 0;
  LatLon coords;

  friend bool operator==(const Node&, const Node&) = default;
};

// A road as read from the input network, before splitting.
struct RoadPolyline {
  std::string id;
  int road_number = 0;
  std::vector<LatLon> points;
};

struct RoadSegment {
  std::string id;
  int road_number = 0;
  NodeId from_node = kUnresolvedNode;
  NodeId to_node = kUnresolvedNode;
  std::vector<LatLon> geometry;
  double length_m = 0.0;

  friend bool operator==(const RoadSegment&, const RoadSegment&) = default;
};

// Splits every polyline wherever a node lies within `snap_tolerance_m` of its
// interior. Cuts are placed at the node's projection onto the line, so the
// pieces concatenate to the input geometry. Piece ends (including polyline
// ends within tolerance of a node) carry that node's id. Piece ids are
// "<polyline id>:<piece index>". Zero-length input is skipped with a warning.
std::vector<RoadSegment> split_at_nodes(const std::vector<RoadPolyline>& polylines,
                                        const std::vector<Node>& nodes,
                                        double snap_tolerance_m = kDefaultSnapToleranceM,
                                        Diagnostics* diag = nullptr);

class RoadNetwork {
 public:
  RoadNetwork() = default;

  bool empty() const { return nodes_.empty(); }
  // Sorted by id.
  const std::vector<Node>& nodes() const { return nodes_; }
  // In insertion order.
  const std::vector<RoadSegment>& segments() const { return segments_; }

  const Node& node(NodeId id) const;
  std::size_t node_index(NodeId id) const;
  const RoadSegment& segment(std::string_view id) const;
  std::optional<std::size_t> find_segment(std::string_view id) const;
  // Indices into segments() of the segments touching the node.
  std::span<const std::size_t> incident(NodeId id) const;
  std::size_t degree(NodeId id) const { return incident(id).size(); }

  double max_segment_length_m() const;

 private:
  friend RoadNetwork build_graph(std::vector<RoadSegment>, std::span<const Node>);

  std::vector<Node> nodes_;
  std::vector<RoadSegment> segments_;
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::map<std::string, std::size_t, std::less<>> segment_index_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Segment ends that already name one of `named_nodes` keep it. Other ends are
// matched by coordinates: an end that coincides with a named node takes its
// id, the rest get fresh ids above the largest named id, in order of first
// appearance. Throws GraphError on duplicate segment ids.
RoadNetwork build_graph(std::vector<RoadSegment> segments, std::span<const Node> named_nodes = {});

// Closest node by great-circle distance; ties go to the smaller id. Throws
// GraphError on an empty network.
const Node& nearest_node(const RoadNetwork& network, LatLon p);

// Manual adjustments to the nearest-station rule.
struct AssignmentOverrides {
  std::map<std::string, StationId> segment_weather;
  std::map<std::string, StationId> segment_traffic;
  // Station used when the given station produced no data.
  std::map<StationId, StationId> secondary;
  // When set, a station on the segment's own road within this radius wins
  // over nearer stations on other roads.
  std::optional<double> same_road_radius_m;

  friend bool operator==(const AssignmentOverrides&, const AssignmentOverrides&) = default;
};

struct SegmentAssignment {
  StationId weather_station = 0;
  bool same_road = false;
  StationId traffic_station = 0;
  std::optional<StationId> secondary_weather_station;
  std::optional<StationId> secondary_traffic_station;

  friend bool operator==(const SegmentAssignment&, const SegmentAssignment&) = default;
};

using StationAssignment = std::map<std::string, SegmentAssignment, std::less<>>;

// Default rule: nearest station of each kind to the segment midpoint, ties
// to the smaller station id. Throws ConfigError when a kind has no station or
// an override names an unknown station or segment.
StationAssignment assign_stations(const RoadNetwork& network, const std::vector<StationMeta>& metas,
                                  const AssignmentOverrides& overrides = {});

inline constexpr double kDefaultEventBufferM = 25.0;

// Fills in `segments` for events that only carry a geometry. A point event
// hits every segment passing within `buffer_m`; a line event hits every
// segment whose midpoint lies within `buffer_m` of the line.
std::vector<TrafficEvent> resolve_event_segments(std::vector<TrafficEvent> events,
                                                 const RoadNetwork& network,
                                                 double buffer_m = kDefaultEventBufferM);

}  // namespace roadwx
