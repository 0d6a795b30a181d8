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

#include "roadwx/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>

#include "roadwx/errors.hpp"

namespace roadwx {

namespace {

using CoordKey = std::pair<std::int64_t, std::int64_t>;

// About 0.1 mm; coordinates closer than this are the same node.
CoordKey key_of(LatLon p) { return {std::llround(p.lat * 1e9), std::llround(p.lon * 1e9)}; }

struct Cut {
  std::size_t edge;
  double t;
  NodeId node;
  LatLon coords;
};

std::optional<Node> endpoint_snap(LatLon end, const std::vector<Node>& nodes, double tol) {
  std::optional<Node> best;
  double best_d = 0.0;
  for (const auto& n : nodes) {
    const double d = great_circle_m(end, n.coords);
    if (d > tol) continue;
    if (!best || d < best_d || (d == best_d && n.id < best->id)) {
      best = n;
      best_d = d;
    }
  }
  return best;
}

std::vector<RoadSegment> split_one(const RoadPolyline& line, const std::vector<Node>& nodes,
                                   double tol, Diagnostics* diag) {
  const auto& pts = line.points;
  const double total = polyline_length(pts);
  const auto start = endpoint_snap(pts.front(), nodes, tol);
  const auto end = endpoint_snap(pts.back(), nodes, tol);

  // Cuts sit on the line itself so the pieces concatenate to the input.
  std::vector<Cut> cuts;
  for (const auto& n : nodes) {
    if (start && n.id == start->id) continue;
    if (end && n.id == end->id) continue;
    const auto proj = project_onto_polyline(pts, n.coords);
    if (proj.distance_m > tol) continue;
    if (proj.offset_m <= tol || proj.offset_m >= total - tol) continue;
    Cut c{proj.edge, proj.t, n.id, proj.point};
    if (c.t <= 0.0) {
      c.t = 0.0;
      c.coords = pts[c.edge];
    } else if (c.t >= 1.0) {
      c.edge += 1;
      c.t = 0.0;
      c.coords = pts[c.edge];
    }
    cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
    return std::tie(a.edge, a.t, a.node) < std::tie(b.edge, b.t, b.node);
  });
  // Two nodes snapping to the same spot produce a single cut.
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const Cut& a, const Cut& b) { return a.edge == b.edge && a.t == b.t; }),
             cuts.end());

  struct Piece {
    std::vector<LatLon> geometry;
    NodeId from = kUnresolvedNode;
    NodeId to = kUnresolvedNode;
  };
  std::vector<Piece> pieces;
  Piece current{{pts.front()}, start ? start->id : kUnresolvedNode, kUnresolvedNode};
  std::size_t ci = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (; ci < cuts.size() && cuts[ci].edge == i; ++ci) {
      const Cut& c = cuts[ci];
      // current ends with pts[i]; a cut at t == 0 lands on that vertex.
      if (c.t != 0.0) current.geometry.push_back(c.coords);
      current.to = c.node;
      pieces.push_back(std::move(current));
      current = Piece{{c.coords}, c.node, kUnresolvedNode};
    }
    current.geometry.push_back(pts[i + 1]);
  }
  current.to = end ? end->id : kUnresolvedNode;
  pieces.push_back(std::move(current));

  std::vector<RoadSegment> out;
  std::size_t index = 0;
  for (auto& piece : pieces) {
    if (piece.geometry.size() < 2) continue;
    const double len = polyline_length(piece.geometry);
    if (len <= 0.0) {
      if (diag) diag->push_back("dropped zero-length piece of '" + line.id + "'");
      continue;
    }
    RoadSegment seg;
    seg.id = line.id + ":" + std::to_string(index++);
    seg.road_number = line.road_number;
    seg.from_node = piece.from;
    seg.to_node = piece.to;
    seg.geometry = std::move(piece.geometry);
    seg.length_m = len;
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace

std::vector<RoadSegment> split_at_nodes(const std::vector<RoadPolyline>& polylines,
                                        const std::vector<Node>& nodes, double snap_tolerance_m,
                                        Diagnostics* diag) {
  if (!(snap_tolerance_m > 0.0) || !std::isfinite(snap_tolerance_m)) {
    throw InvalidInput("snap tolerance must be positive");
  }
  std::vector<RoadSegment> out;
  for (const auto& line : polylines) {
    if (line.points.size() < 2 || polyline_length(line.points) <= 0.0) {
      if (diag) diag->push_back("skipped degenerate polyline '" + line.id + "'");
      continue;
    }
    auto pieces = split_one(line, nodes, snap_tolerance_m, diag);
    for (auto& p : pieces) out.push_back(std::move(p));
  }
  return out;
}

const Node& RoadNetwork::node(NodeId id) const { return nodes_[node_index(id)]; }

std::size_t RoadNetwork::node_index(NodeId id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw GraphError("unknown node " + std::to_string(id));
  return it->second;
}

const RoadSegment& RoadNetwork::segment(std::string_view id) const {
  auto idx = find_segment(id);
  if (!idx) throw GraphError("unknown segment '" + std::string(id) + "'");
  return segments_[*idx];
}

std::optional<std::size_t> RoadNetwork::find_segment(std::string_view id) const {
  auto it = segment_index_.find(id);
  if (it == segment_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> RoadNetwork::incident(NodeId id) const {
  return adjacency_[node_index(id)];
}

double RoadNetwork::max_segment_length_m() const {
  double m = 0.0;
  for (const auto& s : segments_) m = std::max(m, s.length_m);
  return m;
}

RoadNetwork build_graph(std::vector<RoadSegment> segments, std::span<const Node> named_nodes) {
  RoadNetwork net;
  std::map<CoordKey, NodeId> by_coords;
  std::map<NodeId, LatLon> coords;
  NodeId next_id = 1;
  for (const auto& n : named_nodes) {
    by_coords.try_emplace(key_of(n.coords), n.id);
    next_id = std::max(next_id, n.id + 1);
  }

  // Ends already tied to a named node keep it; others are matched by
  // coordinates.
  auto named = [&](NodeId id) {
    if (id == kUnresolvedNode) return false;
    for (const auto& n : named_nodes) {
      if (n.id == id) {
        coords.try_emplace(id, n.coords);
        return true;
      }
    }
    return false;
  };

  auto resolve = [&](LatLon p) {
    const auto key = key_of(p);
    auto it = by_coords.find(key);
    NodeId id;
    if (it != by_coords.end()) {
      id = it->second;
    } else {
      id = next_id++;
      by_coords.emplace(key, id);
    }
    if (!coords.count(id)) {
      LatLon c = p;
      for (const auto& n : named_nodes) {
        if (n.id == id) c = n.coords;
      }
      coords.emplace(id, c);
    }
    return id;
  };

  for (std::size_t i = 0; i < segments.size(); ++i) {
    auto& s = segments[i];
    if (s.geometry.size() < 2) throw GraphError("segment '" + s.id + "' has no geometry");
    if (!net.segment_index_.emplace(s.id, i).second) {
      throw GraphError("duplicate segment id '" + s.id + "'");
    }
    s.from_node = named(s.from_node) ? s.from_node : resolve(s.geometry.front());
    s.to_node = named(s.to_node) ? s.to_node : resolve(s.geometry.back());
    if (!(s.length_m > 0.0)) s.length_m = polyline_length(s.geometry);
  }

  for (const auto& [id, c] : coords) net.nodes_.push_back(Node{id, c});
  for (std::size_t i = 0; i < net.nodes_.size(); ++i) net.node_index_.emplace(net.nodes_[i].id, i);
  net.adjacency_.resize(net.nodes_.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    net.adjacency_[net.node_index_.at(s.from_node)].push_back(i);
    if (s.to_node != s.from_node) net.adjacency_[net.node_index_.at(s.to_node)].push_back(i);
  }
  net.segments_ = std::move(segments);
  return net;
}

const Node& nearest_node(const RoadNetwork& network, LatLon p) {
  if (network.empty()) throw GraphError("nearest node on an empty network");
  const Node* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  // nodes() is sorted by id, so strict < keeps the smaller id on ties.
  for (const auto& n : network.nodes()) {
    const double d = great_circle_m(p, n.coords);
    if (d < best_d) {
      best = &n;
      best_d = d;
    }
  }
  return *best;
}

namespace {

const StationMeta* nearest_station(const std::vector<const StationMeta*>& stations, LatLon p,
                                   std::optional<int> road, double radius_m) {
  const StationMeta* best = nullptr;
  double best_d = 0.0;
  for (const StationMeta* s : stations) {
    if (road && s->road_number != road) continue;
    const double d = great_circle_m(p, s->coords);
    if (road && d > radius_m) continue;
    if (!best || d < best_d || (d == best_d && s->station_id < best->station_id)) {
      best = s;
      best_d = d;
    }
  }
  return best;
}

const StationMeta* pick_station(const std::vector<const StationMeta*>& stations,
                                const RoadSegment& seg, LatLon mid,
                                const AssignmentOverrides& overrides) {
  if (overrides.same_road_radius_m) {
    if (auto* s = nearest_station(stations, mid, seg.road_number, *overrides.same_road_radius_m)) {
      return s;
    }
  }
  return nearest_station(stations, mid, std::nullopt, 0.0);
}

}  // namespace

StationAssignment assign_stations(const RoadNetwork& network, const std::vector<StationMeta>& metas,
                                  const AssignmentOverrides& overrides) {
  std::vector<const StationMeta*> weather, traffic;
  std::map<StationId, const StationMeta*> by_id;
  for (const auto& m : metas) {
    (m.kind == StationKind::kWeather ? weather : traffic).push_back(&m);
    by_id.emplace(m.station_id, &m);
  }
  if (weather.empty()) throw ConfigError("station assignment needs a weather station");
  if (traffic.empty()) throw ConfigError("station assignment needs a traffic station");

  auto require = [&](StationId id, std::optional<StationKind> kind) -> const StationMeta& {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw ConfigError("override references unknown station " + std::to_string(id));
    if (kind && it->second->kind != *kind) {
      throw ConfigError("override station " + std::to_string(id) + " is not a " +
                        std::string(to_string(*kind)) + " station");
    }
    return *it->second;
  };
  for (const auto& [seg, id] : overrides.segment_weather) {
    if (!network.find_segment(seg))
      throw ConfigError("override references unknown segment '" + seg + "'");
    require(id, StationKind::kWeather);
  }
  for (const auto& [seg, id] : overrides.segment_traffic) {
    if (!network.find_segment(seg))
      throw ConfigError("override references unknown segment '" + seg + "'");
    require(id, StationKind::kTraffic);
  }
  for (const auto& [from, to] : overrides.secondary) {
    const auto& primary = require(from, std::nullopt);
    require(to, primary.kind);
  }

  auto secondary_of = [&](StationId id) -> std::optional<StationId> {
    auto it = overrides.secondary.find(id);
    if (it == overrides.secondary.end()) return std::nullopt;
    return it->second;
  };

  StationAssignment out;
  for (const auto& seg : network.segments()) {
    const LatLon mid = polyline_midpoint(seg.geometry);
    SegmentAssignment a;
    if (auto it = overrides.segment_weather.find(seg.id); it != overrides.segment_weather.end()) {
      a.weather_station = it->second;
    } else {
      a.weather_station = pick_station(weather, seg, mid, overrides)->station_id;
    }
    if (auto it = overrides.segment_traffic.find(seg.id); it != overrides.segment_traffic.end()) {
      a.traffic_station = it->second;
    } else {
      a.traffic_station = pick_station(traffic, seg, mid, overrides)->station_id;
    }
    a.same_road = by_id.at(a.weather_station)->road_number == seg.road_number;
    a.secondary_weather_station = secondary_of(a.weather_station);
    a.secondary_traffic_station = secondary_of(a.traffic_station);
    out.emplace(seg.id, a);
  }
  return out;
}

std::vector<TrafficEvent> resolve_event_segments(std::vector<TrafficEvent> events,
                                                 const RoadNetwork& network, double buffer_m) {
  for (auto& e : events) {
    if (!e.segments.empty() || e.geometry.empty()) continue;
    for (const auto& seg : network.segments()) {
      bool hit = false;
      if (e.geometry.size() == 1) {
        hit = point_to_polyline_m(seg.geometry, e.geometry.front()) <= buffer_m;
      } else {
        hit = point_to_polyline_m(e.geometry, polyline_midpoint(seg.geometry)) <= buffer_m;
      }
      if (hit) e.segments.push_back(seg.id);
    }
  }
  return events;
}

}  // namespace roadwx
