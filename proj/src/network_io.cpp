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

#include "roadwx/network_io.hpp"

#include <set>

#include "json_util.hpp"
#include "roadwx/errors.hpp"

namespace roadwx {

using detail::Cursor;
using detail::Json;

namespace {

LatLon position(const Cursor& c) {
  if (c.size() < 2) c.fail("position needs lon and lat");
  const LatLon p{c.at(std::size_t{1}).number(), c.at(std::size_t{0}).number()};
  if (!is_valid(p)) c.fail("coordinates out of range");
  return p;
}

Cursor features(const Cursor& root) {
  if (root.string("type") != "FeatureCollection") root.at("type").fail("expected a FeatureCollection");
  return root.at("features");
}

}  // namespace

std::vector<RoadPolyline> load_road_polylines(const std::filesystem::path& path) {
  const Json doc = detail::read_json_file(path);
  const Cursor list = features(Cursor(doc, path.string()));
  std::vector<RoadPolyline> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Cursor f = list.at(i);
    const Cursor geom = f.at("geometry");
    if (geom.string("type") != "LineString") geom.at("type").fail("expected a LineString");
    const Cursor props = f.at("properties");
    RoadPolyline road;
    const Cursor id = props.at("id");
    road.id = id.json().is_string() ? id.string() : std::to_string(id.integer());
    if (road.id.empty()) id.fail("empty id");
    if (!ids.insert(road.id).second) id.fail("duplicate road id '" + road.id + "'");
    road.road_number = static_cast<int>(props.integer("road_number"));
    const Cursor coords = geom.at("coordinates");
    for (std::size_t k = 0; k < coords.size(); ++k) road.points.push_back(position(coords.at(k)));
    out.push_back(std::move(road));
  }
  return out;
}

std::vector<Node> load_nodes(const std::filesystem::path& path) {
  const Json doc = detail::read_json_file(path);
  const Cursor list = features(Cursor(doc, path.string()));
  std::vector<Node> out;
  std::set<NodeId> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Cursor f = list.at(i);
    const Cursor geom = f.at("geometry");
    if (geom.string("type") != "Point") geom.at("type").fail("expected a Point");
    Node n;
    n.id = f.at("properties").integer("id");
    if (n.id < 0) f.at("properties").at("id").fail("node ids must be nonnegative");
    if (!ids.insert(n.id).second) f.at("properties").at("id").fail("duplicate node id");
    n.coords = position(geom.at("coordinates"));
    out.push_back(n);
  }
  return out;
}

RoadNetwork load_network(const std::filesystem::path& network_path,
                         const std::optional<std::filesystem::path>& nodes_path,
                         double snap_tolerance_m, Diagnostics* diag) {
  const auto roads = load_road_polylines(network_path);
  const auto nodes = nodes_path ? load_nodes(*nodes_path) : std::vector<Node>{};
  auto segments = split_at_nodes(roads, nodes, snap_tolerance_m, diag);
  if (segments.empty()) throw GraphError("network '" + network_path.string() + "' has no segments");
  return build_graph(std::move(segments), nodes);
}

}  // namespace roadwx
