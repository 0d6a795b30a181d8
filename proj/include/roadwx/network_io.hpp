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

// Road network input files (GeoJSON, lon/lat on disk).

#include <filesystem>
#include <optional>
#include <vector>

#include "roadwx/graph.hpp"

namespace roadwx {

// LineString features with properties `id` (string or integer) and
// `road_number`.
std::vector<RoadPolyline> load_road_polylines(const std::filesystem::path& path);

// Point features with an integer property `id`.
std::vector<Node> load_nodes(const std::filesystem::path& path);

// Splits the roads at the nodes and builds the graph. Without a nodes file,
// only the road ends become nodes.
RoadNetwork load_network(const std::filesystem::path& network_path,
                         const std::optional<std::filesystem::path>& nodes_path,
                         double snap_tolerance_m = kDefaultSnapToleranceM,
                         Diagnostics* diag = nullptr);

}  // namespace roadwx
