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

#include "roadwx/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "roadwx/errors.hpp"

namespace roadwx {

double raw_value(ImportanceRating r) {
  switch (r) {
    case ImportanceRating::kUnimportant: return 0.05;
    case ImportanceRating::kSomewhat: return 0.25;
    case ImportanceRating::kImportant: return 0.5;
    case ImportanceRating::kVery: return 0.75;
  }
  return 0.0;
}

std::string_view to_string(ImportanceRating r) {
  switch (r) {
    case ImportanceRating::kUnimportant: return "unimportant";
    case ImportanceRating::kSomewhat: return "somewhat";
    case ImportanceRating::kImportant: return "important";
    case ImportanceRating::kVery: return "very";
  }
  return "?";
}

std::optional<ImportanceRating> parse_importance_rating(std::string_view name) {
  for (auto r : kAllImportanceRatings) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

PreferenceVector PreferenceVector::from_components(const std::array<double, 4>& raw) {
  double sum = 0.0;
  for (double v : raw) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("preference components must be finite and nonnegative");
    }
    sum += v;
  }
  if (!(sum > 0.0)) throw InvalidInput("preference components must not all be zero");
  std::array<double, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) c[i] = raw[i] / sum;
  return PreferenceVector(c);
}

PreferenceVector preference_from_ratings(const std::array<ImportanceRating, 4>& ratings) {
  std::array<double, 4> raw{};
  for (std::size_t i = 0; i < 4; ++i) raw[i] = raw_value(ratings[i]);
  return PreferenceVector::from_components(raw);
}

double edge_cost(const SegmentWeightVector& w, const PreferenceVector& p) {
  return w.length * p.length() + w.traffic * p.traffic() + w.weather * p.weather() +
         w.events * p.events();
}

namespace {

struct Pred {
  NodeId node = kUnresolvedNode;
  std::size_t segment = 0;
};

}  // namespace

Route shortest_route_between(const RoadNetwork& network, const SegmentWeights& weights,
                             const PreferenceVector& p, NodeId source, NodeId target) {
  if (network.empty()) throw GraphError("network is empty");
  const auto& segs = network.segments();
  std::vector<double> cost(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    auto it = weights.find(segs[i].id);
    if (it == weights.end()) throw GraphError("no weights for segment '" + segs[i].id + "'");
    cost[i] = edge_cost(it->second, p);
    if (!std::isfinite(cost[i]) || cost[i] < 0.0) {
      throw InvalidInput("segment '" + segs[i].id + "' has a negative or non-finite cost");
    }
  }

  const auto& nodes = network.nodes();
  const std::size_t n = nodes.size();
  const std::size_t src = network.node_index(source);
  const std::size_t dst = network.node_index(target);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<Pred> pred(n);
  std::vector<bool> done(n, false);

  // Nodes are sorted by id, so index order equals id order.
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d > dist[u]) continue;
    done[u] = true;
    if (u == dst) break;
    for (std::size_t si : network.incident(nodes[u].id)) {
      const RoadSegment& s = segs[si];
      const NodeId other = s.from_node == nodes[u].id ? s.to_node : s.from_node;
      const std::size_t v = network.node_index(other);
      if (done[v]) continue;
      const double nd = d + cost[si];
      const bool better = nd < dist[v];
      const bool tie_wins =
          nd == dist[v] && (nodes[u].id < pred[v].node ||
                            (nodes[u].id == pred[v].node && s.id < segs[pred[v].segment].id));
      if (better || tie_wins) {
        dist[v] = nd;
        pred[v] = Pred{nodes[u].id, si};
        if (better) heap.emplace(nd, v);
      }
    }
  }
  if (dist[dst] == kInf) {
    throw NoRoute("no route between nodes " + std::to_string(source) + " and " +
                  std::to_string(target));
  }

  Route route;
  for (std::size_t v = dst; v != src;) {
    route.nodes.push_back(nodes[v].id);
    route.segments.push_back(segs[pred[v].segment].id);
    v = network.node_index(pred[v].node);
  }
  route.nodes.push_back(nodes[src].id);
  std::reverse(route.nodes.begin(), route.nodes.end());
  std::reverse(route.segments.begin(), route.segments.end());

  for (const auto& id : route.segments) {
    const auto si = *network.find_segment(id);
    route.total_cost += cost[si];
    route.total_length_m += segs[si].length_m;
  }
  route.breakdown = route_breakdown(route, weights);
  return route;
}

Route shortest_route(const RoadNetwork& network, const SegmentWeights& weights,
                     const PreferenceVector& p, LatLon from, LatLon to) {
  const Node& a = nearest_node(network, from);
  const Node& b = nearest_node(network, to);
  Route route = shortest_route_between(network, weights, p, a.id, b.id);
  route.from_snap_m = great_circle_m(from, a.coords);
  route.to_snap_m = great_circle_m(to, b.coords);
  return route;
}

SegmentWeightVector route_breakdown(const Route& route, const SegmentWeights& weights) {
  SegmentWeightVector sum;
  for (const auto& id : route.segments) {
    auto it = weights.find(id);
    if (it == weights.end()) throw GraphError("no weights for segment '" + id + "'");
    sum.length += it->second.length;
    sum.traffic += it->second.traffic;
    sum.weather += it->second.weather;
    sum.events += it->second.events;
  }
  return sum;
}

}  // namespace roadwx
