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

#include "roadwx/service.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json_util.hpp"
#include "roadwx/errors.hpp"

namespace roadwx {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string describe(const std::vector<FieldError>& fields) {
  std::string out = "invalid request";
  for (const auto& f : fields) out += "; " + (f.field.empty() ? "body" : f.field) + ": " + f.message;
  return out;
}

JsonDoc opt(const std::optional<UnitWeight>& w) {
  return w ? JsonDoc(w->value()) : JsonDoc(nullptr);
}

JsonDoc opt(const std::optional<double>& v) { return v ? JsonDoc(*v) : JsonDoc(nullptr); }

JsonDoc range_json(const std::optional<Range>& r) {
  if (!r) return nullptr;
  return JsonDoc{{"min", r->min}, {"max", r->max}};
}

void widen(std::optional<Range>& r, double v) {
  if (!r) {
    r = Range{v, v};
  } else {
    r->min = std::min(r->min, v);
    r->max = std::max(r->max, v);
  }
}

JsonDoc line_coords(const std::vector<LatLon>& pts) {
  JsonDoc c = JsonDoc::array();
  for (const auto& p : pts) c.push_back({p.lon, p.lat});
  return c;
}

std::optional<LatLon> parse_coords(const json& body, const char* key,
                                   std::vector<FieldError>& errors) {
  if (!body.contains(key)) {
    errors.push_back({key, "missing field"});
    return std::nullopt;
  }
  const json& v = body.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    errors.push_back({key, "expected [lat, lon]"});
    return std::nullopt;
  }
  const LatLon p{v[0].get<double>(), v[1].get<double>()};
  if (!is_valid(p)) {
    errors.push_back({key, "coordinates out of range"});
    return std::nullopt;
  }
  return p;
}

}  // namespace

RequestError::RequestError(std::vector<FieldError> fields)
    : InvalidInput(describe(fields)), fields_(std::move(fields)) {}

PreferenceVector parse_profile(const json& j, const std::string& field) {
  if (!j.is_object()) throw RequestError({FieldError{field, "expected an object"}});
  const bool has_ratings = j.contains("ratings");
  const bool has_vector = j.contains("vector");
  if (has_ratings == has_vector) {
    throw RequestError({FieldError{field, "expected exactly one of 'ratings' or 'vector'"}});
  }
  const std::string key = has_ratings ? "ratings" : "vector";
  const json& list = j.at(key);
  const std::string where = field + "." + key;
  if (!list.is_array() || list.size() != 4) {
    throw RequestError({FieldError{where, "expected 4 components, got " +
                                    (list.is_array() ? std::to_string(list.size()) : "a non-array")}});
  }
  std::vector<FieldError> errors;
  std::array<double, 4> raw{};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (has_ratings) {
      const auto r = list[i].is_string() ? parse_importance_rating(list[i].get<std::string>())
                                         : std::nullopt;
      if (!r) {
        errors.push_back({at, "expected one of unimportant, somewhat, important, very"});
        continue;
      }
      raw[i] = raw_value(*r);
    } else {
      if (!list[i].is_number()) {
        errors.push_back({at, "expected a number"});
        continue;
      }
      raw[i] = list[i].get<double>();
      if (!std::isfinite(raw[i]) || raw[i] < 0.0) errors.push_back({at, "must be nonnegative"});
    }
  }
  if (!errors.empty()) throw RequestError(std::move(errors));
  try {
    return PreferenceVector::from_components(raw);
  } catch (const InvalidInput& e) {
    throw RequestError({FieldError{where, e.what()}});
  }
}

PreferenceVector load_profile_file(const fs::path& path) {
  const json j = detail::read_json_file(path);
  try {
    return parse_profile(j, "profile");
  } catch (const RequestError& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

ProfileCatalog load_profile_dir(const fs::path& dir) {
  ProfileCatalog out;
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.emplace(f.stem().string(), load_profile_file(f));
  return out;
}

SegmentWeights Scenario::weights(LengthMode mode) const {
  SegmentWeights out;
  for (const auto& [id, a] : assembled(mode)) out.emplace(id, a.vector);
  return out;
}

ScenarioSummary Scenario::summary(LengthMode mode) const {
  ScenarioSummary s;
  s.counts = count_records(bundle);
  for (const auto& [id, w] : stations) {
    if (w.weather.full) widen(s.full_weather, w.weather.full->value());
    if (w.weather.environmental) widen(s.environmental_weather, w.weather.environmental->value());
    if (w.traffic) widen(s.traffic, w.traffic->value());
  }
  std::optional<Range> length, traffic, weather, events;
  for (const auto& [id, a] : assembled(mode)) {
    widen(length, a.vector.length);
    widen(traffic, a.vector.traffic);
    widen(weather, a.vector.weather);
    widen(events, a.vector.events);
    if (a.data_incomplete()) ++s.data_incomplete;
  }
  s.segment_ranges = {{"length", length}, {"traffic", traffic}, {"weather", weather}, {"events", events}};
  s.weather_spread = weather ? weather->max - weather->min : 0.0;
  return s;
}

Scenario evaluate_scenario(const RoadNetwork& network, ScenarioBundle bundle) {
  Scenario s;
  s.bundle = std::move(bundle);
  const SensorMapping mapping = s.bundle.effective_mapping();
  const CodeTables codes = s.bundle.effective_codes();
  const ScaleRegistry scales = s.bundle.effective_scales();
  StationInputs inputs{&mapping, &codes, &scales,
                       s.bundle.overrides.ffs ? &*s.bundle.overrides.ffs : nullptr};
  s.stations = compute_station_weights(s.bundle.snapshots(), s.bundle.metas, inputs, &s.diagnostics);
  s.assignment = assign_stations(network, s.bundle.metas,
                                 s.bundle.overrides.stations.value_or(AssignmentOverrides{}));
  s.events = resolve_event_segments(s.bundle.events, network);
  for (const auto& e : s.events) {
    for (const auto& seg : e.segments) {
      if (!network.find_segment(seg)) {
        s.diagnostics.push_back("event '" + e.event_id + "' names unknown segment '" + seg + "'");
      }
    }
  }
  s.segment_events = segment_events(s.events, s.bundle.recorded_at);

  const double normalizer = network.max_segment_length_m();
  for (const auto& seg : network.segments()) {
    SegmentEvents ev;
    if (auto it = s.segment_events.find(seg.id); it != s.segment_events.end()) ev = it->second;
    const SegmentAssignment& a = s.assignment.at(seg.id);
    s.raw.emplace(seg.id, assemble_segment_vector(seg, a, s.stations, ev,
                                                  LengthMode::kRawKilometers, normalizer));
    s.normalized.emplace(seg.id, assemble_segment_vector(seg, a, s.stations, ev,
                                                         LengthMode::kNormalizedByMax, normalizer));
  }
  return s;
}

Service::Service(RoadNetwork network, std::vector<ScenarioBundle> bundles, ProfileCatalog presets)
    : network_(std::move(network)), presets_(std::move(presets)) {
  for (auto& b : bundles) {
    const std::string name = b.name;
    if (scenarios_.count(name)) throw BundleError("duplicate scenario name '" + name + "'");
    scenarios_.emplace(name, evaluate_scenario(network_, std::move(b)));
  }
}

std::vector<std::string> Service::scenario_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : scenarios_) out.push_back(name);
  return out;
}

const Scenario& Service::scenario(std::string_view name) const {
  auto it = scenarios_.find(name);
  if (it == scenarios_.end()) throw NotFound("unknown scenario '" + std::string(name) + "'");
  return it->second;
}

RouteRequest Service::parse_route_request(const json& body) const {
  if (!body.is_object()) throw RequestError({FieldError{"", "expected a JSON object"}});
  std::vector<FieldError> errors;
  RouteRequest req;
  if (!body.contains("scenario") || !body.at("scenario").is_string()) {
    errors.push_back({"scenario", "expected a scenario name"});
  } else {
    req.scenario = body.at("scenario").get<std::string>();
  }
  const auto from = parse_coords(body, "from", errors);
  const auto to = parse_coords(body, "to", errors);
  if (!body.contains("profile")) {
    errors.push_back({"profile", "missing field"});
  } else if (const json& p = body.at("profile"); p.is_string()) {
    auto it = presets_.find(p.get<std::string>());
    if (it == presets_.end()) {
      errors.push_back({"profile", "unknown preset '" + p.get<std::string>() + "'"});
    } else {
      req.profile = it->second;
    }
  } else {
    try {
      req.profile = parse_profile(p, "profile");
    } catch (const RequestError& e) {
      errors.insert(errors.end(), e.fields().begin(), e.fields().end());
    }
  }
  if (body.contains("length_mode")) {
    const json& m = body.at("length_mode");
    const auto mode = m.is_string() ? parse_length_mode(m.get<std::string>()) : std::nullopt;
    if (!mode) {
      errors.push_back({"length_mode", "expected 'raw' or 'normalized'"});
    } else {
      req.length_mode = *mode;
    }
  }
  if (!errors.empty()) throw RequestError(std::move(errors));
  req.from = *from;
  req.to = *to;
  return req;
}

PlanResult Service::plan(const RouteRequest& request) const {
  const Scenario& s = scenario(request.scenario);
  PlanResult r{request, shortest_route(network_, s.weights(request.length_mode), request.profile,
                                       request.from, request.to),
               0};
  const auto& assembled = s.assembled(request.length_mode);
  for (const auto& id : r.route.segments) {
    if (assembled.at(id).data_incomplete()) ++r.data_incomplete;
  }
  return r;
}

JsonDoc summary_json(const Scenario& s, LengthMode mode) {
  const ScenarioSummary sum = s.summary(mode);
  JsonDoc j;
  j["scenario"] = s.name();
  j["recorded_at"] = format_timestamp(s.bundle.recorded_at);
  j["length_mode"] = to_string(mode);
  j["counts"] = {{"weather_stations", sum.counts.weather_stations},
                 {"traffic_stations", sum.counts.traffic_stations},
                 {"station_metas", sum.counts.metas},
                 {"readings", sum.counts.readings},
                 {"unknown_readings", sum.counts.unknown_readings},
                 {"events", sum.counts.events},
                 {"segments", s.raw.size()}};

  JsonDoc stations = JsonDoc::array();
  for (const auto& [id, w] : s.stations) {
    JsonDoc st{{"station_id", id}, {"kind", to_string(w.kind)}};
    if (w.kind == StationKind::kWeather) {
      JsonDoc factors = JsonDoc::object();
      for (std::size_t i = 0; i < kWeatherFactorCount; ++i) {
        const auto f = static_cast<WeatherFactor>(i);
        if (w.factors[f]) factors[std::string(to_string(f))] = w.factors[f]->value();
      }
      st["factors"] = std::move(factors);
      st["groups"] = {{"surface", opt(w.groups.surface)},
                      {"visibility", opt(w.groups.visibility)},
                      {"environmental", opt(w.groups.environmental)}};
      st["full"] = opt(w.weather.full);
      st["environmental"] = opt(w.weather.environmental);
    } else {
      st["ffs_percent"] = opt(w.traffic_factors.ffs_percent);
      st["ffs_factor"] = opt(w.traffic_factors.ffs);
      st["occupancy_factor"] = opt(w.traffic_factors.occupancy);
      st["traffic"] = opt(w.traffic);
    }
    stations.push_back(std::move(st));
  }
  j["station_weights"] = std::move(stations);
  j["station_ranges"] = {{"full", range_json(sum.full_weather)},
                         {"environmental", range_json(sum.environmental_weather)},
                         {"traffic", range_json(sum.traffic)}};
  JsonDoc seg_ranges;
  for (const char* dim : {"length", "traffic", "weather", "events"}) {
    seg_ranges[dim] = range_json(sum.segment_ranges.at(dim));
  }
  j["segment_ranges"] = std::move(seg_ranges);
  j["weather_spread"] = sum.weather_spread;
  j["data_incomplete"] = sum.data_incomplete;

  JsonDoc events = JsonDoc::array();
  for (const auto& [seg, ev] : s.segment_events) {
    if (ev.roadwork == RoadWorkSeverity::kNone && !ev.accident) continue;
    events.push_back({{"segment", seg}, {"roadwork", to_string(ev.roadwork)}, {"accident", ev.accident}});
  }
  j["segment_events"] = std::move(events);
  j["diagnostics"] = s.diagnostics;
  return j;
}

JsonDoc Service::scenarios_json() const {
  JsonDoc list = JsonDoc::array();
  for (const auto& [name, s] : scenarios_) {
    list.push_back({{"name", name},
                    {"recorded_at", format_timestamp(s.bundle.recorded_at)},
                    {"summary", summary_json(s, LengthMode::kRawKilometers)}});
  }
  return JsonDoc{{"scenarios", std::move(list)}};
}

JsonDoc Service::network_geojson() const {
  JsonDoc features = JsonDoc::array();
  for (const auto& seg : network_.segments()) {
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", line_coords(seg.geometry)}}},
                        {"properties",
                         {{"kind", "segment"},
                          {"id", seg.id},
                          {"road_number", seg.road_number},
                          {"from_node", seg.from_node},
                          {"to_node", seg.to_node},
                          {"length_m", seg.length_m}}}});
  }
  for (const auto& n : network_.nodes()) {
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {n.coords.lon, n.coords.lat}}}},
                        {"properties", {{"kind", "node"}, {"id", n.id}}}});
  }
  return JsonDoc{{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

JsonDoc Service::weights_geojson(std::string_view name, LengthMode mode) const {
  const Scenario& s = scenario(name);
  JsonDoc features = JsonDoc::array();
  for (const auto& seg : network_.segments()) {
    const AssembledSegment& a = s.assembled(mode).at(seg.id);
    const SegmentAssignment& asg = s.assignment.at(seg.id);
    features.push_back(
        {{"type", "Feature"},
         {"geometry", {{"type", "LineString"}, {"coordinates", line_coords(seg.geometry)}}},
         {"properties",
          {{"id", seg.id},
           {"road_number", seg.road_number},
           {"length_m", seg.length_m},
           {"length", a.vector.length},
           {"traffic", a.vector.traffic},
           {"weather", a.vector.weather},
           {"events", a.vector.events},
           {"data_incomplete", a.data_incomplete()},
           {"weather_source", to_string(a.weather_source)},
           {"weather_station", asg.weather_station},
           {"traffic_station", asg.traffic_station},
           {"roadwork", to_string(a.events.roadwork)},
           {"accident", a.events.accident}}}});
  }
  return JsonDoc{{"type", "FeatureCollection"},
                 {"scenario", s.name()},
                 {"length_mode", to_string(mode)},
                 {"summary", summary_json(s, mode)},
                 {"features", std::move(features)}};
}

JsonDoc Service::route_geojson(const PlanResult& r) const {
  const Route& route = r.route;
  std::vector<LatLon> line;
  NodeId at = route.nodes.front();
  line.push_back(network_.node(at).coords);
  for (const auto& id : route.segments) {
    const RoadSegment& seg = network_.segment(id);
    std::vector<LatLon> g = seg.geometry;
    if (seg.from_node != at) std::reverse(g.begin(), g.end());
    line.insert(line.end(), g.begin() + 1, g.end());
    at = seg.from_node == at ? seg.to_node : seg.from_node;
  }
  if (line.size() == 1) line.push_back(line.front());

  const auto& p = r.request.profile;
  JsonDoc props;
  props["scenario"] = r.request.scenario;
  props["length_mode"] = to_string(r.request.length_mode);
  props["profile"] = {p.length(), p.traffic(), p.weather(), p.events()};
  props["from"] = {r.request.from.lat, r.request.from.lon};
  props["to"] = {r.request.to.lat, r.request.to.lon};
  props["from_node"] = route.nodes.front();
  props["to_node"] = route.nodes.back();
  props["from_snap_m"] = route.from_snap_m;
  props["to_snap_m"] = route.to_snap_m;
  props["nodes"] = route.nodes;
  props["segments"] = route.segments;
  props["total_cost"] = route.total_cost;
  props["total_length_m"] = route.total_length_m;
  props["breakdown"] = {{"length", route.breakdown.length},
                        {"traffic", route.breakdown.traffic},
                        {"weather", route.breakdown.weather},
                        {"events", route.breakdown.events}};
  props["data_incomplete"] = r.data_incomplete;
  return JsonDoc{{"type", "Feature"},
                 {"geometry", {{"type", "LineString"}, {"coordinates", line_coords(line)}}},
                 {"properties", std::move(props)}};
}

std::string route_text(const PlanResult& r) {
  const Route& route = r.route;
  const auto& p = r.request.profile;
  char buf[512];
  std::ostringstream out;
  std::snprintf(buf, sizeof(buf), "scenario %s, length mode %s, preferences [%.6f, %.6f, %.6f, %.6f]\n",
                r.request.scenario.c_str(), std::string(to_string(r.request.length_mode)).c_str(),
                p.length(), p.traffic(), p.weather(), p.events());
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "route: %zu segments, %.3f km, node %lld (snap %.1f m) to node %lld (snap %.1f m)\n",
                route.segments.size(), route.total_length_m / 1000.0,
                static_cast<long long>(route.nodes.front()), route.from_snap_m,
                static_cast<long long>(route.nodes.back()), route.to_snap_m);
  out << buf;
  std::snprintf(buf, sizeof(buf), "total cost %.6f\n", route.total_cost);
  out << buf;
  std::snprintf(buf, sizeof(buf), "breakdown: length %.6f, traffic %.6f, weather %.6f, events %.6f\n",
                route.breakdown.length, route.breakdown.traffic, route.breakdown.weather,
                route.breakdown.events);
  out << buf;
  out << "data-incomplete segments: " << r.data_incomplete << "\n";
  return out.str();
}

std::string to_text(const JsonDoc& doc) { return doc.dump(2) + "\n"; }

}  // namespace roadwx
