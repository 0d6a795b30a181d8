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

#include "roadwx/bundle.hpp"

#include <set>

#include "bundle_json.hpp"
#include "roadwx/errors.hpp"

namespace roadwx {

namespace fs = std::filesystem;
using detail::coords_field;
using detail::Cursor;
using detail::Json;
using detail::OrderedJson;
using detail::timestamp_field;

namespace {

constexpr const char* kScenarioFile = "scenario.json";
constexpr const char* kWeatherFile = "weather_stations.json";
constexpr const char* kTrafficFile = "traffic_stations.json";
constexpr const char* kMetaFile = "station_meta.json";
constexpr const char* kEventsFile = "events.json";
constexpr const char* kOverridesDir = "overrides";
constexpr const char* kMappingFile = "sensor_mapping.json";
constexpr const char* kFfsFile = "ffs_overrides.json";
constexpr const char* kCodesFile = "code_tables.json";
constexpr const char* kStationOverridesFile = "station_overrides.json";
constexpr const char* kScalesFile = "scales.json";

Json load(const fs::path& path, bool mandatory) {
  if (!fs::exists(path)) {
    if (mandatory) throw BundleError("bundle file missing: '" + path.string() + "'");
    return Json();
  }
  return detail::read_json_file(path);
}

}  // namespace

Timestamp detail::timestamp_field(const Cursor& c, std::string_view key) {
  const Cursor f = c.at(key);
  try {
    return parse_timestamp(f.string());
  } catch (const InvalidInput& e) {
    f.fail(e.what());
  }
}

LatLon detail::coords_field(const Cursor& c) {
  const LatLon p{c.number("lat"), c.number("lon")};
  if (!is_valid(p)) c.fail("coordinates out of range");
  return p;
}

namespace {

template <typename E, typename Parse>
E enum_field(const Cursor& c, Parse parse) {
  const auto v = parse(c.string());
  if (!v) c.fail("unknown value '" + c.string() + "'");
  return *v;
}

void check_version(const Cursor& root) {
  const auto v = root.integer("version");
  if (v != kOverrideFormatVersion) {
    root.at("version").fail("unsupported version " + std::to_string(v));
  }
}

std::vector<LatLon> geometry_field(const Cursor& g) {
  const std::string type = g.string("type");
  const Cursor coords = g.at("coordinates");
  auto position = [](const Cursor& c) {
    if (c.size() < 2) c.fail("position needs lon and lat");
    const LatLon p{c.at(std::size_t{1}).number(), c.at(std::size_t{0}).number()};
    if (!is_valid(p)) c.fail("coordinates out of range");
    return p;
  };
  if (type == "Point") return {position(coords)};
  if (type == "LineString") {
    std::vector<LatLon> pts;
    for (std::size_t i = 0; i < coords.size(); ++i) pts.push_back(position(coords.at(i)));
    if (pts.size() < 2) coords.fail("a LineString needs at least two positions");
    return pts;
  }
  g.at("type").fail("unsupported geometry type '" + type + "'");
}

OrderedJson geometry_json(const std::vector<LatLon>& pts) {
  OrderedJson g;
  if (pts.size() == 1) {
    g["type"] = "Point";
    g["coordinates"] = {pts[0].lon, pts[0].lat};
  } else {
    g["type"] = "LineString";
    g["coordinates"] = OrderedJson::array();
    for (const auto& p : pts) g["coordinates"].push_back({p.lon, p.lat});
  }
  return g;
}

std::vector<StationSnapshot> parse_snapshots(const Json& doc, const std::string& source,
                                             StationKind kind) {
  const Cursor root(doc, source);
  const Cursor list = root.at("stations");
  std::vector<StationSnapshot> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Cursor s = list.at(i);
    StationSnapshot snap;
    snap.kind = kind;
    snap.station_id = s.integer("station_id");
    snap.coords = coords_field(s);
    snap.recorded_at = timestamp_field(s, "recorded_at");
    const Cursor readings = s.at("readings");
    for (std::size_t k = 0; k < readings.size(); ++k) {
      const Cursor r = readings.at(k);
      SensorReading reading;
      reading.sensor_id = static_cast<int>(r.integer("sensor_id"));
      reading.name = r.string("name");
      if (reading.name.empty()) r.at("name").fail("empty sensor name");
      reading.value = r.number("value");
      reading.unit = r.opt_string("unit");
      reading.measured_at = timestamp_field(r, "measured_at");
      snap.readings.push_back(std::move(reading));
    }
    out.push_back(std::move(snap));
  }
  return out;
}

OrderedJson snapshots_json(const std::vector<StationSnapshot>& snaps) {
  OrderedJson list = OrderedJson::array();
  for (const auto& s : snaps) {
    OrderedJson js;
    js["station_id"] = s.station_id;
    js["lat"] = s.coords.lat;
    js["lon"] = s.coords.lon;
    js["recorded_at"] = format_timestamp(s.recorded_at);
    js["readings"] = OrderedJson::array();
    for (const auto& r : s.readings) {
      OrderedJson jr;
      jr["sensor_id"] = r.sensor_id;
      jr["name"] = r.name;
      jr["value"] = r.value;
      if (r.unit) jr["unit"] = *r.unit;
      jr["measured_at"] = format_timestamp(r.measured_at);
      js["readings"].push_back(std::move(jr));
    }
    list.push_back(std::move(js));
  }
  return OrderedJson{{"stations", std::move(list)}};
}

}  // namespace

StationMeta detail::parse_meta_entry(const Cursor& s) {
  StationMeta m;
  m.station_id = s.integer("station_id");
  m.kind = enum_field<StationKind>(s.at("kind"), parse_station_kind);
  m.coords = coords_field(s);
  if (auto rn = s.opt_integer("road_number")) m.road_number = static_cast<int>(*rn);
  m.ffs_dir1 = s.opt_number("ffs_dir1");
  m.ffs_dir2 = s.opt_number("ffs_dir2");
  m.capacity_dir1 = s.opt_number("capacity_dir1");
  m.capacity_dir2 = s.opt_number("capacity_dir2");
  m.direction1_municipality = s.opt_string("direction1_municipality").value_or("");
  m.direction2_municipality = s.opt_string("direction2_municipality").value_or("");
  m.direction = static_cast<int>(s.opt_integer("direction").value_or(1));
  if (m.direction != 1 && m.direction != 2) s.at("direction").fail("must be 1 or 2");
  return m;
}

detail::OrderedJson detail::meta_entry_json(const StationMeta& m) {
  OrderedJson j;
  j["station_id"] = m.station_id;
  j["kind"] = to_string(m.kind);
  j["lat"] = m.coords.lat;
  j["lon"] = m.coords.lon;
  if (m.road_number) j["road_number"] = *m.road_number;
  if (m.ffs_dir1) j["ffs_dir1"] = *m.ffs_dir1;
  if (m.ffs_dir2) j["ffs_dir2"] = *m.ffs_dir2;
  if (m.capacity_dir1) j["capacity_dir1"] = *m.capacity_dir1;
  if (m.capacity_dir2) j["capacity_dir2"] = *m.capacity_dir2;
  if (!m.direction1_municipality.empty()) j["direction1_municipality"] = m.direction1_municipality;
  if (!m.direction2_municipality.empty()) j["direction2_municipality"] = m.direction2_municipality;
  j["direction"] = m.direction;
  return j;
}

TrafficEvent detail::parse_event_entry(const Cursor& c) {
  TrafficEvent e;
  e.event_id = c.string("event_id");
  e.situation_id = c.opt_string("situation_id");
  e.kind = enum_field<EventKind>(c.at("kind"), parse_event_kind);
  if (auto sev = c.maybe("severity")) {
    e.severity = enum_field<RoadWorkSeverity>(*sev, parse_road_work_severity);
  }
  if (auto segs = c.maybe("segments")) {
    for (std::size_t k = 0; k < segs->size(); ++k) e.segments.push_back(segs->at(k).string());
  }
  if (auto g = c.maybe("geometry")) e.geometry = geometry_field(*g);
  e.published_at = timestamp_field(c, "published_at");
  e.superseded_by = c.opt_string("superseded_by");
  try {
    validate_event(e);
  } catch (const InvalidInput& err) {
    c.fail(err.what());
  }
  return e;
}

detail::OrderedJson detail::event_entry_json(const TrafficEvent& e) {
  OrderedJson j;
  j["event_id"] = e.event_id;
  if (e.situation_id) j["situation_id"] = *e.situation_id;
  j["kind"] = to_string(e.kind);
  if (e.severity) j["severity"] = to_string(*e.severity);
  if (!e.segments.empty()) j["segments"] = e.segments;
  if (!e.geometry.empty()) j["geometry"] = geometry_json(e.geometry);
  j["published_at"] = format_timestamp(e.published_at);
  if (e.superseded_by) j["superseded_by"] = *e.superseded_by;
  return j;
}

namespace {

std::vector<StationMeta> parse_metas(const Json& doc, const std::string& source) {
  const Cursor list = Cursor(doc, source).at("stations");
  std::vector<StationMeta> out;
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(detail::parse_meta_entry(list.at(i)));
  return out;
}

OrderedJson metas_json(const std::vector<StationMeta>& metas) {
  OrderedJson list = OrderedJson::array();
  for (const auto& m : metas) list.push_back(detail::meta_entry_json(m));
  return OrderedJson{{"stations", std::move(list)}};
}

std::vector<TrafficEvent> parse_events(const Json& doc, const std::string& source) {
  const Cursor list = Cursor(doc, source).at("events");
  std::vector<TrafficEvent> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(detail::parse_event_entry(list.at(i)));
  return out;
}

OrderedJson events_json(const std::vector<TrafficEvent>& events) {
  OrderedJson list = OrderedJson::array();
  for (const auto& e : events) list.push_back(detail::event_entry_json(e));
  return OrderedJson{{"events", std::move(list)}};
}

SensorMappingOverride parse_mapping(const Json& doc, const std::string& source) {
  const Cursor root(doc, source);
  check_version(root);
  SensorMappingOverride o;
  if (auto r = root.maybe("replace_defaults")) o.replace_defaults = r->boolean();
  const Cursor m = root.at("mapping");
  m.expect_object();
  for (const auto& [name, _] : m.json().items()) {
    o.entries.emplace(name, enum_field<CanonicalId>(m.at(name), parse_canonical_id));
  }
  return o;
}

OrderedJson mapping_json(const SensorMappingOverride& o) {
  OrderedJson m = OrderedJson::object();
  for (const auto& [name, id] : o.entries) m[name] = to_string(id);
  return OrderedJson{{"version", kOverrideFormatVersion},
                     {"replace_defaults", o.replace_defaults},
                     {"mapping", m}};
}

FfsOverrides parse_ffs(const Json& doc, const std::string& source) {
  const Cursor root(doc, source);
  check_version(root);
  const Cursor list = root.at("stations");
  FfsOverrides out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Cursor c = list.at(i);
    const StationId id = c.integer("station_id");
    if (!out.emplace(id, FfsOverride{c.number("ffs_dir1"), c.number("ffs_dir2")}).second) {
      c.fail("duplicate station " + std::to_string(id));
    }
  }
  return out;
}

OrderedJson ffs_json(const FfsOverrides& o) {
  OrderedJson list = OrderedJson::array();
  for (const auto& [id, f] : o) {
    list.push_back({{"station_id", id}, {"ffs_dir1", f.ffs_dir1}, {"ffs_dir2", f.ffs_dir2}});
  }
  return OrderedJson{{"version", kOverrideFormatVersion}, {"stations", std::move(list)}};
}

template <typename E, typename Parse>
std::map<int, E> parse_code_table(const Cursor& root, std::string_view key, Parse parse) {
  std::map<int, E> out;
  auto table = root.maybe(key);
  if (!table) return out;
  table->expect_object();
  for (const auto& [code, _] : table->json().items()) {
    const Cursor entry = table->at(code);
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(code, &used);
      if (used != code.size()) throw std::invalid_argument(code);
    } catch (const std::exception&) {
      entry.fail("code must be an integer");
    }
    out.emplace(value, enum_field<E>(entry, parse));
  }
  return out;
}

template <typename E>
OrderedJson code_table_json(const std::map<int, E>& table) {
  OrderedJson j = OrderedJson::object();
  for (const auto& [code, v] : table) j[std::to_string(code)] = to_string(v);
  return j;
}

CodeTablesOverride parse_codes(const Json& doc, const std::string& source) {
  const Cursor root(doc, source);
  check_version(root);
  CodeTablesOverride o;
  if (auto r = root.maybe("replace_defaults")) o.replace_defaults = r->boolean();
  o.surface_state = parse_code_table<SurfaceState>(root, "surface_state", parse_surface_state);
  o.precipitation_type =
      parse_code_table<PrecipitationType>(root, "precipitation_type", parse_precipitation_type);
  o.coarse_precipitation = parse_code_table<CoarsePrecipitation>(root, "coarse_precipitation",
                                                                 parse_coarse_precipitation);
  return o;
}

OrderedJson codes_json(const CodeTablesOverride& o) {
  return OrderedJson{{"version", kOverrideFormatVersion},
                     {"replace_defaults", o.replace_defaults},
                     {"surface_state", code_table_json(o.surface_state)},
                     {"precipitation_type", code_table_json(o.precipitation_type)},
                     {"coarse_precipitation", code_table_json(o.coarse_precipitation)}};
}

AssignmentOverrides parse_station_overrides(const Json& doc, const std::string& source) {
  const Cursor root(doc, source);
  check_version(root);
  AssignmentOverrides o;
  auto segment_map = [&](std::string_view key, std::map<std::string, StationId>& out) {
    auto m = root.maybe(key);
    if (!m) return;
    m->expect_object();
    for (const auto& [seg, _] : m->json().items()) out.emplace(seg, m->at(seg).integer());
  };
  segment_map("segment_weather", o.segment_weather);
  segment_map("segment_traffic", o.segment_traffic);
  if (auto m = root.maybe("secondary")) {
    m->expect_object();
    for (const auto& [id, _] : m->json().items()) {
      const Cursor entry = m->at(id);
      StationId key = 0;
      try {
        std::size_t used = 0;
        key = std::stoll(id, &used);
        if (used != id.size()) throw std::invalid_argument(id);
      } catch (const std::exception&) {
        entry.fail("station id must be an integer");
      }
      o.secondary.emplace(key, entry.integer());
    }
  }
  o.same_road_radius_m = root.opt_number("same_road_radius_m");
  if (o.same_road_radius_m && !(*o.same_road_radius_m > 0.0)) {
    root.at("same_road_radius_m").fail("must be positive");
  }
  return o;
}

OrderedJson station_overrides_json(const AssignmentOverrides& o) {
  OrderedJson j{{"version", kOverrideFormatVersion}};
  j["segment_weather"] = OrderedJson::object();
  for (const auto& [seg, id] : o.segment_weather) j["segment_weather"][seg] = id;
  j["segment_traffic"] = OrderedJson::object();
  for (const auto& [seg, id] : o.segment_traffic) j["segment_traffic"][seg] = id;
  j["secondary"] = OrderedJson::object();
  for (const auto& [id, sec] : o.secondary) j["secondary"][std::to_string(id)] = sec;
  if (o.same_road_radius_m) j["same_road_radius_m"] = *o.same_road_radius_m;
  return j;
}

std::vector<LinearScale> parse_scales(const Json& doc, const std::string& source) {
  const Cursor root(doc, source);
  check_version(root);
  const Cursor list = root.at("scales");
  std::vector<LinearScale> out;
  ScaleRegistry check = ScaleRegistry::defaults();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Cursor c = list.at(i);
    LinearScale s{c.string("attribute"), c.number("weight_zero_at"), c.number("weight_one_at")};
    if (!check.contains(s.attribute_id))
      c.at("attribute").fail("unknown scale '" + s.attribute_id + "'");
    try {
      check.set(s);
    } catch (const Error& e) {
      c.fail(e.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

OrderedJson scales_json(const std::vector<LinearScale>& scales) {
  OrderedJson list = OrderedJson::array();
  for (const auto& s : scales) {
    list.push_back(
        {{"attribute", s.attribute_id}, {"weight_zero_at", s.v_zero}, {"weight_one_at", s.v_one}});
  }
  return OrderedJson{{"version", kOverrideFormatVersion}, {"scales", std::move(list)}};
}

void check_consistency(const ScenarioBundle& b, Diagnostics* diag) {
  std::map<StationId, StationKind> meta_kind;
  for (const auto& m : b.metas) {
    if (!meta_kind.emplace(m.station_id, m.kind).second) {
      throw BundleError("station " + std::to_string(m.station_id) +
                        " appears twice in station metadata");
    }
  }
  std::set<StationId> seen;
  for (const auto& s : b.snapshots()) {
    if (!seen.insert(s.station_id).second) {
      throw BundleError("station " + std::to_string(s.station_id) +
                        " has more than one snapshot (ids must be unique across kinds)");
    }
    auto it = meta_kind.find(s.station_id);
    if (it == meta_kind.end()) {
      if (diag) diag->push_back("station " + std::to_string(s.station_id) + " has no metadata");
    } else if (it->second != s.kind) {
      throw BundleError("station " + std::to_string(s.station_id) +
                        " is listed with a different kind in station metadata");
    }
  }
  std::set<std::string> ids;
  for (const auto& e : b.events) {
    if (!ids.insert(e.event_id).second)
      throw BundleError("duplicate event id '" + e.event_id + "'");
  }
}

}  // namespace

std::vector<StationSnapshot> ScenarioBundle::snapshots() const {
  std::vector<StationSnapshot> out = weather;
  out.insert(out.end(), traffic.begin(), traffic.end());
  return out;
}

SensorMapping ScenarioBundle::effective_mapping() const {
  if (!overrides.sensor_mapping) return SensorMapping::defaults();
  SensorMapping m =
      overrides.sensor_mapping->replace_defaults ? SensorMapping() : SensorMapping::defaults();
  for (const auto& [name, id] : overrides.sensor_mapping->entries) m.set(name, id);
  return m;
}

CodeTables ScenarioBundle::effective_codes() const {
  if (!overrides.code_tables) return CodeTables::defaults();
  const auto& o = *overrides.code_tables;
  CodeTables t = o.replace_defaults ? CodeTables() : CodeTables::defaults();
  for (const auto& [c, v] : o.surface_state) t.surface_state.insert_or_assign(c, v);
  for (const auto& [c, v] : o.precipitation_type) t.precipitation_type.insert_or_assign(c, v);
  for (const auto& [c, v] : o.coarse_precipitation) t.coarse_precipitation.insert_or_assign(c, v);
  return t;
}

ScaleRegistry ScenarioBundle::effective_scales() const {
  ScaleRegistry r = ScaleRegistry::defaults();
  if (overrides.scales) {
    for (const auto& s : *overrides.scales) r.set(s);
  }
  return r;
}

ScenarioBundle parse_scenario_bundle(const fs::path& dir, Diagnostics* diag) {
  if (!fs::is_directory(dir)) throw BundleError("not a bundle directory: '" + dir.string() + "'");
  ScenarioBundle b;

  const fs::path scenario_path = dir / kScenarioFile;
  const Json scenario = load(scenario_path, true);
  const Cursor root(scenario, scenario_path.string());
  b.format_version = static_cast<int>(root.integer("format_version"));
  if (b.format_version != kBundleFormatVersion) {
    root.at("format_version").fail("unsupported format version");
  }
  b.name = root.string("name");
  if (b.name.empty()) root.at("name").fail("empty scenario name");
  b.recorded_at = timestamp_field(root, "recorded_at");

  const fs::path weather_path = dir / kWeatherFile;
  b.weather =
      parse_snapshots(load(weather_path, true), weather_path.string(), StationKind::kWeather);
  const fs::path traffic_path = dir / kTrafficFile;
  b.traffic =
      parse_snapshots(load(traffic_path, true), traffic_path.string(), StationKind::kTraffic);
  const fs::path meta_path = dir / kMetaFile;
  b.metas = parse_metas(load(meta_path, true), meta_path.string());
  const fs::path events_path = dir / kEventsFile;
  b.events = parse_events(load(events_path, true), events_path.string());

  const fs::path ov = dir / kOverridesDir;
  if (Json j = load(ov / kMappingFile, false); !j.is_null()) {
    b.overrides.sensor_mapping = parse_mapping(j, (ov / kMappingFile).string());
  }
  if (Json j = load(ov / kFfsFile, false); !j.is_null()) {
    b.overrides.ffs = parse_ffs(j, (ov / kFfsFile).string());
  }
  if (Json j = load(ov / kCodesFile, false); !j.is_null()) {
    b.overrides.code_tables = parse_codes(j, (ov / kCodesFile).string());
  }
  if (Json j = load(ov / kStationOverridesFile, false); !j.is_null()) {
    b.overrides.stations = parse_station_overrides(j, (ov / kStationOverridesFile).string());
  }
  if (Json j = load(ov / kScalesFile, false); !j.is_null()) {
    b.overrides.scales = parse_scales(j, (ov / kScalesFile).string());
  }

  check_consistency(b, diag);
  if (b.overrides.ffs) check_ffs_overrides(b.metas, *b.overrides.ffs, diag);

  const SensorMapping mapping = b.effective_mapping();
  for (auto* list : {&b.weather, &b.traffic}) {
    for (auto& snap : *list) {
      for (auto& r : snap.readings) {
        r.unknown = !mapping.find(r.name).has_value();
        if (r.unknown && diag) {
          diag->push_back("station " + std::to_string(snap.station_id) + ": unknown sensor '" +
                          r.name + "'");
        }
      }
    }
  }
  return b;
}

void write_scenario_bundle(const ScenarioBundle& b, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw BundleError("cannot create '" + dir.string() + "': " + ec.message());
  using detail::dump;
  using detail::write_text_file;
  write_text_file(dir / kScenarioFile,
                  dump(OrderedJson{{"format_version", b.format_version},
                                   {"name", b.name},
                                   {"recorded_at", format_timestamp(b.recorded_at)}}));
  write_text_file(dir / kWeatherFile, dump(snapshots_json(b.weather)));
  write_text_file(dir / kTrafficFile, dump(snapshots_json(b.traffic)));
  write_text_file(dir / kMetaFile, dump(metas_json(b.metas)));
  write_text_file(dir / kEventsFile, dump(events_json(b.events)));

  const auto& o = b.overrides;
  const bool any = o.sensor_mapping || o.ffs || o.code_tables || o.stations || o.scales;
  const fs::path ov = dir / kOverridesDir;
  if (!any) return;
  fs::create_directories(ov, ec);
  if (ec) throw BundleError("cannot create '" + ov.string() + "': " + ec.message());
  if (o.sensor_mapping) write_text_file(ov / kMappingFile, dump(mapping_json(*o.sensor_mapping)));
  if (o.ffs) write_text_file(ov / kFfsFile, dump(ffs_json(*o.ffs)));
  if (o.code_tables) write_text_file(ov / kCodesFile, dump(codes_json(*o.code_tables)));
  if (o.stations)
    write_text_file(ov / kStationOverridesFile, dump(station_overrides_json(*o.stations)));
  if (o.scales) write_text_file(ov / kScalesFile, dump(scales_json(*o.scales)));
}

BundleCounts count_records(const ScenarioBundle& b) {
  BundleCounts c;
  c.weather_stations = b.weather.size();
  c.traffic_stations = b.traffic.size();
  c.metas = b.metas.size();
  c.events = b.events.size();
  for (const auto& s : b.snapshots()) {
    c.readings += s.readings.size();
    for (const auto& r : s.readings) c.unknown_readings += r.unknown ? 1 : 0;
  }
  return c;
}

}  // namespace roadwx
