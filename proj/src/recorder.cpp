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

#include "roadwx/recorder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "bundle_json.hpp"
#include "httplib.h"
#include "roadwx/errors.hpp"

namespace roadwx {

using detail::Cursor;
using detail::Json;

namespace {

struct SensorInfo {
  std::string name;
  std::optional<std::string> unit;
};

struct Sample {
  double value = 0.0;
  Timestamp measured_at{};
};

StationKind kind_field(const Cursor& c) {
  const auto k = parse_station_kind(c.string("kind"));
  if (!k) c.at("kind").fail("unknown station kind");
  return *k;
}

class LogReplay {
 public:
  explicit LogReplay(Diagnostics* diag) : diag_(diag) {}

  void apply(const Cursor& msg) {
    const std::string type = msg.string("type");
    if (type == "header") {
      if (header_seen_) msg.fail("second header");
      header_seen_ = true;
      bundle_.name = msg.string("name");
      if (bundle_.name.empty()) msg.at("name").fail("empty scenario name");
      bundle_.recorded_at = detail::timestamp_field(msg, "recorded_at");
      return;
    }
    if (!header_seen_) msg.fail("message before the header");
    if (type == "station") {
      StationMeta meta = detail::parse_meta_entry(msg.at("station"));
      if (order_.count(meta.station_id)) msg.fail("station announced twice");
      order_[meta.station_id] = bundle_.metas.size();
      bundle_.metas.push_back(std::move(meta));
    } else if (type == "sensor") {
      const StationKind kind = kind_field(msg);
      const int id = static_cast<int>(msg.integer("sensor_id"));
      SensorInfo info{msg.string("name"), msg.opt_string("unit")};
      if (info.name.empty()) msg.at("name").fail("empty sensor name");
      sensors_[{kind, id}] = std::move(info);
    } else if (type == "data") {
      const StationId station = msg.integer("station_id");
      auto it = order_.find(station);
      if (it == order_.end()) msg.at("station_id").fail("data for an unannounced station");
      const StationKind kind = bundle_.metas[it->second].kind;
      const int sensor = static_cast<int>(msg.integer("sensor_id"));
      if (!sensors_.count({kind, sensor})) msg.at("sensor_id").fail("undeclared sensor");
      Sample s{msg.number("value"), detail::timestamp_field(msg, "measured_at")};
      auto& slot = data_[station];
      auto prev = slot.find(sensor);
      if (prev == slot.end() || s.measured_at >= prev->second.measured_at) slot[sensor] = s;
    } else if (type == "event") {
      TrafficEvent e = detail::parse_event_entry(msg.at("event"));
      if (!event_ids_.insert(e.event_id).second) msg.fail("duplicate event id");
      bundle_.events.push_back(std::move(e));
    } else {
      msg.at("type").fail("unknown message type '" + type + "'");
    }
  }

  ScenarioBundle finish(const std::string& source) {
    if (!header_seen_) throw BundleError(source + ": message log has no header");
    if (bundle_.metas.empty()) throw BundleError(source + ": message log names no station");
    for (const auto& meta : bundle_.metas) {
      StationSnapshot snap;
      snap.station_id = meta.station_id;
      snap.kind = meta.kind;
      snap.coords = meta.coords;
      snap.recorded_at = bundle_.recorded_at;
      if (auto it = data_.find(meta.station_id); it != data_.end()) {
        for (const auto& [sensor, sample] : it->second) {
          const SensorInfo& info = sensors_.at({meta.kind, sensor});
          snap.readings.push_back(
              SensorReading{sensor, info.name, sample.value, info.unit, sample.measured_at, false});
        }
      }
      if (snap.readings.empty() && diag_) {
        diag_->push_back("station " + std::to_string(meta.station_id) + " recorded no data");
      }
      (meta.kind == StationKind::kWeather ? bundle_.weather : bundle_.traffic)
          .push_back(std::move(snap));
    }
    const SensorMapping mapping = bundle_.effective_mapping();
    for (auto* list : {&bundle_.weather, &bundle_.traffic}) {
      for (auto& snap : *list) {
        for (auto& r : snap.readings) r.unknown = !mapping.find(r.name).has_value();
      }
    }
    return std::move(bundle_);
  }

 private:
  Diagnostics* diag_;
  bool header_seen_ = false;
  ScenarioBundle bundle_;
  std::map<StationId, std::size_t> order_;
  std::map<std::pair<StationKind, int>, SensorInfo> sensors_;
  std::map<StationId, std::map<int, Sample>> data_;
  std::set<std::string> event_ids_;
};

}  // namespace

ScenarioBundle replay_message_log(const std::string& text, const std::string& source,
                                  Diagnostics* diag) {
  LogReplay replay(diag);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json msg = detail::parse_json_text(line, source);
      replay.apply(Cursor(msg, source));
    } catch (const ParseError& e) {
      throw ParseError(source, lineno, e.message());
    }
  }
  return replay.finish(source);
}

ScenarioBundle replay_message_log_file(const std::filesystem::path& path, Diagnostics* diag) {
  return replay_message_log(detail::read_text_file(path), path.string(), diag);
}

LiveConfig parse_live_config(const std::filesystem::path& path) {
  const Json doc = detail::read_json_file(path);
  const Cursor root(doc, path.string());
  LiveConfig c;
  c.base_url = root.string("base_url");
  c.name = root.opt_string("name").value_or(c.name);
  c.timeout_s = root.opt_number("timeout_s").value_or(c.timeout_s);
  if (!(c.timeout_s > 0.0)) root.at("timeout_s").fail("must be positive");
  for (const char* key : {"weather_stations", "traffic_stations"}) {
    auto& out =
        std::string_view(key) == "weather_stations" ? c.weather_stations : c.traffic_stations;
    if (auto list = root.maybe(key)) {
      for (std::size_t i = 0; i < list->size(); ++i) out.push_back(list->at(i).integer());
    }
  }
  return c;
}

namespace {

class LiveClient {
 public:
  explicit LiveClient(const LiveConfig& config) : base_(config.base_url), client_(config.base_url) {
    const bool has_scheme = base_.rfind("http://", 0) == 0 || base_.rfind("https://", 0) == 0;
    if (!has_scheme || !client_.is_valid()) {
      throw ConfigError("invalid base URL '" + config.base_url + "'");
    }
    const auto sec = static_cast<time_t>(config.timeout_s);
    const auto usec = static_cast<time_t>((config.timeout_s - static_cast<double>(sec)) * 1e6);
    client_.set_connection_timeout(sec, usec);
    client_.set_read_timeout(sec, usec);
    client_.set_write_timeout(sec, usec);
  }

  Json get(const std::string& path) {
    auto res = client_.Get(path);
    if (!res) throw TransportError(base_ + path + ": " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw TransportError(base_ + path + ": HTTP status " + std::to_string(res->status));
    }
    return detail::parse_json_text(res->body, base_ + path);
  }

 private:
  std::string base_;
  httplib::Client client_;
};

LatLon feature_coords(const Cursor& feature) {
  const Cursor coords = feature.at("geometry").at("coordinates");
  if (coords.size() < 2) coords.fail("position needs lon and lat");
  const LatLon p{coords.at(std::size_t{1}).number(), coords.at(std::size_t{0}).number()};
  if (!is_valid(p)) coords.fail("coordinates out of range");
  return p;
}

std::optional<int> road_number(const Cursor& props) {
  auto addr = props.maybe("roadAddress");
  if (!addr) return std::nullopt;
  if (auto rn = addr->opt_integer("roadNumber")) return static_cast<int>(*rn);
  return std::nullopt;
}

std::vector<SensorReading> sensor_values(const Cursor& data) {
  std::vector<SensorReading> out;
  auto values = data.maybe("sensorValues");
  if (!values) return out;
  for (std::size_t i = 0; i < values->size(); ++i) {
    const Cursor v = values->at(i);
    SensorReading r;
    r.sensor_id = static_cast<int>(v.integer("id"));
    r.name = v.string("name");
    r.value = v.number("value");
    r.unit = v.opt_string("unit");
    r.measured_at = detail::timestamp_field(v, "measuredTime");
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const SensorReading& a, const SensorReading& b) {
    return a.sensor_id < b.sensor_id;
  });
  return out;
}

}  // namespace

ScenarioBundle fetch_live_snapshot(const LiveConfig& config, Diagnostics* diag) {
  if (config.weather_stations.empty() && config.traffic_stations.empty()) {
    throw ConfigError("no stations to record");
  }
  LiveClient client(config);
  ScenarioBundle b;
  b.name = config.name;

  auto fetch = [&](StationId id, StationKind kind) {
    const std::string prefix =
        kind == StationKind::kWeather ? "/api/weather/v1/stations/" : "/api/tms/v1/stations/";
    const std::string meta_path = prefix + std::to_string(id);
    const std::string data_path = meta_path + "/data";
    const Json meta_doc = client.get(meta_path);
    const Json data_doc = client.get(data_path);
    const Cursor feature(meta_doc, meta_path);
    const Cursor props = feature.at("properties");

    StationMeta meta;
    meta.station_id = id;
    meta.kind = kind;
    meta.coords = feature_coords(feature);
    meta.road_number = road_number(props);
    if (kind == StationKind::kTraffic) {
      meta.ffs_dir1 = props.opt_number("freeFlowSpeed1");
      meta.ffs_dir2 = props.opt_number("freeFlowSpeed2");
      meta.direction1_municipality = props.opt_string("direction1Municipality").value_or("");
      meta.direction2_municipality = props.opt_string("direction2Municipality").value_or("");
    }

    StationSnapshot snap;
    snap.station_id = id;
    snap.kind = kind;
    snap.coords = meta.coords;
    snap.readings = sensor_values(Cursor(data_doc, data_path));
    if (snap.readings.empty() && diag) {
      diag->push_back("station " + std::to_string(id) + " returned no sensor values");
    }
    b.metas.push_back(std::move(meta));
    (kind == StationKind::kWeather ? b.weather : b.traffic).push_back(std::move(snap));
  };
  for (StationId id : config.weather_stations) fetch(id, StationKind::kWeather);
  for (StationId id : config.traffic_stations) fetch(id, StationKind::kTraffic);

  Timestamp latest{};
  bool any = false;
  for (const auto& s : b.snapshots()) {
    for (const auto& r : s.readings) {
      latest = any ? std::max(latest, r.measured_at) : r.measured_at;
      any = true;
    }
  }
  b.recorded_at =
      any ? latest
          : std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  for (auto* list : {&b.weather, &b.traffic}) {
    for (auto& s : *list) s.recorded_at = b.recorded_at;
  }
  const SensorMapping& mapping = SensorMapping::defaults();
  for (auto* list : {&b.weather, &b.traffic}) {
    for (auto& s : *list) {
      for (auto& r : s.readings) r.unknown = !mapping.find(r.name).has_value();
    }
  }
  return b;
}

}  // namespace roadwx
