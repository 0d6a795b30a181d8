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

#include "roadwx/ingest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "roadwx/errors.hpp"

namespace roadwx {

namespace {

constexpr std::array<std::string_view, kCanonicalIdCount> kCanonicalNames = {
    "surface_state",      "road_temperature",
    "freezing_point",     "surface_dew_diff",
    "surface_frost_diff", "friction",
    "moisture",           "snow_depth",
    "relative_humidity",  "precipitation_intensity",
    "precipitation_type", "coarse_precipitation",
    "visibility",         "air_dew_diff",
    "air_frost_diff",     "air_temperature",
    "average_wind",       "maximum_wind",
    "ffs_percent",        "occupancy_percent",
    "average_speed",
};

template <typename T>
int code_for(const std::map<int, T>& table, T value) {
  for (const auto& [code, v] : table) {
    if (v == value) return code;
  }
  throw ConfigError("code table has no code for '" + std::string(to_string(value)) + "'");
}

template <typename T>
void keep_worst(std::optional<T>& slot, T candidate) {
  if (!slot || static_cast<int>(candidate) > static_cast<int>(*slot)) slot = candidate;
}

bool is_accident(EventKind k) {
  return k == EventKind::kAccidentPreliminary || k == EventKind::kAccidentReport ||
         k == EventKind::kGeneralAccident;
}

// Events belong to the same situation when their situation ids match or,
// lacking ids, when they cover the same place.
bool same_situation(const TrafficEvent& a, const TrafficEvent& b) {
  if (a.situation_id && b.situation_id) return *a.situation_id == *b.situation_id;
  if (a.situation_id || b.situation_id) return false;
  if (!a.segments.empty() || !b.segments.empty()) {
    std::set<std::string> sa(a.segments.begin(), a.segments.end());
    std::set<std::string> sb(b.segments.begin(), b.segments.end());
    if (sa == sb) return true;
  }
  return !a.geometry.empty() && a.geometry == b.geometry;
}

}  // namespace

std::string_view to_string(StationKind kind) {
  return kind == StationKind::kWeather ? "weather" : "traffic";
}

std::optional<StationKind> parse_station_kind(std::string_view name) {
  if (name == "weather") return StationKind::kWeather;
  if (name == "traffic") return StationKind::kTraffic;
  return std::nullopt;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kRoadWork: return "road_work";
    case EventKind::kAccidentPreliminary: return "accident_preliminary";
    case EventKind::kAccidentReport: return "accident_report";
    case EventKind::kGeneralAccident: return "general_accident";
    case EventKind::kEnded: return "ended";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (auto k : {EventKind::kRoadWork, EventKind::kAccidentPreliminary, EventKind::kAccidentReport,
                 EventKind::kGeneralAccident, EventKind::kEnded}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void validate_event(const TrafficEvent& event) {
  if (event.kind == EventKind::kRoadWork && !event.severity) {
    throw InvalidInput("road work event '" + event.event_id + "' has no severity");
  }
  if (event.kind != EventKind::kRoadWork && event.severity) {
    throw InvalidInput("event '" + event.event_id + "' of kind " +
                       std::string(to_string(event.kind)) + " cannot carry a severity");
  }
}

std::string_view to_string(CanonicalId id) { return kCanonicalNames[static_cast<std::size_t>(id)]; }

std::optional<CanonicalId> parse_canonical_id(std::string_view name) {
  for (std::size_t i = 0; i < kCanonicalNames.size(); ++i) {
    if (kCanonicalNames[i] == name) return static_cast<CanonicalId>(i);
  }
  return std::nullopt;
}

bool is_categorical(CanonicalId id) {
  return id == CanonicalId::kSurfaceState || id == CanonicalId::kPrecipitationType ||
         id == CanonicalId::kCoarsePrecipitation;
}

std::optional<double> CanonicalAttributes::get(CanonicalId id) const {
  auto it = values.find(id);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

bool CanonicalAttributes::empty() const {
  return values.empty() && !surface_state && !precipitation_type && !coarse_precipitation;
}

const SensorMapping& SensorMapping::defaults() {
  static const SensorMapping mapping = [] {
    std::map<std::string, CanonicalId, std::less<>> m = {
        {"KELI_1", CanonicalId::kSurfaceState},
        {"TIE_1", CanonicalId::kRoadTemperature},
        {"TIE_2", CanonicalId::kRoadTemperature},
        {"TIE_3", CanonicalId::kRoadTemperature},
        {"TIE_4", CanonicalId::kRoadTemperature},
        {"JÄÄTYMISPISTE_1", CanonicalId::kFreezingPoint},
        {"KASTEPISTE_ERO_TIE", CanonicalId::kSurfaceDewDiff},
        {"HÄRMISTYMISPISTE_ERO_TIE", CanonicalId::kSurfaceFrostDiff},
        {"KITKA3_LUKU", CanonicalId::kFriction},
        {"VEDEN_MÄÄRÄ1", CanonicalId::kMoisture},
        {"LUMEN_SYVYYS", CanonicalId::kSnowDepth},
        {"ILMAN_KOSTEUS", CanonicalId::kRelativeHumidity},
        {"SADE_INTENSITEETTI", CanonicalId::kPrecipitationIntensity},
        {"SATEEN_OLOMUOTO_PWDXX", CanonicalId::kPrecipitationType},
        {"SADE", CanonicalId::kCoarsePrecipitation},
        {"NÄKYVYYS_M", CanonicalId::kVisibility},
        {"KASTEPISTE_ERO_ILMA", CanonicalId::kAirDewDiff},
        {"HÄRMISTYMISPISTE_ERO_ILMA", CanonicalId::kAirFrostDiff},
        {"ILMA", CanonicalId::kAirTemperature},
        {"KESKITUULI", CanonicalId::kAverageWind},
        {"MAKSIMITUULI", CanonicalId::kMaximumWind},
        {"KESKINOPEUS_5MIN_LIUKUVA_SUUNTA1_VVAPAAS1", CanonicalId::kFfsPercent},
        {"KESKINOPEUS_5MIN_LIUKUVA_SUUNTA2_VVAPAAS2", CanonicalId::kFfsPercent},
        {"OHITUKSET_5MIN_LIUKUVA_SUUNTA1_MS1", CanonicalId::kOccupancyPercent},
        {"OHITUKSET_5MIN_LIUKUVA_SUUNTA2_MS2", CanonicalId::kOccupancyPercent},
        {"KESKINOPEUS_5MIN_LIUKUVA_SUUNTA1", CanonicalId::kAverageSpeed},
        {"KESKINOPEUS_5MIN_LIUKUVA_SUUNTA2", CanonicalId::kAverageSpeed},
    };
    for (std::size_t i = 0; i < kCanonicalIdCount; ++i) {
      m.emplace(std::string(kCanonicalNames[i]), static_cast<CanonicalId>(i));
    }
    return SensorMapping(std::move(m));
  }();
  return mapping;
}

std::optional<CanonicalId> SensorMapping::find(std::string_view sensor_name) const {
  auto it = entries_.find(sensor_name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

CanonicalAttributes canonicalize(const std::vector<SensorReading>& readings,
                                 const SensorMapping& mapping, const CodeTables& codes,
                                 Diagnostics* diag) {
  CanonicalAttributes out;
  std::map<CanonicalId, std::vector<double>> samples;
  for (const auto& r : readings) {
    const auto id = mapping.find(r.name);
    if (!id) {
      if (diag) diag->push_back("dropped unmapped sensor '" + r.name + "'");
      continue;
    }
    if (!std::isfinite(r.value)) {
      if (diag) diag->push_back("dropped non-finite value of '" + r.name + "'");
      continue;
    }
    bool decoded = true;
    switch (*id) {
      case CanonicalId::kSurfaceState:
        if (auto s = codes.surface(r.value))
          keep_worst(out.surface_state, *s);
        else
          decoded = false;
        break;
      case CanonicalId::kPrecipitationType:
        if (auto p = codes.precipitation(r.value))
          keep_worst(out.precipitation_type, *p);
        else
          decoded = false;
        break;
      case CanonicalId::kCoarsePrecipitation:
        if (auto p = codes.coarse(r.value))
          keep_worst(out.coarse_precipitation, *p);
        else
          decoded = false;
        break;
      default: samples[*id].push_back(r.value);
    }
    if (!decoded && diag) {
      diag->push_back("unknown code " + std::to_string(r.value) + " for '" + r.name + "'");
    }
  }
  for (auto& [id, vs] : samples) {
    // Sorted so the mean does not depend on reading order.
    std::sort(vs.begin(), vs.end());
    double sum = 0.0;
    for (double v : vs) sum += v;
    out.values.emplace(id, sum / static_cast<double>(vs.size()));
  }
  return out;
}

std::vector<SensorReading> to_readings(const CanonicalAttributes& attrs, const CodeTables& codes,
                                       Timestamp measured_at) {
  std::vector<SensorReading> out;
  auto push = [&](CanonicalId id, double value) {
    SensorReading r;
    r.sensor_id = static_cast<int>(id) + 1;
    r.name = std::string(to_string(id));
    r.value = value;
    r.measured_at = measured_at;
    out.push_back(std::move(r));
  };
  if (attrs.surface_state) {
    push(CanonicalId::kSurfaceState, code_for(codes.surface_state, *attrs.surface_state));
  }
  if (attrs.precipitation_type) {
    push(CanonicalId::kPrecipitationType,
         code_for(codes.precipitation_type, *attrs.precipitation_type));
  }
  if (attrs.coarse_precipitation) {
    push(CanonicalId::kCoarsePrecipitation,
         code_for(codes.coarse_precipitation, *attrs.coarse_precipitation));
  }
  for (const auto& [id, v] : attrs.values) push(id, v);
  return out;
}

std::vector<SensorReading> select_direction(const std::vector<SensorReading>& readings,
                                            int direction) {
  const std::string other = direction == 2 ? "SUUNTA1" : "SUUNTA2";
  std::vector<SensorReading> out;
  for (const auto& r : readings) {
    if (r.name.find(other) == std::string::npos) out.push_back(r);
  }
  return out;
}

std::optional<Precipitation> resolve_precipitation(const CanonicalAttributes& attrs) {
  if (attrs.precipitation_type) return Precipitation(*attrs.precipitation_type);
  if (attrs.coarse_precipitation) return Precipitation(*attrs.coarse_precipitation);
  return std::nullopt;
}

UnitWeight precipitation_weight(const Precipitation& p) {
  return std::visit(
      [](auto v) {
        if constexpr (std::is_same_v<decltype(v), PrecipitationType>) {
          return precipitation_type_weight(v);
        } else {
          return coarse_precipitation_weight(v);
        }
      },
      p);
}

std::optional<double> resolve_point_difference(const CanonicalAttributes& attrs,
                                               PointContext context,
                                               std::optional<double> reference_temp) {
  const bool surface = context == PointContext::kSurface;
  const auto dew = attrs.get(surface ? CanonicalId::kSurfaceDewDiff : CanonicalId::kAirDewDiff);
  const auto frost =
      attrs.get(surface ? CanonicalId::kSurfaceFrostDiff : CanonicalId::kAirFrostDiff);
  if (!dew && !frost) return std::nullopt;
  if (reference_temp && !std::isfinite(*reference_temp)) {
    throw InvalidInput("reference temperature must be finite");
  }
  const bool above_freezing = !reference_temp || *reference_temp > 0.0;
  if (above_freezing) return dew ? dew : frost;
  return frost ? frost : dew;
}

double freezing_point_delta(double surface_temp, double freezing_point) {
  if (!std::isfinite(surface_temp) || !std::isfinite(freezing_point)) {
    throw InvalidInput("freezing point delta needs finite temperatures");
  }
  return surface_temp - freezing_point;
}

std::map<std::string, bool> accident_active(const std::vector<TrafficEvent>& events,
                                            Timestamp now) {
  std::map<std::string, bool> active;
  for (const auto& e : events) {
    if (!is_accident(e.kind)) continue;
    for (const auto& s : e.segments) active.try_emplace(s, false);
  }

  auto cleared = [&](const TrafficEvent& e) {
    for (const auto& other : events) {
      if (other.kind != EventKind::kEnded || other.published_at > now) continue;
      if (other.published_at < e.published_at) continue;
      if (same_situation(e, other)) return true;
      if (e.superseded_by && *e.superseded_by == other.event_id) return true;
    }
    return false;
  };

  for (const auto& e : events) {
    if (!is_accident(e.kind) || e.published_at > now) continue;
    bool on = false;
    if (e.kind == EventKind::kAccidentPreliminary) {
      on = now - e.published_at <= kPreliminaryAccidentWindow && !cleared(e);
    } else {
      on = !cleared(e);
    }
    if (!on) continue;
    for (const auto& s : e.segments) active[s] = true;
  }
  return active;
}

RoadWorkSeverity roadwork_severity_for_segment(const std::vector<TrafficEvent>& events,
                                               std::string_view segment_id) {
  RoadWorkSeverity worst = RoadWorkSeverity::kNone;
  for (const auto& e : events) {
    if (e.kind != EventKind::kRoadWork || !e.severity) continue;
    if (std::find(e.segments.begin(), e.segments.end(), segment_id) == e.segments.end()) continue;
    if (static_cast<int>(*e.severity) > static_cast<int>(worst)) worst = *e.severity;
  }
  return worst;
}

StationMeta apply_ffs_correction(const StationMeta& meta, const FfsOverrides& overrides,
                                 Diagnostics* diag) {
  auto it = overrides.find(meta.station_id);
  if (it == overrides.end()) return meta;
  const FfsOverride& o = it->second;
  if (!(o.ffs_dir1 > 0.0) || !(o.ffs_dir2 > 0.0) || !std::isfinite(o.ffs_dir1) ||
      !std::isfinite(o.ffs_dir2)) {
    if (diag) {
      diag->push_back("ignored non-positive FFS override for station " +
                      std::to_string(meta.station_id));
    }
    return meta;
  }
  StationMeta out = meta;
  out.ffs_dir1 = o.ffs_dir1;
  out.ffs_dir2 = o.ffs_dir2;
  return out;
}

void check_ffs_overrides(const std::vector<StationMeta>& metas, const FfsOverrides& overrides,
                         Diagnostics* diag) {
  if (!diag) return;
  for (const auto& [id, o] : overrides) {
    const bool known = std::any_of(metas.begin(), metas.end(), [id = id](const StationMeta& m) {
      return m.station_id == id && m.kind == StationKind::kTraffic;
    });
    if (!known)
      diag->push_back("FFS override for unknown station " + std::to_string(id) + " ignored");
  }
}

}  // namespace roadwx
