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

// Station snapshots, metadata and traffic events, plus the rules that turn
// raw sensor readings into one clean value per canonical attribute.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "roadwx/geo.hpp"
#include "roadwx/time.hpp"
#include "roadwx/weights.hpp"

namespace roadwx {

using StationId = std::int64_t;

// Free-form warnings collected while processing (dropped readings, ignored
// overrides, ...). Callers decide whether to print them.
using Diagnostics = std::vector<std::string>;

enum class StationKind : std::uint8_t { kWeather, kTraffic };
std::string_view to_string(StationKind kind);
std::optional<StationKind> parse_station_kind(std::string_view name);

struct SensorReading {
  int sensor_id = 1;
  std::string name;
  double value = 0.0;
  std::optional<std::string> unit;
  Timestamp measured_at{};
  // Set on load when the name is not in the sensor mapping.
  bool unknown = false;

  friend bool operator==(const SensorReading&, const SensorReading&) = default;
};

struct StationSnapshot {
  StationId station_id = 0;
  StationKind kind = StationKind::kWeather;
  LatLon coords;
  std::vector<SensorReading> readings;
  Timestamp recorded_at{};

  friend bool operator==(const StationSnapshot&, const StationSnapshot&) = default;
};

struct StationMeta {
  StationId station_id = 0;
  StationKind kind = StationKind::kWeather;
  LatLon coords;
  std::optional<int> road_number;
  std::optional<double> ffs_dir1;  // km/h
  std::optional<double> ffs_dir2;
  std::optional<double> capacity_dir1;  // vehicles/h
  std::optional<double> capacity_dir2;
  std::string direction1_municipality;
  std::string direction2_municipality;
  // Which direction's measurements are used (1 or 2).
  int direction = 1;

  std::optional<double> selected_ffs() const { return direction == 2 ? ffs_dir2 : ffs_dir1; }

  friend bool operator==(const StationMeta&, const StationMeta&) = default;
};

enum class EventKind : std::uint8_t {
  kRoadWork,
  kAccidentPreliminary,
  kAccidentReport,
  kGeneralAccident,
  kEnded,
};
std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

struct TrafficEvent {
  std::string event_id;
  // Links the announcements of one situation (e.g. an accident and its
  // all-clear).
  std::optional<std::string> situation_id;
  EventKind kind = EventKind::kRoadWork;
  std::optional<RoadWorkSeverity> severity;
  // Either explicit segment ids or a geometry that is matched against the
  // network (see resolve_event_segments).
  std::vector<std::string> segments;
  std::vector<LatLon> geometry;
  Timestamp published_at{};
  std::optional<std::string> superseded_by;

  friend bool operator==(const TrafficEvent&, const TrafficEvent&) = default;
};

// Throws InvalidInput when road work lacks a severity or an accident kind
// carries one.
void validate_event(const TrafficEvent& event);

// The canonical attribute vocabulary. Every sensor name maps onto at most
// one of these.
enum class CanonicalId : std::uint8_t {
  kSurfaceState,
  kRoadTemperature,
  kFreezingPoint,
  kSurfaceDewDiff,
  kSurfaceFrostDiff,
  kFriction,
  kMoisture,
  kSnowDepth,
  kRelativeHumidity,
  kPrecipitationIntensity,
  kPrecipitationType,
  kCoarsePrecipitation,
  kVisibility,
  kAirDewDiff,
  kAirFrostDiff,
  kAirTemperature,
  kAverageWind,
  kMaximumWind,
  kFfsPercent,
  kOccupancyPercent,
  kAverageSpeed,
};
inline constexpr std::size_t kCanonicalIdCount = 21;

std::string_view to_string(CanonicalId id);
std::optional<CanonicalId> parse_canonical_id(std::string_view name);
// Surface state and both precipitation classifications carry codes.
bool is_categorical(CanonicalId id);

struct CanonicalAttributes {
  std::map<CanonicalId, double> values;
  std::optional<SurfaceState> surface_state;
  std::optional<PrecipitationType> precipitation_type;
  std::optional<CoarsePrecipitation> coarse_precipitation;

  std::optional<double> get(CanonicalId id) const;
  bool empty() const;

  friend bool operator==(const CanonicalAttributes&, const CanonicalAttributes&) = default;
};

// Sensor name -> canonical id. Names absent from the map are dropped.
class SensorMapping {
 public:
  // Digitraffic-style sensor names plus an identity entry for every
  // canonical id name.
  static const SensorMapping& defaults();

  SensorMapping() = default;
  explicit SensorMapping(std::map<std::string, CanonicalId, std::less<>> entries)
      : entries_(std::move(entries)) {}

  std::optional<CanonicalId> find(std::string_view sensor_name) const;
  void set(std::string sensor_name, CanonicalId id) {
    entries_.insert_or_assign(std::move(sensor_name), id);
  }
  const std::map<std::string, CanonicalId, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, CanonicalId, std::less<>> entries_;
};

// Duplicate sensors feeding one numeric id are averaged; categorical codes go
// through the code tables, and duplicates keep the most severe state.
// Unmapped names and unknown codes are dropped (reported in `diag`).
CanonicalAttributes canonicalize(const std::vector<SensorReading>& readings,
                                 const SensorMapping& mapping = SensorMapping::defaults(),
                                 const CodeTables& codes = CodeTables::defaults(),
                                 Diagnostics* diag = nullptr);

// Inverse of canonicalize for already-canonical data: one reading per
// attribute, named by canonical id, categorical values encoded with the
// smallest code of the table.
std::vector<SensorReading> to_readings(const CanonicalAttributes& attrs,
                                       const CodeTables& codes = CodeTables::defaults(),
                                       Timestamp measured_at = {});

// Traffic stations report both directions; keep only the readings of the
// selected one (names tagged SUUNTA1 / SUUNTA2).
std::vector<SensorReading> select_direction(const std::vector<SensorReading>& readings,
                                            int direction);

using Precipitation = std::variant<PrecipitationType, CoarsePrecipitation>;

// The detailed type when present, otherwise the coarse class.
std::optional<Precipitation> resolve_precipitation(const CanonicalAttributes& attrs);
UnitWeight precipitation_weight(const Precipitation& p);

enum class PointContext : std::uint8_t { kSurface, kAir };

// Dew-point difference above freezing; frost-point difference at or below
// freezing, falling back to dew when frost is missing. Without a reference
// temperature the dew difference is preferred.
std::optional<double> resolve_point_difference(const CanonicalAttributes& attrs,
                                               PointContext context,
                                               std::optional<double> reference_temp);

// Surface temperature minus the (true) freezing point.
double freezing_point_delta(double surface_temp, double freezing_point);

inline constexpr std::chrono::minutes kPreliminaryAccidentWindow{30};

// Per segment: is an accident considered active at `now`? A preliminary report
// counts for 30 minutes after publication; an accident report or general
// accident announcement counts until an "ended" event of the same situation.
// Events published after `now` are ignored.
std::map<std::string, bool> accident_active(const std::vector<TrafficEvent>& events, Timestamp now);

// Highest road-work severity among events covering the segment.
RoadWorkSeverity roadwork_severity_for_segment(const std::vector<TrafficEvent>& events,
                                               std::string_view segment_id);

struct FfsOverride {
  double ffs_dir1 = 0.0;
  double ffs_dir2 = 0.0;

  friend bool operator==(const FfsOverride&, const FfsOverride&) = default;
};
using FfsOverrides = std::map<StationId, FfsOverride>;

// Replaces the station's free-flow speeds when an override exists. A
// non-positive override is ignored with a warning.
StationMeta apply_ffs_correction(const StationMeta& meta, const FfsOverrides& overrides,
                                 Diagnostics* diag = nullptr);

// Warns about overrides naming stations that are not in `metas`.
void check_ffs_overrides(const std::vector<StationMeta>& metas, const FfsOverrides& overrides,
                         Diagnostics* diag);

}  // namespace roadwx
