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

// Station readings -> weather/traffic station weights -> per-segment
// (length, traffic, weather, events) weight vectors.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roadwx/graph.hpp"
#include "roadwx/ingest.hpp"
#include "roadwx/weights.hpp"

namespace roadwx {

enum class FactorGroup : std::uint8_t { kSurface, kVisibility, kEnvironmental };

// Grouped 7 / 5 / 3 in declaration order.
enum class WeatherFactor : std::uint8_t {
  kSurfaceCondition,
  kFreezingPointDiff,
  kSurfaceDewFrostDiff,
  kFriction,
  kMoisture,
  kSnowDepth,
  kRoadTemperature,
  kRelativeHumidity,
  kPrecipitationIntensity,
  kPrecipitationType,
  kVisibleDistance,
  kAirDewFrostDiff,
  kAirTemperature,
  kAverageWind,
  kMaximumWind,
};
inline constexpr std::size_t kWeatherFactorCount = 15;

FactorGroup group_of(WeatherFactor f);
std::string_view to_string(WeatherFactor f);
std::string_view to_string(FactorGroup g);

struct WeatherFactors {
  std::array<std::optional<UnitWeight>, kWeatherFactorCount> slots{};

  std::optional<UnitWeight>& operator[](WeatherFactor f) {
    return slots[static_cast<std::size_t>(f)];
  }
  const std::optional<UnitWeight>& operator[](WeatherFactor f) const {
    return slots[static_cast<std::size_t>(f)];
  }
  std::size_t present_count() const;

  friend bool operator==(const WeatherFactors&, const WeatherFactors&) = default;
};

WeatherFactors compute_weather_factors(const CanonicalAttributes& attrs,
                                       const ScaleRegistry& scales = ScaleRegistry::defaults());

// Mean of the present values; nullopt when none is present.
std::optional<UnitWeight> group_weight(std::span<const std::optional<UnitWeight>> factors);

struct GroupWeights {
  std::optional<UnitWeight> surface;
  std::optional<UnitWeight> visibility;
  std::optional<UnitWeight> environmental;

  friend bool operator==(const GroupWeights&, const GroupWeights&) = default;
};

GroupWeights group_weights(const WeatherFactors& factors);

struct WeatherWeights {
  std::optional<UnitWeight> full;           // all three groups
  std::optional<UnitWeight> environmental;  // visibility + environmental

  friend bool operator==(const WeatherWeights&, const WeatherWeights&) = default;
};

// Each weight is the mean of the groups present among its inputs.
WeatherWeights station_weather_weights(const GroupWeights& groups);

struct TrafficFactors {
  std::optional<double> ffs_percent;  // as used, possibly recomputed
  std::optional<UnitWeight> ffs;
  std::optional<UnitWeight> occupancy;

  friend bool operator==(const TrafficFactors&, const TrafficFactors&) = default;
};

// Free-flow percentage: recomputed from the average speed for stations with a
// corrected FFS, otherwise the reported percentage, otherwise computed from
// the speed and the metadata FFS.
TrafficFactors compute_traffic_factors(const CanonicalAttributes& attrs, const StationMeta* meta,
                                       bool ffs_corrected,
                                       const ScaleRegistry& scales = ScaleRegistry::defaults());

std::optional<UnitWeight> traffic_weight(std::optional<UnitWeight> ffs_factor,
                                         std::optional<UnitWeight> occupancy_factor);

// Road work and accidents share the events dimension.
UnitWeight event_weight(UnitWeight roadwork, UnitWeight accident);

enum class LengthMode : std::uint8_t {
  kRawKilometers,    // length / 1000
  kNormalizedByMax,  // length / longest segment
};
std::string_view to_string(LengthMode mode);
std::optional<LengthMode> parse_length_mode(std::string_view name);

// Throws ConfigError in normalized mode without a positive normalizer, and
// InvalidInput for a non-positive length.
double length_weight(double length_m, LengthMode mode, std::optional<double> normalizer_m = {});

struct SegmentWeightVector {
  double length = 0.0;
  double traffic = 0.0;
  double weather = 0.0;
  double events = 0.0;

  friend bool operator==(const SegmentWeightVector&, const SegmentWeightVector&) = default;
};

struct StationWeights {
  StationId station_id = 0;
  StationKind kind = StationKind::kWeather;
  WeatherFactors factors;
  GroupWeights groups;
  WeatherWeights weather;
  TrafficFactors traffic_factors;
  std::optional<UnitWeight> traffic;

  // Whether the station yielded any usable weight of its kind.
  bool produced_data() const;
};

using StationWeightTable = std::map<StationId, StationWeights>;

struct StationInputs {
  const SensorMapping* mapping = &SensorMapping::defaults();
  const CodeTables* codes = &CodeTables::defaults();
  const ScaleRegistry* scales = &ScaleRegistry::defaults();
  const FfsOverrides* ffs_overrides = nullptr;
};

// Weights for every snapshot. Traffic snapshots use the metadata (after FFS
// correction) of the matching station.
StationWeightTable compute_station_weights(const std::vector<StationSnapshot>& snapshots,
                                           const std::vector<StationMeta>& metas,
                                           const StationInputs& inputs = {},
                                           Diagnostics* diag = nullptr);

struct SegmentEvents {
  RoadWorkSeverity roadwork = RoadWorkSeverity::kNone;
  bool accident = false;
};

// Event state of every segment mentioned by the (resolved) events.
std::map<std::string, SegmentEvents, std::less<>> segment_events(
    const std::vector<TrafficEvent>& events, Timestamp now);

enum class WeatherSource : std::uint8_t {
  kNone,
  kFull,           // same-road primary station
  kEnvironmental,  // primary station on another road
  kSecondary,      // environmental weight of the secondary station
};
std::string_view to_string(WeatherSource s);

struct AssembledSegment {
  SegmentWeightVector vector;
  WeatherSource weather_source = WeatherSource::kNone;
  bool weather_missing = false;
  bool traffic_missing = false;
  SegmentEvents events;

  bool data_incomplete() const { return weather_missing || traffic_missing; }
};

// Missing weather or traffic contributes 0 and marks the segment incomplete.
AssembledSegment assemble_segment_vector(const RoadSegment& segment,
                                         const SegmentAssignment& assignment,
                                         const StationWeightTable& stations,
                                         const SegmentEvents& events, LengthMode mode,
                                         std::optional<double> normalizer_m = {});

}  // namespace roadwx
