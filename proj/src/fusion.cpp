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

#include "roadwx/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "roadwx/errors.hpp"

namespace roadwx {

namespace {

constexpr std::array<std::string_view, kWeatherFactorCount> kFactorNames = {
    "surface_condition",
    "freezing_point_diff",
    "surface_dew_frost_diff",
    "friction",
    "moisture",
    "snow_depth",
    "road_temperature",
    "relative_humidity",
    "precipitation_intensity",
    "precipitation_type",
    "visible_distance",
    "air_dew_frost_diff",
    "air_temperature",
    "average_wind",
    "maximum_wind",
};

std::optional<UnitWeight> mean_of_present(std::initializer_list<std::optional<UnitWeight>> vs) {
  double sum = 0.0;
  int n = 0;
  for (const auto& v : vs) {
    if (!v) continue;
    sum += v->value();
    ++n;
  }
  if (n == 0) return std::nullopt;
  return UnitWeight(std::clamp(sum / n, 0.0, 1.0));
}

std::optional<UnitWeight> scaled(const ScaleRegistry& scales, std::string_view id,
                                 std::optional<double> v) {
  if (!v) return std::nullopt;
  return scales.weight(id, *v);
}

}  // namespace

FactorGroup group_of(WeatherFactor f) {
  const auto i = static_cast<std::size_t>(f);
  if (i < 7) return FactorGroup::kSurface;
  if (i < 12) return FactorGroup::kVisibility;
  return FactorGroup::kEnvironmental;
}

std::string_view to_string(WeatherFactor f) { return kFactorNames[static_cast<std::size_t>(f)]; }

std::string_view to_string(FactorGroup g) {
  switch (g) {
    case FactorGroup::kSurface: return "surface";
    case FactorGroup::kVisibility: return "visibility";
    case FactorGroup::kEnvironmental: return "environmental";
  }
  return "?";
}

std::size_t WeatherFactors::present_count() const {
  return static_cast<std::size_t>(
      std::count_if(slots.begin(), slots.end(), [](const auto& s) { return s.has_value(); }));
}

WeatherFactors compute_weather_factors(const CanonicalAttributes& attrs,
                                       const ScaleRegistry& scales) {
  using F = WeatherFactor;
  using C = CanonicalId;
  WeatherFactors f;
  const auto road_temp = attrs.get(C::kRoadTemperature);
  const auto air_temp = attrs.get(C::kAirTemperature);

  if (attrs.surface_state) f[F::kSurfaceCondition] = surface_state_weight(*attrs.surface_state);
  if (const auto fp = attrs.get(C::kFreezingPoint); fp && road_temp) {
    f[F::kFreezingPointDiff] =
        scales.weight(scale_id::kTempPointDiff, freezing_point_delta(*road_temp, *fp));
  }
  f[F::kSurfaceDewFrostDiff] =
      scaled(scales, scale_id::kTempPointDiff,
             resolve_point_difference(attrs, PointContext::kSurface, road_temp));
  f[F::kFriction] = scaled(scales, scale_id::kFriction, attrs.get(C::kFriction));
  f[F::kMoisture] = scaled(scales, scale_id::kMoisture, attrs.get(C::kMoisture));
  f[F::kSnowDepth] = scaled(scales, scale_id::kSnowDepth, attrs.get(C::kSnowDepth));
  if (road_temp) f[F::kRoadTemperature] = road_temperature_weight(*road_temp);

  f[F::kRelativeHumidity] =
      scaled(scales, scale_id::kRelativeHumidity, attrs.get(C::kRelativeHumidity));
  f[F::kPrecipitationIntensity] =
      scaled(scales, scale_id::kPrecipitationIntensity, attrs.get(C::kPrecipitationIntensity));
  if (const auto p = resolve_precipitation(attrs))
    f[F::kPrecipitationType] = precipitation_weight(*p);
  f[F::kVisibleDistance] = scaled(scales, scale_id::kVisibility, attrs.get(C::kVisibility));
  f[F::kAirDewFrostDiff] = scaled(scales, scale_id::kTempPointDiff,
                                  resolve_point_difference(attrs, PointContext::kAir, air_temp));

  if (air_temp) f[F::kAirTemperature] = air_temperature_weight(*air_temp);
  f[F::kAverageWind] = scaled(scales, scale_id::kAverageWind, attrs.get(C::kAverageWind));
  f[F::kMaximumWind] = scaled(scales, scale_id::kMaximumWind, attrs.get(C::kMaximumWind));
  return f;
}

std::optional<UnitWeight> group_weight(std::span<const std::optional<UnitWeight>> factors) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : factors) {
    if (!v) continue;
    sum += v->value();
    ++n;
  }
  if (n == 0) return std::nullopt;
  return UnitWeight(std::clamp(sum / static_cast<double>(n), 0.0, 1.0));
}

GroupWeights group_weights(const WeatherFactors& factors) {
  std::span<const std::optional<UnitWeight>> all(factors.slots);
  return GroupWeights{
      group_weight(all.subspan(0, 7)),
      group_weight(all.subspan(7, 5)),
      group_weight(all.subspan(12, 3)),
  };
}

WeatherWeights station_weather_weights(const GroupWeights& g) {
  return WeatherWeights{
      mean_of_present({g.surface, g.visibility, g.environmental}),
      mean_of_present({g.visibility, g.environmental}),
  };
}

TrafficFactors compute_traffic_factors(const CanonicalAttributes& attrs, const StationMeta* meta,
                                       bool ffs_corrected, const ScaleRegistry& scales) {
  TrafficFactors out;
  const auto speed = attrs.get(CanonicalId::kAverageSpeed);
  const auto ffs = meta ? meta->selected_ffs() : std::nullopt;
  const auto from_speed = [&]() -> std::optional<double> {
    if (!speed || !ffs || !(*ffs > 0.0)) return std::nullopt;
    return 100.0 * *speed / *ffs;
  };
  if (ffs_corrected) out.ffs_percent = from_speed();
  if (!out.ffs_percent) out.ffs_percent = attrs.get(CanonicalId::kFfsPercent);
  if (!out.ffs_percent) out.ffs_percent = from_speed();
  out.ffs = scaled(scales, scale_id::kFfsPercent, out.ffs_percent);
  out.occupancy =
      scaled(scales, scale_id::kOccupancyPercent, attrs.get(CanonicalId::kOccupancyPercent));
  return out;
}

std::optional<UnitWeight> traffic_weight(std::optional<UnitWeight> ffs_factor,
                                         std::optional<UnitWeight> occupancy_factor) {
  return mean_of_present({ffs_factor, occupancy_factor});
}

UnitWeight event_weight(UnitWeight roadwork, UnitWeight accident) {
  return std::max(roadwork, accident);
}

std::string_view to_string(LengthMode mode) {
  return mode == LengthMode::kRawKilometers ? "raw" : "normalized";
}

std::optional<LengthMode> parse_length_mode(std::string_view name) {
  if (name == "raw") return LengthMode::kRawKilometers;
  if (name == "normalized") return LengthMode::kNormalizedByMax;
  return std::nullopt;
}

double length_weight(double length_m, LengthMode mode, std::optional<double> normalizer_m) {
  if (!(length_m > 0.0) || !std::isfinite(length_m)) {
    throw InvalidInput("segment length must be positive");
  }
  if (mode == LengthMode::kRawKilometers) return length_m / 1000.0;
  if (!normalizer_m || !(*normalizer_m > 0.0) || !std::isfinite(*normalizer_m)) {
    throw ConfigError("normalized length mode needs a positive normalizer");
  }
  return length_m / *normalizer_m;
}

bool StationWeights::produced_data() const {
  if (kind == StationKind::kWeather) return weather.full.has_value();
  return traffic.has_value();
}

StationWeightTable compute_station_weights(const std::vector<StationSnapshot>& snapshots,
                                           const std::vector<StationMeta>& metas,
                                           const StationInputs& inputs, Diagnostics* diag) {
  StationWeightTable table;
  for (const auto& snap : snapshots) {
    StationWeights w;
    w.station_id = snap.station_id;
    w.kind = snap.kind;
    if (snap.kind == StationKind::kWeather) {
      const auto attrs = canonicalize(snap.readings, *inputs.mapping, *inputs.codes, diag);
      w.factors = compute_weather_factors(attrs, *inputs.scales);
      w.groups = group_weights(w.factors);
      w.weather = station_weather_weights(w.groups);
    } else {
      const StationMeta* meta = nullptr;
      for (const auto& m : metas) {
        if (m.station_id == snap.station_id && m.kind == StationKind::kTraffic) meta = &m;
      }
      std::optional<StationMeta> corrected;
      bool ffs_corrected = false;
      if (meta && inputs.ffs_overrides) {
        corrected = apply_ffs_correction(*meta, *inputs.ffs_overrides, diag);
        ffs_corrected = inputs.ffs_overrides->count(meta->station_id) > 0 &&
                        corrected->ffs_dir1 == inputs.ffs_overrides->at(meta->station_id).ffs_dir1;
        meta = &*corrected;
      }
      const auto readings = select_direction(snap.readings, meta ? meta->direction : 1);
      const auto attrs = canonicalize(readings, *inputs.mapping, *inputs.codes, diag);
      w.traffic_factors = compute_traffic_factors(attrs, meta, ffs_corrected, *inputs.scales);
      w.traffic = traffic_weight(w.traffic_factors.ffs, w.traffic_factors.occupancy);
    }
    table.insert_or_assign(snap.station_id, std::move(w));
  }
  return table;
}

std::map<std::string, SegmentEvents, std::less<>> segment_events(
    const std::vector<TrafficEvent>& events, Timestamp now) {
  std::map<std::string, SegmentEvents, std::less<>> out;
  for (const auto& [seg, active] : accident_active(events, now)) out[seg].accident = active;
  for (const auto& e : events) {
    if (e.kind != EventKind::kRoadWork) continue;
    for (const auto& seg : e.segments) {
      if (out.count(seg) && out[seg].roadwork != RoadWorkSeverity::kNone) continue;
      out[seg].roadwork = roadwork_severity_for_segment(events, seg);
    }
  }
  return out;
}

std::string_view to_string(WeatherSource s) {
  switch (s) {
    case WeatherSource::kNone: return "none";
    case WeatherSource::kFull: return "full";
    case WeatherSource::kEnvironmental: return "environmental";
    case WeatherSource::kSecondary: return "secondary";
  }
  return "?";
}

AssembledSegment assemble_segment_vector(const RoadSegment& segment,
                                         const SegmentAssignment& assignment,
                                         const StationWeightTable& stations,
                                         const SegmentEvents& events, LengthMode mode,
                                         std::optional<double> normalizer_m) {
  auto station = [&](std::optional<StationId> id) -> const StationWeights* {
    if (!id) return nullptr;
    auto it = stations.find(*id);
    return it == stations.end() ? nullptr : &it->second;
  };

  AssembledSegment out;
  out.vector.length = length_weight(segment.length_m, mode, normalizer_m);

  const StationWeights* primary = station(assignment.weather_station);
  std::optional<UnitWeight> weather;
  if (primary && primary->produced_data()) {
    if (assignment.same_road && primary->weather.full) {
      weather = primary->weather.full;
      out.weather_source = WeatherSource::kFull;
    } else if (primary->weather.environmental) {
      weather = primary->weather.environmental;
      out.weather_source = WeatherSource::kEnvironmental;
    }
  }
  if (!weather) {
    const StationWeights* secondary = station(assignment.secondary_weather_station);
    if (secondary && secondary->weather.environmental) {
      weather = secondary->weather.environmental;
      out.weather_source = WeatherSource::kSecondary;
    }
  }
  out.weather_missing = !weather;
  out.vector.weather = weather ? weather->value() : 0.0;

  std::optional<UnitWeight> traffic;
  if (const auto* t = station(assignment.traffic_station); t && t->traffic) traffic = t->traffic;
  if (!traffic) {
    if (const auto* t = station(assignment.secondary_traffic_station); t && t->traffic) {
      traffic = t->traffic;
    }
  }
  out.traffic_missing = !traffic;
  out.vector.traffic = traffic ? traffic->value() : 0.0;

  out.events = events;
  out.vector.events =
      event_weight(road_work_weight(events.roadwork), accident_weight(events.accident)).value();
  return out;
}

}  // namespace roadwx
