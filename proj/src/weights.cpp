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

#include "roadwx/weights.hpp"

#include <algorithm>
#include <cmath>

#include "roadwx/errors.hpp"

namespace roadwx {

namespace {

void require_finite(double value, std::string_view what) {
  if (!std::isfinite(value)) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

template <typename Enum, std::size_t N>
std::optional<Enum> parse_by_name(std::string_view name, const std::array<Enum, N>& all) {
  for (Enum e : all) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

template <typename Enum>
std::optional<Enum> lookup_code(const std::map<int, Enum>& table, double code) {
  if (!std::isfinite(code) || std::nearbyint(code) != code) return std::nullopt;
  auto it = table.find(static_cast<int>(code));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace

UnitWeight::UnitWeight(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidInput("unit weight out of [0,1]: " + std::to_string(value));
  }
}

std::string_view to_string(SurfaceState s) {
  switch (s) {
    case SurfaceState::kDry: return "dry";
    case SurfaceState::kMoist: return "moist";
    case SurfaceState::kWet: return "wet";
    case SurfaceState::kMoistSalty: return "moist_salty";
    case SurfaceState::kWetSalted: return "wet_salted";
    case SurfaceState::kFrost: return "frost";
    case SurfaceState::kIce: return "ice";
    case SurfaceState::kSnow: return "snow";
    case SurfaceState::kSlush: return "slush";
  }
  return "?";
}

std::string_view to_string(PrecipitationType p) {
  switch (p) {
    case PrecipitationType::kDryWeather: return "dry_weather";
    case PrecipitationType::kWeakUndetermined: return "weak_undetermined";
    case PrecipitationType::kDrizzle: return "drizzle";
    case PrecipitationType::kRain: return "rain";
    case PrecipitationType::kWetSleet: return "wet_sleet";
    case PrecipitationType::kSleet: return "sleet";
    case PrecipitationType::kHail: return "hail";
    case PrecipitationType::kFreezingDrizzle: return "freezing_drizzle";
    case PrecipitationType::kSnow: return "snow";
    case PrecipitationType::kFreezingRain: return "freezing_rain";
  }
  return "?";
}

std::string_view to_string(CoarsePrecipitation p) {
  switch (p) {
    case CoarsePrecipitation::kWeakRain: return "weak_rain";
    case CoarsePrecipitation::kModerateRain: return "moderate_rain";
    case CoarsePrecipitation::kAbundantRain: return "abundant_rain";
    case CoarsePrecipitation::kSleetOrSnow: return "sleet_or_snow";
  }
  return "?";
}

std::string_view to_string(RoadWorkSeverity s) {
  switch (s) {
    case RoadWorkSeverity::kNone: return "none";
    case RoadWorkSeverity::kLow: return "low";
    case RoadWorkSeverity::kHigh: return "high";
    case RoadWorkSeverity::kHighest: return "highest";
  }
  return "?";
}

std::optional<SurfaceState> parse_surface_state(std::string_view name) {
  return parse_by_name(name, kAllSurfaceStates);
}

std::optional<PrecipitationType> parse_precipitation_type(std::string_view name) {
  if (name == "ice_crystals" || name == "snow_grains" || name == "snow_pellets") {
    return PrecipitationType::kSnow;
  }
  return parse_by_name(name, kAllPrecipitationTypes);
}

std::optional<CoarsePrecipitation> parse_coarse_precipitation(std::string_view name) {
  return parse_by_name(name, kAllCoarsePrecipitations);
}

std::optional<RoadWorkSeverity> parse_road_work_severity(std::string_view name) {
  return parse_by_name(name, kAllRoadWorkSeverities);
}

UnitWeight linear_scale_weight(double value, const LinearScale& scale) {
  require_finite(value, scale.attribute_id.empty() ? "value" : scale.attribute_id);
  require_finite(scale.v_zero, "scale endpoint");
  require_finite(scale.v_one, "scale endpoint");
  if (scale.v_zero == scale.v_one) {
    throw InvalidInput("degenerate scale '" + scale.attribute_id + "'");
  }
  return UnitWeight(clamp_unit((value - scale.v_zero) / (scale.v_one - scale.v_zero)));
}

ScaleRegistry::ScaleRegistry(std::vector<LinearScale> scales) {
  for (auto& s : scales) set(std::move(s));
}

const ScaleRegistry& ScaleRegistry::defaults() {
  static const ScaleRegistry registry({
      {std::string(scale_id::kFriction), 0.82, 0.09},
      {std::string(scale_id::kMoisture), 0.0, 7.0},
      {std::string(scale_id::kSnowDepth), 0.0, 10.0},
      {std::string(scale_id::kTempPointDiff), 5.0, 0.0},
      {std::string(scale_id::kVisibility), 10000.0, 0.0},
      {std::string(scale_id::kRelativeHumidity), 0.0, 100.0},
      {std::string(scale_id::kPrecipitationIntensity), 0.0, 10.0},
      {std::string(scale_id::kAverageWind), 0.0, 21.0},
      {std::string(scale_id::kMaximumWind), 0.0, 31.5},
      {std::string(scale_id::kFfsPercent), 100.0, 0.0},
      {std::string(scale_id::kOccupancyPercent), 0.0, 100.0},
  });
  return registry;
}

const LinearScale& ScaleRegistry::at(std::string_view attribute_id) const {
  auto it = scales_.find(attribute_id);
  if (it == scales_.end()) throw UnknownAttribute(std::string(attribute_id));
  return it->second;
}

bool ScaleRegistry::contains(std::string_view attribute_id) const {
  return scales_.find(attribute_id) != scales_.end();
}

void ScaleRegistry::set(LinearScale scale) {
  if (!std::isfinite(scale.v_zero) || !std::isfinite(scale.v_one) || scale.v_zero == scale.v_one) {
    throw ConfigError("scale '" + scale.attribute_id + "' needs two distinct finite endpoints");
  }
  std::string key = scale.attribute_id;
  scales_.insert_or_assign(std::move(key), std::move(scale));
}

UnitWeight ScaleRegistry::weight(std::string_view attribute_id, double value) const {
  return linear_scale_weight(value, at(attribute_id));
}

UnitWeight attribute_scale_weight(std::string_view attribute_id, double value) {
  return ScaleRegistry::defaults().weight(attribute_id, value);
}

UnitWeight surface_state_weight(SurfaceState state) {
  // Nine states evenly spaced from dry (0) to slush (1).
  return UnitWeight(static_cast<double>(state) * 0.125);
}

UnitWeight precipitation_type_weight(PrecipitationType p) {
  // Table values are rounded to three decimals, so store them verbatim.
  static constexpr std::array<double, 10> kWeights = {0.0,   0.111, 0.222, 0.333, 0.444,
                                                      0.556, 0.667, 0.778, 0.889, 1.0};
  return UnitWeight(kWeights[static_cast<std::size_t>(p)]);
}

UnitWeight coarse_precipitation_weight(CoarsePrecipitation p) {
  switch (p) {
    case CoarsePrecipitation::kWeakRain: return UnitWeight(0.222);
    case CoarsePrecipitation::kModerateRain:
    case CoarsePrecipitation::kAbundantRain: return UnitWeight(0.333);
    case CoarsePrecipitation::kSleetOrSnow: return UnitWeight(0.722);
  }
  return UnitWeight::zero();
}

UnitWeight road_temperature_weight(double celsius) {
  require_finite(celsius, "road temperature");
  constexpr double kPeak = -2.0;
  constexpr double kWarmZero = 5.0;
  constexpr double kColdZero = -20.0;
  if (celsius >= kWarmZero || celsius <= kColdZero) return UnitWeight::zero();
  if (celsius == kPeak) return UnitWeight::one();
  if (celsius > kPeak) return UnitWeight(clamp_unit((kWarmZero - celsius) / (kWarmZero - kPeak)));
  return UnitWeight(clamp_unit((celsius - kColdZero) / (kPeak - kColdZero)));
}

UnitWeight air_temperature_weight(double celsius) {
  require_finite(celsius, "air temperature");
  constexpr double kOptimum = 14.0;
  constexpr double kHeat = 27.0;
  constexpr double kFrost = -30.0;
  if (celsius >= kOptimum) return UnitWeight(clamp_unit((celsius - kOptimum) / (kHeat - kOptimum)));
  return UnitWeight(clamp_unit((kOptimum - celsius) / (kOptimum - kFrost)));
}

UnitWeight road_work_weight(RoadWorkSeverity severity) {
  switch (severity) {
    case RoadWorkSeverity::kNone: return UnitWeight::zero();
    case RoadWorkSeverity::kLow: return UnitWeight(0.33);
    case RoadWorkSeverity::kHigh: return UnitWeight(0.66);
    case RoadWorkSeverity::kHighest: return UnitWeight::one();
  }
  return UnitWeight::zero();
}

UnitWeight accident_weight(bool active) { return active ? UnitWeight::one() : UnitWeight::zero(); }

const CodeTables& CodeTables::defaults() {
  static const CodeTables tables = [] {
    CodeTables t;
    for (std::size_t i = 0; i < kAllSurfaceStates.size(); ++i) {
      t.surface_state.emplace(static_cast<int>(i), kAllSurfaceStates[i]);
    }
    for (std::size_t i = 0; i < kAllPrecipitationTypes.size(); ++i) {
      t.precipitation_type.emplace(static_cast<int>(i), kAllPrecipitationTypes[i]);
    }
    // Ice crystals, snow grains, snow pellets.
    t.precipitation_type.emplace(10, PrecipitationType::kSnow);
    t.precipitation_type.emplace(11, PrecipitationType::kSnow);
    t.precipitation_type.emplace(12, PrecipitationType::kSnow);
    for (std::size_t i = 0; i < kAllCoarsePrecipitations.size(); ++i) {
      t.coarse_precipitation.emplace(static_cast<int>(i) + 1, kAllCoarsePrecipitations[i]);
    }
    return t;
  }();
  return tables;
}

std::optional<SurfaceState> CodeTables::surface(double code) const {
  return lookup_code(surface_state, code);
}

std::optional<PrecipitationType> CodeTables::precipitation(double code) const {
  return lookup_code(precipitation_type, code);
}

std::optional<CoarsePrecipitation> CodeTables::coarse(double code) const {
  return lookup_code(coarse_precipitation, code);
}

}  // namespace roadwx
