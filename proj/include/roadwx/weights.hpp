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

// Mapping of canonical sensor attribute values onto unit weights in [0, 1].
// Higher weight means worse driving conditions. All functions here are pure.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roadwx {

// A dimensionless weight in [0, 1]. Construction outside that range throws
// InvalidInput.
class UnitWeight {
 public:
  constexpr UnitWeight() = default;
  explicit UnitWeight(double value);

  static constexpr UnitWeight zero() { return UnitWeight(); }
  static UnitWeight one() { return UnitWeight(1.0); }

  constexpr double value() const { return value_; }

  friend constexpr auto operator<=>(const UnitWeight&, const UnitWeight&) = default;

 private:
  double value_ = 0.0;
};

enum class SurfaceState : std::uint8_t {
  kDry,
  kMoist,
  kWet,
  kMoistSalty,
  kWetSalted,
  kFrost,
  kIce,
  kSnow,
  kSlush,
};
inline constexpr std::array kAllSurfaceStates = {
    SurfaceState::kDry,        SurfaceState::kMoist,     SurfaceState::kWet,
    SurfaceState::kMoistSalty, SurfaceState::kWetSalted, SurfaceState::kFrost,
    SurfaceState::kIce,        SurfaceState::kSnow,      SurfaceState::kSlush,
};

enum class PrecipitationType : std::uint8_t {
  kDryWeather,
  kWeakUndetermined,
  kDrizzle,
  kRain,
  kWetSleet,
  kSleet,
  kHail,
  kFreezingDrizzle,
  kSnow,
  kFreezingRain,
};
inline constexpr std::array kAllPrecipitationTypes = {
    PrecipitationType::kDryWeather, PrecipitationType::kWeakUndetermined,
    PrecipitationType::kDrizzle,    PrecipitationType::kRain,
    PrecipitationType::kWetSleet,   PrecipitationType::kSleet,
    PrecipitationType::kHail,       PrecipitationType::kFreezingDrizzle,
    PrecipitationType::kSnow,       PrecipitationType::kFreezingRain,
};

// Rain-or-snow classification with intensity; only consulted when the
// detailed precipitation type is not reported.
enum class CoarsePrecipitation : std::uint8_t {
  kWeakRain,
  kModerateRain,
  kAbundantRain,
  kSleetOrSnow,
};
inline constexpr std::array kAllCoarsePrecipitations = {
    CoarsePrecipitation::kWeakRain,
    CoarsePrecipitation::kModerateRain,
    CoarsePrecipitation::kAbundantRain,
    CoarsePrecipitation::kSleetOrSnow,
};

enum class RoadWorkSeverity : std::uint8_t { kNone, kLow, kHigh, kHighest };
inline constexpr std::array kAllRoadWorkSeverities = {
    RoadWorkSeverity::kNone,
    RoadWorkSeverity::kLow,
    RoadWorkSeverity::kHigh,
    RoadWorkSeverity::kHighest,
};

std::string_view to_string(SurfaceState s);
std::string_view to_string(PrecipitationType p);
std::string_view to_string(CoarsePrecipitation p);
std::string_view to_string(RoadWorkSeverity s);

// Inverse of to_string. Precipitation additionally accepts "ice_crystals",
// "snow_grains" and "snow_pellets", all of which are kinds of snow.
std::optional<SurfaceState> parse_surface_state(std::string_view name);
std::optional<PrecipitationType> parse_precipitation_type(std::string_view name);
std::optional<CoarsePrecipitation> parse_coarse_precipitation(std::string_view name);
std::optional<RoadWorkSeverity> parse_road_work_severity(std::string_view name);

// Linear map value -> weight with v_zero -> 0 and v_one -> 1, clamped outside
// the endpoints. v_one may be below v_zero (decreasing scale).
struct LinearScale {
  std::string attribute_id;
  double v_zero = 0.0;
  double v_one = 1.0;

  friend bool operator==(const LinearScale&, const LinearScale&) = default;
};

UnitWeight linear_scale_weight(double value, const LinearScale& scale);

// Registry ids of the linear scales.
namespace scale_id {
inline constexpr std::string_view kFriction = "friction";
inline constexpr std::string_view kMoisture = "moisture";
inline constexpr std::string_view kSnowDepth = "snow_depth";
inline constexpr std::string_view kTempPointDiff = "temp_point_diff";
inline constexpr std::string_view kVisibility = "visibility";
inline constexpr std::string_view kRelativeHumidity = "relative_humidity";
inline constexpr std::string_view kPrecipitationIntensity = "precipitation_intensity";
inline constexpr std::string_view kAverageWind = "average_wind";
inline constexpr std::string_view kMaximumWind = "maximum_wind";
inline constexpr std::string_view kFfsPercent = "ffs_percent";
inline constexpr std::string_view kOccupancyPercent = "occupancy_percent";
}  // namespace scale_id

class ScaleRegistry {
 public:
  // The compiled-in endpoints of every linear scale.
  static const ScaleRegistry& defaults();

  ScaleRegistry() = default;
  explicit ScaleRegistry(std::vector<LinearScale> scales);

  // Throws UnknownAttribute.
  const LinearScale& at(std::string_view attribute_id) const;
  bool contains(std::string_view attribute_id) const;
  // Replaces (or adds) one scale; endpoints are validated.
  void set(LinearScale scale);

  UnitWeight weight(std::string_view attribute_id, double value) const;

  const std::map<std::string, LinearScale, std::less<>>& scales() const { return scales_; }

 private:
  std::map<std::string, LinearScale, std::less<>> scales_;
};

// linear_scale_weight against the default registry.
UnitWeight attribute_scale_weight(std::string_view attribute_id, double value);

UnitWeight surface_state_weight(SurfaceState state);
UnitWeight precipitation_type_weight(PrecipitationType p);
UnitWeight coarse_precipitation_weight(CoarsePrecipitation p);

// Peaks at -2 C; zero at and above +5 C and at and below -20 C.
UnitWeight road_temperature_weight(double celsius);
// Zero at 14 C, reaching one at +27 C and at -30 C.
UnitWeight air_temperature_weight(double celsius);

UnitWeight road_work_weight(RoadWorkSeverity severity);
UnitWeight accident_weight(bool active);

// Numeric codes reported by the station API for the categorical attributes.
// The feed does not document them, so the table is configurable.
struct CodeTables {
  std::map<int, SurfaceState> surface_state;
  std::map<int, PrecipitationType> precipitation_type;
  std::map<int, CoarsePrecipitation> coarse_precipitation;

  static const CodeTables& defaults();

  // Codes arrive as reals; non-integral or unmapped codes give nullopt.
  std::optional<SurfaceState> surface(double code) const;
  std::optional<PrecipitationType> precipitation(double code) const;
  std::optional<CoarsePrecipitation> coarse(double code) const;
};

}  // namespace roadwx
