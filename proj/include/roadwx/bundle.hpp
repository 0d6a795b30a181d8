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

// Scenario bundles on disk: a directory of JSON files holding one recorded
// situation (station readings, station metadata, traffic events) plus
// optional configuration overrides. See docs/formats.md.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roadwx/graph.hpp"
#include "roadwx/ingest.hpp"
#include "roadwx/weights.hpp"

namespace roadwx {

inline constexpr int kBundleFormatVersion = 1;
inline constexpr int kOverrideFormatVersion = 1;

struct SensorMappingOverride {
  // When false the entries are merged onto the default mapping.
  bool replace_defaults = false;
  std::map<std::string, CanonicalId, std::less<>> entries;

  friend bool operator==(const SensorMappingOverride&, const SensorMappingOverride&) = default;
};

struct CodeTablesOverride {
  bool replace_defaults = false;
  std::map<int, SurfaceState> surface_state;
  std::map<int, PrecipitationType> precipitation_type;
  std::map<int, CoarsePrecipitation> coarse_precipitation;

  friend bool operator==(const CodeTablesOverride&, const CodeTablesOverride&) = default;
};

struct ScenarioOverrides {
  std::optional<SensorMappingOverride> sensor_mapping;
  std::optional<FfsOverrides> ffs;
  std::optional<CodeTablesOverride> code_tables;
  std::optional<AssignmentOverrides> stations;
  // Each entry replaces the default scale of its attribute.
  std::optional<std::vector<LinearScale>> scales;

  friend bool operator==(const ScenarioOverrides&, const ScenarioOverrides&) = default;
};

struct ScenarioBundle {
  int format_version = kBundleFormatVersion;
  std::string name;
  Timestamp recorded_at{};
  std::vector<StationSnapshot> weather;
  std::vector<StationSnapshot> traffic;
  std::vector<StationMeta> metas;
  std::vector<TrafficEvent> events;
  ScenarioOverrides overrides;

  // Weather snapshots followed by traffic snapshots.
  std::vector<StationSnapshot> snapshots() const;
  SensorMapping effective_mapping() const;
  CodeTables effective_codes() const;
  ScaleRegistry effective_scales() const;

  friend bool operator==(const ScenarioBundle&, const ScenarioBundle&) = default;
};

// Reads and validates a bundle directory. Readings whose sensor name is not
// in the effective mapping are kept with `unknown` set. Throws BundleError for
// a missing mandatory file or inconsistent records and ParseError for a
// malformed file.
ScenarioBundle parse_scenario_bundle(const std::filesystem::path& dir, Diagnostics* diag = nullptr);

// Writes every mandatory file plus the overrides that are set. Output is
// deterministic; parse(write(b)) == b for any parsed bundle.
void write_scenario_bundle(const ScenarioBundle& bundle, const std::filesystem::path& dir);

// Record counts for reporting.
struct BundleCounts {
  std::size_t weather_stations = 0;
  std::size_t traffic_stations = 0;
  std::size_t metas = 0;
  std::size_t readings = 0;
  std::size_t unknown_readings = 0;
  std::size_t events = 0;
};
BundleCounts count_records(const ScenarioBundle& bundle);

}  // namespace roadwx
