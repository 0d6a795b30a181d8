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

// The shared core behind the CLI and the HTTP API: a loaded road network, a
// catalog of scenarios with precomputed segment weights, preference presets,
// and the JSON documents built from them.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "roadwx/bundle.hpp"
#include "roadwx/errors.hpp"
#include "roadwx/fusion.hpp"
#include "roadwx/router.hpp"

namespace roadwx {

using JsonDoc = nlohmann::ordered_json;

struct FieldError {
  std::string field;
  std::string message;

  friend bool operator==(const FieldError&, const FieldError&) = default;
};

// A request failed validation; one entry per offending field.
class RequestError : public InvalidInput {
 public:
  explicit RequestError(std::vector<FieldError> fields);
  const std::vector<FieldError>& fields() const { return fields_; }

 private:
  std::vector<FieldError> fields_;
};

// {"ratings": [4 level names]} or {"vector": [4 nonnegative numbers]}.
// Throws RequestError.
PreferenceVector parse_profile(const nlohmann::json& j, const std::string& field = "profile");
PreferenceVector load_profile_file(const std::filesystem::path& path);

using ProfileCatalog = std::map<std::string, PreferenceVector, std::less<>>;
// Every *.json in the directory, keyed by file stem.
ProfileCatalog load_profile_dir(const std::filesystem::path& dir);

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct ScenarioSummary {
  BundleCounts counts;
  std::optional<Range> full_weather;
  std::optional<Range> environmental_weather;
  std::optional<Range> traffic;
  std::map<std::string, std::optional<Range>> segment_ranges;  // per dimension
  double weather_spread = 0.0;
  std::size_t data_incomplete = 0;
};

// A bundle evaluated against the network.
struct Scenario {
  ScenarioBundle bundle;
  StationWeightTable stations;
  StationAssignment assignment;
  std::vector<TrafficEvent> events;  // with segments resolved
  std::map<std::string, SegmentEvents, std::less<>> segment_events;
  std::map<std::string, AssembledSegment, std::less<>> raw;
  std::map<std::string, AssembledSegment, std::less<>> normalized;
  Diagnostics diagnostics;

  const std::string& name() const { return bundle.name; }
  const std::map<std::string, AssembledSegment, std::less<>>& assembled(LengthMode mode) const {
    return mode == LengthMode::kRawKilometers ? raw : normalized;
  }
  SegmentWeights weights(LengthMode mode) const;
  ScenarioSummary summary(LengthMode mode) const;
};

Scenario evaluate_scenario(const RoadNetwork& network, ScenarioBundle bundle);

struct RouteRequest {
  std::string scenario;
  LatLon from;
  LatLon to;
  PreferenceVector profile = PreferenceVector::from_components({1, 1, 1, 1});
  LengthMode length_mode = LengthMode::kRawKilometers;
};

struct PlanResult {
  RouteRequest request;
  Route route;
  std::size_t data_incomplete = 0;
};

class Service {
 public:
  // Scenario names must be unique.
  Service(RoadNetwork network, std::vector<ScenarioBundle> bundles, ProfileCatalog presets = {});

  const RoadNetwork& network() const { return network_; }
  const ProfileCatalog& presets() const { return presets_; }
  std::vector<std::string> scenario_names() const;
  // Throws NotFound.
  const Scenario& scenario(std::string_view name) const;

  // Validates a JSON route request (field diagnostics in RequestError).
  RouteRequest parse_route_request(const nlohmann::json& body) const;
  // Throws NotFound for an unknown scenario and NoRoute.
  PlanResult plan(const RouteRequest& request) const;

  JsonDoc scenarios_json() const;
  JsonDoc network_geojson() const;
  JsonDoc weights_geojson(std::string_view scenario, LengthMode mode) const;
  JsonDoc route_geojson(const PlanResult& result) const;

 private:
  RoadNetwork network_;
  std::map<std::string, Scenario, std::less<>> scenarios_;
  ProfileCatalog presets_;
};

JsonDoc summary_json(const Scenario& scenario, LengthMode mode);
std::string route_text(const PlanResult& result);
// Serialized form used for every output file and HTTP body.
std::string to_text(const JsonDoc& doc);

}  // namespace roadwx
