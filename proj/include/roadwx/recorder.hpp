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

// Recording scenario bundles: replay of an append-only message log, and a
// polling client for a Digitraffic-style REST API.

#include <filesystem>
#include <string>
#include <vector>

#include "roadwx/bundle.hpp"

namespace roadwx {

// One JSON object per line; see docs/formats.md. Later data messages for the
// same station sensor replace earlier ones. Throws ParseError (with line) for
// malformed lines and BundleError when the log names no station.
ScenarioBundle replay_message_log(const std::string& text, const std::string& source,
                                  Diagnostics* diag = nullptr);
ScenarioBundle replay_message_log_file(const std::filesystem::path& path,
                                       Diagnostics* diag = nullptr);

struct LiveConfig {
  std::string base_url;  // scheme://host[:port]
  std::string name = "live";
  std::vector<StationId> weather_stations;
  std::vector<StationId> traffic_stations;
  double timeout_s = 10.0;
};

LiveConfig parse_live_config(const std::filesystem::path& path);

// Fetches data and metadata of every configured station. Throws ConfigError
// for an empty station list, TransportError on connection failures or
// non-200 responses, and ParseError for unexpected payloads. The snapshot
// time is the latest measurement time seen. No events are fetched.
ScenarioBundle fetch_live_snapshot(const LiveConfig& config, Diagnostics* diag = nullptr);

}  // namespace roadwx
