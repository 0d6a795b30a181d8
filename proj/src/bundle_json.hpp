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

// JSON forms of single bundle records, shared by the bundle files and the
// message-log replay.

#include "json_util.hpp"
#include "roadwx/ingest.hpp"

namespace roadwx::detail {

Timestamp timestamp_field(const Cursor& c, std::string_view key);
LatLon coords_field(const Cursor& c);

StationMeta parse_meta_entry(const Cursor& c);
OrderedJson meta_entry_json(const StationMeta& m);
TrafficEvent parse_event_entry(const Cursor& c);
OrderedJson event_entry_json(const TrafficEvent& e);

}  // namespace roadwx::detail
