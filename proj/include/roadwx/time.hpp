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

#include <chrono>
#include <string>
#include <string_view>

namespace roadwx {

using Timestamp = std::chrono::sys_seconds;

// ISO-8601 UTC, e.g. "2024-08-20T12:00:00Z". Fractional seconds are
// truncated and a "+hh:mm"/"-hh:mm" offset is applied. Throws InvalidInput.
Timestamp parse_timestamp(std::string_view text);

// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);

}  // namespace roadwx
