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

// Internal helpers for reading JSON documents with file/line diagnostics.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "roadwx/errors.hpp"

namespace roadwx::detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// 1-based line of a byte offset.
std::size_t line_of(std::string_view text, std::size_t byte);

// Syntax errors carry the line; `source` names the document in messages.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

// Two-space indented, trailing newline.
std::string dump(const OrderedJson& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Field access with a "where" path (e.g. "stations[3].readings[0]") in error
// messages.
class Cursor {
 public:
  Cursor(const Json& j, std::string source, std::string where = "")
      : j_(&j), source_(std::move(source)), where_(std::move(where)) {}

  const Json& json() const { return *j_; }
  const std::string& source() const { return source_; }
  const std::string& where() const { return where_; }

  [[noreturn]] void fail(const std::string& what) const;

  void expect_object() const;
  void expect_array() const;
  bool has(std::string_view key) const;
  Cursor at(std::string_view key) const;
  std::optional<Cursor> maybe(std::string_view key) const;
  Cursor at(std::size_t index) const;
  std::size_t size() const;

  double number() const;
  std::int64_t integer() const;
  std::string string() const;
  bool boolean() const;

  double number(std::string_view key) const { return at(key).number(); }
  std::int64_t integer(std::string_view key) const { return at(key).integer(); }
  std::string string(std::string_view key) const { return at(key).string(); }
  std::optional<double> opt_number(std::string_view key) const;
  std::optional<std::int64_t> opt_integer(std::string_view key) const;
  std::optional<std::string> opt_string(std::string_view key) const;

 private:
  const Json* j_;
  std::string source_;
  std::string where_;
};

}  // namespace roadwx::detail
