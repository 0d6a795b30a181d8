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

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace roadwx::detail {

std::size_t line_of(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + end, '\n'));
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // `byte` is 1-based and points just past the offending character.
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(source, line_of(text, byte), "malformed JSON");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  return parse_json_text(read_text_file(path), path.string());
}

std::string dump(const OrderedJson& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BundleError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw BundleError("failed writing '" + path.string() + "'");
}

void Cursor::fail(const std::string& what) const {
  throw ParseError(source_, 0, (where_.empty() ? std::string("document") : where_) + ": " + what);
}

void Cursor::expect_object() const {
  if (!j_->is_object()) fail("expected an object");
}

void Cursor::expect_array() const {
  if (!j_->is_array()) fail("expected an array");
}

bool Cursor::has(std::string_view key) const {
  return j_->is_object() && j_->contains(key) && !(*j_)[std::string(key)].is_null();
}

Cursor Cursor::at(std::string_view key) const {
  expect_object();
  auto it = j_->find(key);
  const std::string sub = where_.empty() ? std::string(key) : where_ + "." + std::string(key);
  if (it == j_->end()) Cursor(*j_, source_, sub).fail("missing field");
  return Cursor(*it, source_, sub);
}

std::optional<Cursor> Cursor::maybe(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

Cursor Cursor::at(std::size_t index) const {
  expect_array();
  if (index >= j_->size()) fail("index out of range");
  return Cursor((*j_)[index], source_, where_ + "[" + std::to_string(index) + "]");
}

std::size_t Cursor::size() const {
  expect_array();
  return j_->size();
}

double Cursor::number() const {
  if (!j_->is_number()) fail("expected a number");
  const double v = j_->get<double>();
  if (!std::isfinite(v)) fail("expected a finite number");
  return v;
}

std::int64_t Cursor::integer() const {
  if (j_->is_number_integer()) return j_->get<std::int64_t>();
  if (j_->is_number_float()) {
    const double v = j_->get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
      return static_cast<std::int64_t>(v);
    }
  }
  fail("expected an integer");
}

std::string Cursor::string() const {
  if (!j_->is_string()) fail("expected a string");
  return j_->get<std::string>();
}

bool Cursor::boolean() const {
  if (!j_->is_boolean()) fail("expected a boolean");
  return j_->get<bool>();
}

std::optional<double> Cursor::opt_number(std::string_view key) const {
  if (auto c = maybe(key)) return c->number();
  return std::nullopt;
}

std::optional<std::int64_t> Cursor::opt_integer(std::string_view key) const {
  if (auto c = maybe(key)) return c->integer();
  return std::nullopt;
}

std::optional<std::string> Cursor::opt_string(std::string_view key) const {
  if (auto c = maybe(key)) return c->string();
  return std::nullopt;
}

}  // namespace roadwx::detail
