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

#include <stdexcept>
#include <string>

namespace roadwx {

// Base for every error raised by the library. The CLI maps the subclasses
// onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument was NaN/inf or otherwise outside its domain.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class UnknownAttribute : public Error {
 public:
  explicit UnknownAttribute(const std::string& id)
      : Error("unknown attribute '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// Malformed input file. `line` is 0 when the problem is structural (valid
// JSON of the wrong shape) rather than syntactic.
class ParseError : public Error {
 public:
  ParseError(std::string path, std::size_t line, const std::string& what)
      : Error(path + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        path_(std::move(path)),
        line_(line),
        message_(what) {}
  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  // The description without the location prefix.
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::size_t line_;
  std::string message_;
};

// A scenario bundle is missing a mandatory file or is otherwise unusable.
class BundleError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class NoRoute : public Error {
 public:
  using Error::Error;
};

// A named resource (scenario, preset) does not exist.
class NotFound : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace roadwx
