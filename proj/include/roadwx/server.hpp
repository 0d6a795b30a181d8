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

// HTTP/JSON API over a Service, plus optional static file serving for the
// map client.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "roadwx/service.hpp"

namespace roadwx {

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Dispatches one /api request. Unknown scenarios and paths give 404, invalid
// bodies 400 with {"error", "fields": [{"field", "message"}]}, no route 422.
ApiResponse handle_api(const Service& service, std::string_view method, std::string_view path,
                       std::string_view body);

class HttpServer {
 public:
  HttpServer(const Service& service, std::optional<std::filesystem::path> static_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port; port 0 picks a free one. Throws TransportError.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();
  // Blocks until the server accepts connections.
  void wait_until_ready();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace roadwx
