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

#include "roadwx/server.hpp"

#include "httplib.h"
#include "roadwx/errors.hpp"

namespace roadwx {

namespace {

constexpr std::string_view kWeightsPrefix = "/api/weights/";

ApiResponse json_response(int status, const JsonDoc& doc) {
  return ApiResponse{status, "application/json", to_text(doc)};
}

ApiResponse error_response(int status, const std::string& message,
                           const std::vector<FieldError>& fields = {}) {
  JsonDoc doc{{"error", message}};
  if (!fields.empty()) {
    JsonDoc list = JsonDoc::array();
    for (const auto& f : fields) list.push_back({{"field", f.field}, {"message", f.message}});
    doc["fields"] = std::move(list);
  }
  return json_response(status, doc);
}

std::optional<std::string> query_param(std::string_view query, std::string_view key) {
  std::size_t pos = 0;
  while (pos <= query.size()) {
    std::size_t amp = pos;
    while (amp < query.size() && query[amp] != '&') ++amp;
    const std::string_view pair = query.substr(pos, amp - pos);
    std::size_t eq = 0;
    while (eq < pair.size() && pair[eq] != '=') ++eq;
    if (!pair.empty() && pair.substr(0, eq) == key) {
      return eq == pair.size() ? std::string() : std::string(pair.substr(eq + 1));
    }
    pos = amp + 1;
  }
  return std::nullopt;
}

ApiResponse dispatch(const Service& service, std::string_view method, std::string_view target,
                     std::string_view body) {
  const auto q = target.find('?');
  const std::string_view path = target.substr(0, q);
  const std::string_view query = q == std::string_view::npos ? "" : target.substr(q + 1);

  const bool get = method == "GET";
  if (path == "/api/scenarios") {
    if (!get) return error_response(405, "method not allowed");
    return json_response(200, service.scenarios_json());
  }
  if (path == "/api/network") {
    if (!get) return error_response(405, "method not allowed");
    return json_response(200, service.network_geojson());
  }
  if (path.substr(0, kWeightsPrefix.size()) == kWeightsPrefix) {
    if (!get) return error_response(405, "method not allowed");
    const std::string name(path.substr(kWeightsPrefix.size()));
    LengthMode mode = LengthMode::kRawKilometers;
    if (auto m = query_param(query, "length_mode")) {
      const auto parsed = parse_length_mode(*m);
      if (!parsed) {
        return error_response(400, "invalid request",
                              {FieldError{"length_mode", "expected 'raw' or 'normalized'"}});
      }
      mode = *parsed;
    }
    return json_response(200, service.weights_geojson(name, mode));
  }
  if (path == "/api/route") {
    if (method != "POST") return error_response(405, "method not allowed");
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
      return error_response(400, "invalid request", {FieldError{"", "malformed JSON"}});
    }
    const RouteRequest request = service.parse_route_request(parsed);
    return json_response(200, service.route_geojson(service.plan(request)));
  }
  return error_response(404, "not found");
}

}  // namespace

ApiResponse handle_api(const Service& service, std::string_view method, std::string_view path,
                       std::string_view body) {
  try {
    return dispatch(service, method, path, body);
  } catch (const RequestError& e) {
    return error_response(400, "invalid request", e.fields());
  } catch (const NotFound& e) {
    return error_response(404, e.what());
  } catch (const NoRoute& e) {
    return error_response(422, e.what());
  } catch (const InvalidInput& e) {
    return error_response(400, e.what());
  } catch (const Error& e) {
    return error_response(500, e.what());
  }
}

struct HttpServer::Impl {
  explicit Impl(const Service& s) : service(s) {}
  const Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (auto it = req.params.find("length_mode"); it != req.params.end()) {
      target += "?length_mode=" + it->second;
    }
    const ApiResponse r = handle_api(impl_->service, req.method, target, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(R"(/api/.*)", handler);
  impl_->server.Post(R"(/api/.*)", handler);
  impl_->server.Put(R"(/api/.*)", handler);
  impl_->server.Delete(R"(/api/.*)", handler);
  if (static_dir) {
    if (!impl_->server.set_mount_point("/", static_dir->string())) {
      throw ConfigError("static directory '" + static_dir->string() + "' does not exist");
    }
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw TransportError("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw TransportError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() { impl_->server.wait_until_ready(); }

}  // namespace roadwx
