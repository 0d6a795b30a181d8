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

// roadwx: command-line front end.
//
// Exit codes: 0 success, 2 input/parse error, 3 no route, 4 transport error.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roadwx/bundle.hpp"
#include "roadwx/errors.hpp"
#include "roadwx/network_io.hpp"
#include "roadwx/recorder.hpp"
#include "roadwx/server.hpp"
#include "roadwx/service.hpp"

namespace fs = std::filesystem;
using namespace roadwx;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoRoute = 3;
constexpr int kExitTransport = 4;

struct Options {
  std::string data_dir = "data";
  std::string network;
  std::string nodes;
  double snap_tolerance_m = kDefaultSnapToleranceM;
  std::vector<std::string> scenarios;
  std::string profile;
  std::string from;
  std::string to;
  std::string length_mode = "raw";
  std::string out;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::string replay;
  std::string config;
  bool verbose = false;
};

fs::path data_path(const Options& o, const fs::path& rel) { return fs::path(o.data_dir) / rel; }

LatLon parse_latlon(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_lat = 0, used_lon = 0;
    const std::string lat_s = text.substr(0, comma);
    const std::string lon_s = text.substr(comma + 1);
    const LatLon p{std::stod(lat_s, &used_lat), std::stod(lon_s, &used_lon)};
    if (used_lat != lat_s.size() || used_lon != lon_s.size() || !is_valid(p)) {
      throw std::invalid_argument(text);
    }
    return p;
  } catch (const std::logic_error&) {
    throw InvalidInput(std::string("--") + what + " expects lat,lon, got '" + text + "'");
  }
}

LengthMode length_mode(const Options& o) {
  const auto m = parse_length_mode(o.length_mode);
  if (!m) throw InvalidInput("--length-mode expects raw or normalized");
  return *m;
}

fs::path scenario_dir(const Options& o, const std::string& name) {
  if (fs::is_directory(name)) return name;
  const fs::path p = data_path(o, fs::path("scenarios") / name);
  if (fs::is_directory(p)) return p;
  throw NotFound("unknown scenario '" + name + "'");
}

std::vector<fs::path> all_scenario_dirs(const Options& o) {
  std::vector<fs::path> dirs;
  const fs::path root = data_path(o, "scenarios");
  if (!fs::is_directory(root)) throw BundleError("no scenarios directory '" + root.string() + "'");
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

void print_diagnostics(const Diagnostics& diag, bool verbose) {
  if (!verbose) {
    if (!diag.empty()) std::cerr << diag.size() << " warning(s); use --verbose to list\n";
    return;
  }
  for (const auto& d : diag) std::cerr << "warning: " << d << "\n";
}

RoadNetwork load_network_for(const Options& o) {
  const fs::path network = o.network.empty() ? data_path(o, "network.geojson") : fs::path(o.network);
  std::optional<fs::path> nodes;
  if (!o.nodes.empty()) {
    nodes = o.nodes;
  } else if (fs::exists(data_path(o, "nodes.geojson"))) {
    nodes = data_path(o, "nodes.geojson");
  }
  Diagnostics diag;
  RoadNetwork net = load_network(network, nodes, o.snap_tolerance_m, &diag);
  print_diagnostics(diag, o.verbose);
  return net;
}

PreferenceVector resolve_profile(const Options& o) {
  if (o.profile.empty()) throw InvalidInput("--profile is required");
  if (fs::is_regular_file(o.profile)) return load_profile_file(o.profile);
  const fs::path preset = data_path(o, fs::path("profiles") / (o.profile + ".json"));
  if (fs::is_regular_file(preset)) return load_profile_file(preset);
  throw NotFound("unknown profile '" + o.profile + "'");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + o.out + "'");
  out << text;
}

std::string single_scenario(const Options& o) {
  if (o.scenarios.size() != 1) throw InvalidInput("--scenario is required (exactly once)");
  return o.scenarios.front();
}

int cmd_ingest(const Options& o) {
  Diagnostics diag;
  const ScenarioBundle b = parse_scenario_bundle(scenario_dir(o, single_scenario(o)), &diag);
  const BundleCounts c = count_records(b);
  JsonDoc doc{{"scenario", b.name},
              {"recorded_at", format_timestamp(b.recorded_at)},
              {"counts",
               {{"weather_stations", c.weather_stations},
                {"traffic_stations", c.traffic_stations},
                {"station_metas", c.metas},
                {"readings", c.readings},
                {"unknown_readings", c.unknown_readings},
                {"events", c.events}}},
              {"diagnostics", diag}};
  emit(o, to_text(doc));
  return kExitOk;
}

int cmd_weights(const Options& o) {
  Diagnostics diag;
  ScenarioBundle b = parse_scenario_bundle(scenario_dir(o, single_scenario(o)), &diag);
  print_diagnostics(diag, o.verbose);
  const std::string name = b.name;
  std::vector<ScenarioBundle> bundles;
  bundles.push_back(std::move(b));
  const Service service(load_network_for(o), std::move(bundles));
  const LengthMode mode = length_mode(o);
  emit(o, to_text(service.weights_geojson(name, mode)));
  const ScenarioSummary s = service.scenario(name).summary(mode);
  std::cerr << "scenario " << name << ": " << s.counts.weather_stations << " weather and "
            << s.counts.traffic_stations << " traffic stations, weather spread " << s.weather_spread
            << ", " << s.data_incomplete << " data-incomplete segments\n";
  print_diagnostics(service.scenario(name).diagnostics, o.verbose);
  return kExitOk;
}

int cmd_plan(const Options& o) {
  Diagnostics diag;
  ScenarioBundle b = parse_scenario_bundle(scenario_dir(o, single_scenario(o)), &diag);
  print_diagnostics(diag, o.verbose);
  RouteRequest req;
  req.scenario = b.name;
  req.from = parse_latlon(o.from, "from");
  req.to = parse_latlon(o.to, "to");
  req.profile = resolve_profile(o);
  req.length_mode = length_mode(o);
  std::vector<ScenarioBundle> bundles;
  bundles.push_back(std::move(b));
  const Service service(load_network_for(o), std::move(bundles));
  const PlanResult result = service.plan(req);
  emit(o, to_text(service.route_geojson(result)));
  (o.out.empty() ? std::cerr : std::cout) << route_text(result);
  return kExitOk;
}

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const Options& o) {
  std::vector<fs::path> dirs;
  if (o.scenarios.empty()) {
    dirs = all_scenario_dirs(o);
  } else {
    for (const auto& s : o.scenarios) dirs.push_back(scenario_dir(o, s));
  }
  std::vector<ScenarioBundle> bundles;
  for (const auto& d : dirs) {
    Diagnostics diag;
    bundles.push_back(parse_scenario_bundle(d, &diag));
    print_diagnostics(diag, o.verbose);
  }
  const Service service(load_network_for(o), std::move(bundles),
                        load_profile_dir(data_path(o, "profiles")));
  std::optional<fs::path> static_dir;
  if (!o.static_dir.empty()) static_dir = o.static_dir;
  HttpServer server(service, static_dir);
  const int port = server.bind(o.host, o.port);
  std::cerr << "serving " << service.scenario_names().size() << " scenario(s) on http://" << o.host
            << ":" << port << "\n";
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return kExitOk;
}

int cmd_record(const Options& o) {
  if (o.out.empty()) throw InvalidInput("--out is required");
  if (o.replay.empty() == o.config.empty()) {
    throw InvalidInput("record needs exactly one of --replay or --config");
  }
  if (fs::exists(o.out) && !(fs::is_directory(o.out) && fs::is_empty(o.out))) {
    throw InvalidInput("refusing to overwrite '" + o.out + "'");
  }
  Diagnostics diag;
  const ScenarioBundle b = o.replay.empty()
                               ? fetch_live_snapshot(parse_live_config(o.config), &diag)
                               : replay_message_log_file(o.replay, &diag);
  print_diagnostics(diag, o.verbose);
  write_scenario_bundle(b, o.out);
  const BundleCounts c = count_records(b);
  std::cerr << "recorded scenario " << b.name << ": " << c.weather_stations << " weather, "
            << c.traffic_stations << " traffic stations, " << c.events << " events\n";
  return kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NoRoute*>(&e)) return kExitNoRoute;
  if (dynamic_cast<const TransportError*>(&e)) return kExitTransport;
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Weather- and traffic-aware route recommendations"};
  app.require_subcommand(1);
  app.add_option("--data-dir", o.data_dir, "Data directory (network, scenarios, profiles)")
      ->envname("ROADWX_DATA_DIR");
  app.add_flag("-v,--verbose", o.verbose, "Print every warning");

  auto add_network = [&](CLI::App* sub) {
    sub->add_option("--network", o.network, "Road network GeoJSON");
    sub->add_option("--nodes", o.nodes, "Intersection nodes GeoJSON");
    sub->add_option("--snap-tolerance", o.snap_tolerance_m, "Node snap tolerance in metres");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate a scenario bundle and report counts");
  ingest->add_option("--scenario", o.scenarios, "Bundle directory or scenario name")->required();
  ingest->add_option("--out", o.out, "Output file (default stdout)");

  auto* weights = app.add_subcommand("weights", "Segment weight map of a scenario as GeoJSON");
  weights->add_option("--scenario", o.scenarios, "Bundle directory or scenario name")->required();
  weights->add_option("--length-mode", o.length_mode, "raw or normalized");
  weights->add_option("--out", o.out, "Output file (default stdout)");
  add_network(weights);

  auto* plan = app.add_subcommand("plan", "Recommend a route for a preference profile");
  plan->add_option("--scenario", o.scenarios, "Bundle directory or scenario name")->required();
  plan->add_option("--profile", o.profile, "Profile file or preset name")->required();
  plan->add_option("--from", o.from, "Origin as lat,lon")->required();
  plan->add_option("--to", o.to, "Destination as lat,lon")->required();
  plan->add_option("--length-mode", o.length_mode, "raw or normalized");
  plan->add_option("--out", o.out, "Route GeoJSON file (default stdout)");
  add_network(plan);

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--scenario", o.scenarios, "Scenarios to load (default: all)");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port (0 picks a free one)");
  serve->add_option("--static", o.static_dir, "Directory of static client files");
  add_network(serve);

  auto* record = app.add_subcommand("record", "Record a scenario bundle");
  record->add_option("--replay", o.replay, "Message log to replay");
  record->add_option("--config", o.config, "Live endpoint configuration");
  record->add_option("--out", o.out, "Output bundle directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(o);
    if (weights->parsed()) return cmd_weights(o);
    if (plan->parsed()) return cmd_plan(o);
    if (serve->parsed()) return cmd_serve(o);
    if (record->parsed()) return cmd_record(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitInput;
}
