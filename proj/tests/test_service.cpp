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

#include <gtest/gtest.h>
#include <httplib.h>

#include <thread>

#include "roadwx/errors.hpp"
#include "roadwx/network_io.hpp"
#include "roadwx/server.hpp"
#include "roadwx/service.hpp"
#include "support/cli.hpp"
#include "support/files.hpp"
#include "support/oracles.hpp"

namespace roadwx {
namespace {

namespace fs = std::filesystem;
using testing_support::run_cli;
using testing_support::slurp;
using testing_support::spit;
using testing_support::TempDir;
using testing_support::test_data;
using Json = nlohmann::json;

const fs::path kData = ROADWX_DATA_DIR;

// Station 1001 of the golden bundle, factor by factor.
constexpr double kSurface = (0.25 + 0.5 + 0.5 + 0.5 + 0.5 + 0.0 + 0.5) / 7;
constexpr double kVisibility = (0.8 + 0.2 + 0.333 + 0.5 + 0.5) / 5;
constexpr double kEnvironmental = (0.25 + 0.5 + 0.5) / 3;
constexpr double kFull = (kSurface + kVisibility + kEnvironmental) / 3;
constexpr double kEnvWeather = (kVisibility + kEnvironmental) / 2;

RoadNetwork golden_network() {
  return load_network(test_data("golden/network.geojson"), test_data("golden/nodes.geojson"));
}

const Json* feature(const Json& fc, const std::string& id) {
  for (const auto& f : fc.at("features")) {
    if (f.at("properties").at("id") == id) return &f;
  }
  return nullptr;
}

TEST(GoldenPipeline, StationWeightsMatchHandComputation) {
  const Scenario s =
      evaluate_scenario(golden_network(), parse_scenario_bundle(test_data("golden/bundle")));
  const auto& w = s.stations.at(1001);
  EXPECT_NEAR(w.groups.surface->value(), kSurface, 1e-12);
  EXPECT_NEAR(w.groups.visibility->value(), kVisibility, 1e-12);
  EXPECT_NEAR(w.groups.environmental->value(), kEnvironmental, 1e-12);
  EXPECT_NEAR(w.weather.full->value(), kFull, 1e-12);
  EXPECT_NEAR(w.weather.environmental->value(), kEnvWeather, 1e-12);
  EXPECT_FALSE(s.stations.at(1002).produced_data());
  // Corrected FFS 60 km/h, speed 45 km/h: 75 %, occupancy 50 %.
  EXPECT_EQ(s.stations.at(23001).traffic_factors.ffs_percent, 75.0);
  EXPECT_NEAR(s.stations.at(23001).traffic->value(), (0.25 + 0.5) / 2, 1e-12);
  // Direction 2 readings: reported 90 %, occupancy 20 %.
  EXPECT_NEAR(s.stations.at(23002).traffic->value(), (0.1 + 0.2) / 2, 1e-12);
}

TEST(GoldenPipeline, SegmentVectorsMatchHandComputation) {
  const Scenario s =
      evaluate_scenario(golden_network(), parse_scenario_bundle(test_data("golden/bundle")));
  const auto& r1 = s.raw.at("r1:0");
  EXPECT_NEAR(r1.vector.length, oracle::great_circle_m({65.0, 25.0}, {65.0, 25.1}) / 1000, 1e-9);
  EXPECT_NEAR(r1.vector.traffic, 0.375, 1e-12);
  EXPECT_NEAR(r1.vector.weather, kFull, 1e-12);
  EXPECT_EQ(r1.vector.events, 1.0);
  EXPECT_EQ(r1.weather_source, WeatherSource::kFull);
  const auto& r2 = s.raw.at("r2:0");
  EXPECT_NEAR(r2.vector.length, oracle::great_circle_m({65.0, 25.1}, {65.05, 25.1}) / 1000, 1e-9);
  EXPECT_NEAR(r2.vector.traffic, 0.15, 1e-12);
  EXPECT_NEAR(r2.vector.weather, kEnvWeather, 1e-12);
  EXPECT_EQ(r2.weather_source, WeatherSource::kSecondary);
  EXPECT_NEAR(r2.vector.events, 0.66, 1e-12);
  EXPECT_FALSE(r2.events.accident);
  EXPECT_EQ(s.normalized.at("r2:0").vector.length, 1.0);

  const auto sum = s.summary(LengthMode::kRawKilometers);
  EXPECT_NEAR(sum.weather_spread, kEnvWeather - kFull, 1e-12);
  EXPECT_EQ(sum.data_incomplete, 0u);
  EXPECT_EQ(sum.counts.unknown_readings, 1u);
}

TEST(GoldenPipeline, UniformWeatherHasZeroSpread) {
  auto b = parse_scenario_bundle(test_data("golden/bundle"));
  b.weather[1].readings = b.weather[0].readings;
  const Scenario s = evaluate_scenario(golden_network(), b);
  EXPECT_EQ(s.summary(LengthMode::kRawKilometers).weather_spread, 0.0);
}

TEST(Profiles, ParseRatingsAndVectors) {
  const auto p =
      parse_profile(Json::parse(R"({"ratings": ["very", "somewhat", "unimportant", "somewhat"]})"));
  EXPECT_NEAR(p.length(), 0.576923077, 1e-9);
  const auto v = parse_profile(Json::parse(R"({"vector": [1, 1, 2, 4]})"));
  EXPECT_EQ(v.events(), 0.5);
  try {
    parse_profile(Json::parse(R"({"vector": [1, 1, 1, 1, 1]})"));
    FAIL();
  } catch (const RequestError& e) {
    ASSERT_EQ(e.fields().size(), 1u);
    EXPECT_EQ(e.fields()[0].message, "expected 4 components, got 5");
  }
  EXPECT_THROW(parse_profile(Json::parse(R"({"vector": [1, 1, 1, 1], "ratings": []})")),
               RequestError);
  EXPECT_THROW(parse_profile(Json::parse(R"({"ratings": ["very", "x", "very", "very"]})")),
               RequestError);
}

TEST(Profiles, ShippedPresetsMatchDriverVectors) {
  const auto presets = load_profile_dir(kData / "profiles");
  ASSERT_EQ(presets.size(), 3u);
  const auto corridor = load_profile_dir(test_data("corridors/profiles"));
  for (const auto& [name, p] : presets) {
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(p.components()[i], corridor.at(name).components()[i], 1e-6) << name;
    }
  }
}

Service shipped_service() {
  std::vector<ScenarioBundle> bundles;
  for (const char* name : {"base", "october", "thunder"}) {
    bundles.push_back(parse_scenario_bundle(kData / "scenarios" / name));
  }
  return Service(load_network(kData / "network.geojson", kData / "nodes.geojson"),
                 std::move(bundles), load_profile_dir(kData / "profiles"));
}

const char* const kTapioRoute =
    R"({"scenario": "thunder", "from": [65.0, 25.5], "to": [64.9, 25.5], "profile": "tapio"})";

TEST(Service, DuplicateScenarioNamesRejected) {
  auto b = parse_scenario_bundle(kData / "scenarios" / "base");
  EXPECT_THROW(Service(load_network(kData / "network.geojson", kData / "nodes.geojson"), {b, b}),
               BundleError);
}

TEST(Api, ScenariosListsThreeEntries) {
  const Service svc = shipped_service();
  const auto r = handle_api(svc, "GET", "/api/scenarios", "");
  ASSERT_EQ(r.status, 200);
  const auto j = Json::parse(r.body);
  ASSERT_EQ(j.at("scenarios").size(), 3u);
}

TEST(Api, NetworkAndWeights) {
  const Service svc = shipped_service();
  const auto net = handle_api(svc, "GET", "/api/network", "");
  ASSERT_EQ(net.status, 200);
  EXPECT_EQ(Json::parse(net.body).at("type"), "FeatureCollection");
  const auto w = handle_api(svc, "GET", "/api/weights/thunder?length_mode=normalized", "");
  ASSERT_EQ(w.status, 200);
  const auto j = Json::parse(w.body);
  EXPECT_EQ(j.at("length_mode"), "normalized");
  EXPECT_EQ(j.at("features").size(), 6u);
  EXPECT_EQ(handle_api(svc, "GET", "/api/weights/thunder?length_mode=bogus", "").status, 400);
}

TEST(Api, ErrorStatuses) {
  const Service svc = shipped_service();
  EXPECT_EQ(handle_api(svc, "GET", "/api/weights/nope", "").status, 404);
  EXPECT_EQ(handle_api(svc, "GET", "/api/nothing", "").status, 404);
  EXPECT_EQ(handle_api(svc, "DELETE", "/api/scenarios", "").status, 405);
  EXPECT_EQ(handle_api(svc, "POST", "/api/route", "{not json").status, 400);
  const auto bad = handle_api(
      svc, "POST", "/api/route",
      R"({"scenario": "thunder", "from": [65.0, 25.5], "to": [64.9, 25.5], "profile": {"vector": [1, 1, 1, 1, 1]}})");
  ASSERT_EQ(bad.status, 400);
  const auto j = Json::parse(bad.body);
  ASSERT_EQ(j.at("fields").size(), 1u);
  EXPECT_EQ(j.at("fields")[0].at("field"), "profile.vector");
  EXPECT_EQ(
      handle_api(
          svc, "POST", "/api/route",
          R"({"scenario": "nope", "from": [65.0, 25.5], "to": [64.9, 25.5], "profile": "tapio"})")
          .status,
      404);
  const auto missing = Json::parse(handle_api(svc, "POST", "/api/route", "{}").body);
  EXPECT_EQ(missing.at("fields").size(), 4u);
}

TEST(Api, RouteMatchesServicePlan) {
  const Service svc = shipped_service();
  const auto r = handle_api(svc, "POST", "/api/route", kTapioRoute);
  ASSERT_EQ(r.status, 200);
  const auto plan = svc.plan(svc.parse_route_request(Json::parse(kTapioRoute)));
  EXPECT_EQ(r.body, to_text(svc.route_geojson(plan)));
  EXPECT_EQ(r.body, handle_api(svc, "POST", "/api/route", kTapioRoute).body);
}

TEST(HttpServer, ServesApiAndStaticFiles) {
  const Service svc = shipped_service();
  TempDir www;
  spit(www / "index.html", "<!doctype html><title>map</title>\n");
  HttpServer server(svc, www.path());
  const int port = server.bind("127.0.0.1", 0);
  std::thread t([&] { server.listen(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto scenarios = client.Get("/api/scenarios");
  ASSERT_TRUE(scenarios);
  EXPECT_EQ(scenarios->status, 200);
  const auto route = client.Post("/api/route", kTapioRoute, "application/json");
  ASSERT_TRUE(route);
  EXPECT_EQ(route->status, 200);
  EXPECT_EQ(route->body, handle_api(svc, "POST", "/api/route", kTapioRoute).body);
  const auto weights = client.Get("/api/weights/base?length_mode=normalized");
  ASSERT_TRUE(weights);
  EXPECT_EQ(Json::parse(weights->body).at("length_mode"), "normalized");
  const auto index = client.Get("/");
  ASSERT_TRUE(index);
  EXPECT_EQ(index->status, 200);
  EXPECT_EQ(index->body, "<!doctype html><title>map</title>\n");
  EXPECT_EQ(client.Get("/api/nope")->status, 404);

  server.stop();
  t.join();
}

std::string data_flag() { return "--data-dir '" + kData.string() + "' "; }

TEST(Cli, PlanIsDeterministicAndMatchesApi) {
  const std::string args =
      data_flag() + "plan --scenario thunder --profile tapio --from 65.0,25.5 --to 64.9,25.5";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  const Service svc = shipped_service();
  EXPECT_EQ(a.out, handle_api(svc, "POST", "/api/route", kTapioRoute).body);
}

TEST(Cli, PlanWritesFileAndTextSummary) {
  TempDir t;
  const auto r =
      run_cli(data_flag() + "plan --scenario base --profile tuire --from 65.0,25.5 " +
              "--to 64.9,25.5 --length-mode normalized --out '" + (t / "r.geojson").string() + "'");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("total cost"), std::string::npos);
  const auto j = Json::parse(slurp(t / "r.geojson"));
  EXPECT_EQ(j.at("properties").at("length_mode"), "normalized");
}

TEST(Cli, IngestWeightsAndRecord) {
  EXPECT_EQ(run_cli(data_flag() + "ingest --scenario october").exit_code, 0);
  const auto w = run_cli(data_flag() + "weights --scenario october");
  ASSERT_EQ(w.exit_code, 0);
  EXPECT_EQ(Json::parse(w.out).at("scenario"), "october");
  TempDir t;
  const auto out = t / "rec";
  ASSERT_EQ(run_cli("record --replay '" + test_data("golden/recording.jsonl").string() +
                    "' --out '" + out.string() + "'")
                .exit_code,
            0);
  EXPECT_EQ(slurp(out / "weather_stations.json"),
            slurp(test_data("golden/bundle/weather_stations.json")));
  // Refuses to overwrite a non-empty directory.
  EXPECT_EQ(run_cli("record --replay '" + test_data("golden/recording.jsonl").string() +
                    "' --out '" + out.string() + "'")
                .exit_code,
            2);
}

TEST(Cli, InputErrorsExitTwo) {
  TempDir t;
  spit(t / "five.json", R"({"vector": [1, 1, 1, 1, 1]})");
  EXPECT_EQ(run_cli(data_flag() + "plan --scenario base --profile '" + (t / "five.json").string() +
                    "' --from 65.0,25.5 --to 64.9,25.5")
                .exit_code,
            2);
  EXPECT_EQ(
      run_cli(data_flag() + "plan --scenario base --profile tapio --from nowhere --to 64.9,25.5")
          .exit_code,
      2);
  EXPECT_EQ(run_cli(data_flag() + "ingest --scenario missing").exit_code, 2);
  EXPECT_EQ(run_cli(data_flag() + "frobnicate").exit_code, 2);
}

TEST(Cli, DisconnectedNetworkExitsThree) {
  TempDir t;
  const auto net = Json::parse(slurp(test_data("golden/network.geojson")));
  Json island = net.at("features")[0];
  island["properties"]["id"] = "island";
  island["geometry"]["coordinates"] = Json::parse("[[26.0, 66.0], [26.1, 66.0]]");
  Json with_island = net;
  with_island["features"].push_back(island);
  spit(t / "network.geojson", with_island.dump());
  const auto r =
      run_cli(data_flag() + "plan --scenario '" + test_data("golden/bundle").string() +
              "' --profile tapio --network '" + (t / "network.geojson").string() + "' --nodes '" +
              test_data("golden/nodes.geojson").string() + "' --from 65.0,25.0 --to 66.0,26.1");
  EXPECT_EQ(r.exit_code, 3);
}

TEST(Cli, UnreachableLiveEndpointExitsFour) {
  TempDir t;
  spit(t / "live.json",
       R"({"base_url": "http://127.0.0.1:1", "weather_stations": [1001], "timeout_s": 1})");
  EXPECT_EQ(run_cli("record --config '" + (t / "live.json").string() + "' --out '" +
                    (t / "out").string() + "'")
                .exit_code,
            4);
}

}  // namespace
}  // namespace roadwx
