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

#include <algorithm>
#include <random>

#include "roadwx/errors.hpp"
#include "roadwx/ingest.hpp"

namespace roadwx {
namespace {

using namespace std::chrono_literals;

SensorReading reading(std::string name, double value, int sensor_id = 1) {
  SensorReading r;
  r.sensor_id = sensor_id;
  r.name = std::move(name);
  r.value = value;
  return r;
}

TrafficEvent accident(std::string id, EventKind kind, std::string segment, Timestamp published,
                      std::optional<std::string> situation = std::nullopt) {
  TrafficEvent e;
  e.event_id = std::move(id);
  e.kind = kind;
  e.segments = {std::move(segment)};
  e.published_at = published;
  e.situation_id = std::move(situation);
  return e;
}

const Timestamp kNow = parse_timestamp("2026-10-16T08:00:00Z");

TEST(Canonicalize, MapsDefaultSensorNames) {
  const auto a = canonicalize({reading("TIE_1", -1.5), reading("ILMA", 3.0), reading("KELI_1", 4),
                               reading("SATEEN_OLOMUOTO_PWDXX", 11)});
  EXPECT_EQ(a.get(CanonicalId::kRoadTemperature), -1.5);
  EXPECT_EQ(a.get(CanonicalId::kAirTemperature), 3.0);
  ASSERT_TRUE(a.surface_state.has_value());
  EXPECT_EQ(a.precipitation_type, PrecipitationType::kSnow);
}

TEST(Canonicalize, AveragesDuplicateNumericSensors) {
  const auto a =
      canonicalize({reading("TIE_1", -1.0), reading("TIE_2", -3.0), reading("TIE_3", 1)});
  EXPECT_DOUBLE_EQ(*a.get(CanonicalId::kRoadTemperature), -1.0);
}

TEST(Canonicalize, DuplicateCategoricalKeepsMostSevere) {
  Diagnostics diag;
  const auto a = canonicalize({reading("KELI_1", 0), reading("KELI_1", 8), reading("KELI_1", 3)},
                              SensorMapping::defaults(), CodeTables::defaults(), &diag);
  EXPECT_EQ(a.surface_state, SurfaceState::kSlush);
}

TEST(Canonicalize, DropsUnmappedNonFiniteAndUnknownCodes) {
  Diagnostics diag;
  const auto a =
      canonicalize({reading("XYZZY", 1.0), reading("ILMA", std::nan("")), reading("KELI_1", 99)},
                   SensorMapping::defaults(), CodeTables::defaults(), &diag);
  EXPECT_TRUE(a.empty());
  EXPECT_EQ(diag.size(), 3u);
}

TEST(Canonicalize, PermutationInvariantAndIdempotent) {
  std::mt19937_64 rng(11);
  std::vector<std::string> names;
  for (const auto& [name, id] : SensorMapping::defaults().entries()) names.push_back(name);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::uniform_real_distribution<double> val(-30.0, 100.0);
  std::uniform_int_distribution<int> code(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<SensorReading> rs;
    const int n = 1 + trial % 25;
    for (int i = 0; i < n; ++i) {
      const std::string& name = names[pick(rng)];
      const auto id = *SensorMapping::defaults().find(name);
      rs.push_back(reading(name, is_categorical(id) ? code(rng) : val(rng), i + 1));
    }
    const auto once = canonicalize(rs);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(rs.begin(), rs.end(), rng);
      ASSERT_EQ(canonicalize(rs), once);
    }
    ASSERT_EQ(canonicalize(to_readings(once)), once);
  }
}

TEST(Canonicalize, CustomMappingReplacesDefaults) {
  SensorMapping m;
  m.set("T_ROAD", CanonicalId::kRoadTemperature);
  const auto a = canonicalize({reading("T_ROAD", 2.0), reading("TIE_1", 9.0)}, m);
  EXPECT_EQ(a.get(CanonicalId::kRoadTemperature), 2.0);
  EXPECT_EQ(a.values.size(), 1u);
}

TEST(CanonicalId, NamesRoundTrip) {
  for (std::size_t i = 0; i < kCanonicalIdCount; ++i) {
    const auto id = static_cast<CanonicalId>(i);
    EXPECT_EQ(parse_canonical_id(to_string(id)), id);
  }
  EXPECT_FALSE(parse_canonical_id("precipitation_status").has_value());
}

TEST(Precipitation, DetailedTypeWinsOverCoarse) {
  CanonicalAttributes a;
  EXPECT_FALSE(resolve_precipitation(a).has_value());
  a.coarse_precipitation = CoarsePrecipitation::kSleetOrSnow;
  EXPECT_NEAR(precipitation_weight(*resolve_precipitation(a)).value(), 0.722, 1e-12);
  a.precipitation_type = PrecipitationType::kDrizzle;
  EXPECT_EQ(precipitation_weight(*resolve_precipitation(a)),
            precipitation_type_weight(PrecipitationType::kDrizzle));
}

TEST(PointDifference, DewAboveFrostAtOrBelowFreezing) {
  CanonicalAttributes a;
  a.values[CanonicalId::kSurfaceDewDiff] = 1.0;
  a.values[CanonicalId::kSurfaceFrostDiff] = 2.0;
  EXPECT_EQ(resolve_point_difference(a, PointContext::kSurface, 0.5), 1.0);
  EXPECT_EQ(resolve_point_difference(a, PointContext::kSurface, 0.0), 2.0);
  EXPECT_EQ(resolve_point_difference(a, PointContext::kSurface, -4.0), 2.0);
  EXPECT_EQ(resolve_point_difference(a, PointContext::kSurface, std::nullopt), 1.0);
  EXPECT_FALSE(resolve_point_difference(a, PointContext::kAir, 5.0).has_value());
}

TEST(PointDifference, FallsBackToWhicheverIsPresent) {
  CanonicalAttributes dew_only;
  dew_only.values[CanonicalId::kAirDewDiff] = 3.0;
  EXPECT_EQ(resolve_point_difference(dew_only, PointContext::kAir, -10.0), 3.0);
  CanonicalAttributes frost_only;
  frost_only.values[CanonicalId::kAirFrostDiff] = 4.0;
  EXPECT_EQ(resolve_point_difference(frost_only, PointContext::kAir, 10.0), 4.0);
  EXPECT_THROW(resolve_point_difference(frost_only, PointContext::kAir, INFINITY), InvalidInput);
}

TEST(FreezingPoint, DeltaIsSurfaceMinusFreezingPoint) {
  EXPECT_EQ(freezing_point_delta(1.0, -2.0), 3.0);
  EXPECT_THROW(freezing_point_delta(std::nan(""), 0.0), InvalidInput);
}

TEST(Accident, PreliminaryReportExpiresAfterThirtyMinutes) {
  const std::vector<TrafficEvent> ev = {
      accident("p", EventKind::kAccidentPreliminary, "s", kNow - 30min)};
  EXPECT_TRUE(accident_active(ev, kNow).at("s"));
  EXPECT_FALSE(accident_active(ev, kNow + 1s).at("s"));
  EXPECT_FALSE(accident_active(ev, kNow - 31min).at("s"));
}

TEST(Accident, ReportStaysActiveUntilEnded) {
  std::vector<TrafficEvent> ev = {
      accident("r", EventKind::kAccidentReport, "s", kNow - 5h, "sit"),
      accident("g", EventKind::kGeneralAccident, "t", kNow - 5h, "sit2")};
  EXPECT_TRUE(accident_active(ev, kNow).at("s"));
  EXPECT_TRUE(accident_active(ev, kNow).at("t"));
  ev.push_back(accident("end", EventKind::kEnded, "s", kNow - 1h, "sit"));
  EXPECT_FALSE(accident_active(ev, kNow).at("s"));
  EXPECT_TRUE(accident_active(ev, kNow - 2h).at("s"));
  EXPECT_TRUE(accident_active(ev, kNow).at("t"));
}

TEST(Accident, SupersedingEndedEventClears) {
  auto r = accident("r", EventKind::kAccidentReport, "s", kNow - 2h);
  r.superseded_by = "end";
  const std::vector<TrafficEvent> ev = {r, accident("end", EventKind::kEnded, "x", kNow - 1h)};
  EXPECT_FALSE(accident_active(ev, kNow).at("s"));
}

TEST(Accident, FutureEventsIgnored) {
  const std::vector<TrafficEvent> ev = {accident("r", EventKind::kAccidentReport, "s", kNow + 1s)};
  EXPECT_FALSE(accident_active(ev, kNow).at("s"));
}

TEST(Accident, AddingEndedEventNeverActivates) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> minutes(-240, 0);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> seg(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<TrafficEvent> ev;
    for (int i = 0; i < 6; ++i) {
      ev.push_back(accident("e" + std::to_string(i), static_cast<EventKind>(kind(rng)),
                            "s" + std::to_string(seg(rng)),
                            kNow + std::chrono::minutes(minutes(rng)),
                            "sit" + std::to_string(seg(rng))));
      if (ev.back().kind == EventKind::kRoadWork) ev.back().kind = EventKind::kAccidentReport;
    }
    const auto before = accident_active(ev, kNow);
    ev.push_back(accident("end", EventKind::kEnded, "s0", kNow + std::chrono::minutes(minutes(rng)),
                          "sit" + std::to_string(seg(rng))));
    const auto after = accident_active(ev, kNow);
    for (const auto& [s, on] : after) {
      if (on) ASSERT_TRUE(before.at(s)) << s;
    }
  }
}

TEST(RoadWork, HighestSeverityCoveringSegment) {
  auto rw = [](std::string id, RoadWorkSeverity s, std::vector<std::string> segs) {
    TrafficEvent e;
    e.event_id = std::move(id);
    e.kind = EventKind::kRoadWork;
    e.severity = s;
    e.segments = std::move(segs);
    return e;
  };
  std::vector<TrafficEvent> ev = {rw("a", RoadWorkSeverity::kLow, {"x", "y"}),
                                  rw("b", RoadWorkSeverity::kHigh, {"y"})};
  EXPECT_EQ(roadwork_severity_for_segment(ev, "x"), RoadWorkSeverity::kLow);
  EXPECT_EQ(roadwork_severity_for_segment(ev, "y"), RoadWorkSeverity::kHigh);
  EXPECT_EQ(roadwork_severity_for_segment(ev, "z"), RoadWorkSeverity::kNone);
  // Adding work never lowers the weight.
  for (auto s : kAllRoadWorkSeverities) {
    auto more = ev;
    more.push_back(rw("c", s, {"x", "y", "z"}));
    for (const char* seg : {"x", "y", "z"}) {
      EXPECT_GE(static_cast<int>(roadwork_severity_for_segment(more, seg)),
                static_cast<int>(roadwork_severity_for_segment(ev, seg)));
    }
  }
}

TEST(Events, Validation) {
  TrafficEvent e;
  e.kind = EventKind::kRoadWork;
  EXPECT_THROW(validate_event(e), InvalidInput);
  e.severity = RoadWorkSeverity::kLow;
  EXPECT_NO_THROW(validate_event(e));
  e.kind = EventKind::kAccidentReport;
  EXPECT_THROW(validate_event(e), InvalidInput);
}

TEST(FfsCorrection, ReplacesBothDirections) {
  StationMeta m;
  m.station_id = 23001;
  m.kind = StationKind::kTraffic;
  m.ffs_dir1 = 80;
  m.ffs_dir2 = 80;
  const FfsOverrides o = {{23001, {60, 58}}};
  const auto c = apply_ffs_correction(m, o);
  EXPECT_EQ(c.ffs_dir1, 60);
  EXPECT_EQ(c.ffs_dir2, 58);
  m.direction = 2;
  EXPECT_EQ(apply_ffs_correction(m, o).selected_ffs(), 58);
  EXPECT_EQ(apply_ffs_correction(m, {}).selected_ffs(), 80);
}

TEST(FfsCorrection, NonPositiveOverrideIgnoredWithWarning) {
  StationMeta m;
  m.station_id = 1;
  m.ffs_dir1 = 80;
  Diagnostics diag;
  EXPECT_EQ(apply_ffs_correction(m, {{1, {0, 50}}}, &diag), m);
  EXPECT_EQ(diag.size(), 1u);
  diag.clear();
  check_ffs_overrides({m}, {{2, {60, 60}}}, &diag);
  EXPECT_EQ(diag.size(), 1u);
}

TEST(SelectDirection, KeepsUntaggedAndSelected) {
  const std::vector<SensorReading> rs = {reading("KESKINOPEUS_5MIN_LIUKUVA_SUUNTA1", 70),
                                         reading("KESKINOPEUS_5MIN_LIUKUVA_SUUNTA2", 50),
                                         reading("OHITUKSET_5MIN_LIUKUVA_SUUNTA2_MS2", 12),
                                         reading("OTHER", 1)};
  auto d1 = select_direction(rs, 1);
  auto d2 = select_direction(rs, 2);
  ASSERT_EQ(d1.size(), 2u);
  ASSERT_EQ(d2.size(), 3u);
  EXPECT_EQ(canonicalize(d1).get(CanonicalId::kAverageSpeed), 70);
  EXPECT_EQ(canonicalize(d2).get(CanonicalId::kAverageSpeed), 50);
  EXPECT_EQ(canonicalize(d2).get(CanonicalId::kOccupancyPercent), 12);
}

TEST(Timestamps, RoundTripUtc) {
  const auto t = parse_timestamp("2026-10-16T08:00:00Z");
  EXPECT_EQ(format_timestamp(t), "2026-10-16T08:00:00Z");
  EXPECT_EQ(parse_timestamp("2026-10-16T10:00:00+02:00"), t);
  EXPECT_THROW(parse_timestamp("yesterday"), InvalidInput);
}

}  // namespace
}  // namespace roadwx
