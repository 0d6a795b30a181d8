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

#include <random>

#include "roadwx/errors.hpp"
#include "roadwx/fusion.hpp"
#include "support/oracles.hpp"

namespace roadwx {
namespace {

using F = WeatherFactor;
using C = CanonicalId;

double mean(std::initializer_list<double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

TEST(WeatherFactors, GroupsAreSevenFiveThree) {
  int counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < kWeatherFactorCount; ++i) {
    ++counts[static_cast<int>(group_of(static_cast<WeatherFactor>(i)))];
  }
  EXPECT_EQ(counts[0], 7);
  EXPECT_EQ(counts[1], 5);
  EXPECT_EQ(counts[2], 3);
}

TEST(WeatherFactors, EachFactorUsesItsWeightFunction) {
  CanonicalAttributes a;
  a.surface_state = SurfaceState::kWet;
  a.values = {{C::kRoadTemperature, 1.5},   {C::kFreezingPoint, -1.0},
              {C::kSurfaceDewDiff, 2.5},    {C::kFriction, 0.455},
              {C::kMoisture, 3.5},          {C::kSnowDepth, 0.0},
              {C::kRelativeHumidity, 80.0}, {C::kPrecipitationIntensity, 2.0},
              {C::kVisibility, 5000.0},     {C::kAirDewDiff, 2.5},
              {C::kAirTemperature, 7.5},    {C::kAverageWind, 10.5},
              {C::kMaximumWind, 15.75}};
  a.precipitation_type = PrecipitationType::kRain;
  const auto f = compute_weather_factors(a);
  EXPECT_EQ(f.present_count(), kWeatherFactorCount);
  EXPECT_EQ(f[F::kSurfaceCondition], surface_state_weight(SurfaceState::kWet));
  EXPECT_NEAR(f[F::kFreezingPointDiff]->value(), oracle::weight("temp_point_diff", 2.5), 1e-12);
  EXPECT_NEAR(f[F::kSurfaceDewFrostDiff]->value(), 0.5, 1e-12);
  EXPECT_NEAR(f[F::kFriction]->value(), 0.5, 1e-12);
  EXPECT_NEAR(f[F::kMoisture]->value(), 0.5, 1e-12);
  EXPECT_EQ(f[F::kSnowDepth]->value(), 0.0);
  EXPECT_NEAR(f[F::kRoadTemperature]->value(), 0.5, 1e-12);
  EXPECT_NEAR(f[F::kRelativeHumidity]->value(), 0.8, 1e-12);
  EXPECT_NEAR(f[F::kPrecipitationIntensity]->value(), 0.2, 1e-12);
  EXPECT_EQ(f[F::kPrecipitationType], precipitation_type_weight(PrecipitationType::kRain));
  EXPECT_NEAR(f[F::kVisibleDistance]->value(), 0.5, 1e-12);
  EXPECT_NEAR(f[F::kAirDewFrostDiff]->value(), 0.5, 1e-12);
  EXPECT_NEAR(f[F::kAirTemperature]->value(), oracle::weight("air_temperature", 7.5), 1e-12);
  EXPECT_NEAR(f[F::kAverageWind]->value(), 0.5, 1e-12);
  EXPECT_NEAR(f[F::kMaximumWind]->value(), 0.5, 1e-12);
}

TEST(WeatherFactors, FreezingPointNeedsRoadTemperature) {
  CanonicalAttributes a;
  a.values[C::kFreezingPoint] = -1.0;
  EXPECT_FALSE(compute_weather_factors(a)[F::kFreezingPointDiff].has_value());
  EXPECT_EQ(compute_weather_factors(CanonicalAttributes{}).present_count(), 0u);
}

TEST(GroupWeight, MeanOfPresentValues) {
  std::vector<std::optional<UnitWeight>> v = {UnitWeight(0.2), std::nullopt, UnitWeight(0.6)};
  EXPECT_NEAR(group_weight(v)->value(), 0.4, 1e-15);
  std::vector<std::optional<UnitWeight>> none(3);
  EXPECT_FALSE(group_weight(none).has_value());
}

TEST(StationWeather, FullEqualsEnvironmentalWithoutSurfaceGroup) {
  GroupWeights g{std::nullopt, UnitWeight(0.3), UnitWeight(0.5)};
  const auto w = station_weather_weights(g);
  EXPECT_EQ(w.full, w.environmental);
  EXPECT_NEAR(w.full->value(), 0.4, 1e-15);
  g.surface = UnitWeight(0.9);
  EXPECT_NEAR(station_weather_weights(g).full->value(), mean({0.9, 0.3, 0.5}), 1e-15);
  EXPECT_FALSE(station_weather_weights(GroupWeights{}).full.has_value());
}

TEST(StationWeather, RandomAttributesObeyMeanContract) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_real_distribution<double> temp(-40, 40), pct(0, 110), dist(0, 20000);
  for (int trial = 0; trial < 5000; ++trial) {
    CanonicalAttributes a;
    auto maybe = [&](C id, double v) {
      if (unit(rng) < 0.7) a.values[id] = v;
    };
    maybe(C::kRoadTemperature, temp(rng));
    maybe(C::kFreezingPoint, -temp(rng) / 10);
    maybe(C::kSurfaceDewDiff, temp(rng) / 4);
    maybe(C::kSurfaceFrostDiff, temp(rng) / 4);
    maybe(C::kFriction, unit(rng));
    maybe(C::kMoisture, 10 * unit(rng));
    maybe(C::kSnowDepth, 15 * unit(rng));
    maybe(C::kRelativeHumidity, pct(rng));
    maybe(C::kPrecipitationIntensity, 12 * unit(rng));
    maybe(C::kVisibility, dist(rng));
    maybe(C::kAirDewDiff, temp(rng) / 4);
    maybe(C::kAirTemperature, temp(rng));
    maybe(C::kAverageWind, 30 * unit(rng));
    maybe(C::kMaximumWind, 40 * unit(rng));
    if (unit(rng) < 0.5)
      a.surface_state = kAllSurfaceStates[static_cast<std::size_t>(unit(rng) * 9)];
    if (unit(rng) < 0.5) a.coarse_precipitation = CoarsePrecipitation::kWeakRain;

    const auto f = compute_weather_factors(a);
    const auto g = group_weights(f);
    double sums[3] = {0, 0, 0};
    int counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < kWeatherFactorCount; ++i) {
      if (!f.slots[i]) continue;
      ASSERT_GE(f.slots[i]->value(), 0.0);
      ASSERT_LE(f.slots[i]->value(), 1.0);
      const int k = static_cast<int>(group_of(static_cast<WeatherFactor>(i)));
      sums[k] += f.slots[i]->value();
      ++counts[k];
    }
    const std::optional<UnitWeight>* groups[3] = {&g.surface, &g.visibility, &g.environmental};
    std::vector<double> present;
    for (int k = 0; k < 3; ++k) {
      ASSERT_EQ(groups[k]->has_value(), counts[k] > 0);
      if (counts[k] == 0) continue;
      ASSERT_NEAR((*groups[k])->value(), sums[k] / counts[k], 1e-12);
      present.push_back((*groups[k])->value());
    }
    const auto w = station_weather_weights(g);
    ASSERT_EQ(w.full.has_value(), !present.empty());
    if (w.full) {
      double s = 0;
      for (double x : present) s += x;
      ASSERT_NEAR(w.full->value(), s / present.size(), 1e-12);
    }
    if (w.full && w.environmental && !g.surface) ASSERT_EQ(w.full, w.environmental);
  }
}

StationMeta traffic_meta(double ffs) {
  StationMeta m;
  m.station_id = 23001;
  m.kind = StationKind::kTraffic;
  m.ffs_dir1 = ffs;
  m.ffs_dir2 = ffs;
  return m;
}

TEST(Traffic, ReportedPercentageUnlessCorrected) {
  CanonicalAttributes a;
  a.values[C::kFfsPercent] = 90;
  a.values[C::kAverageSpeed] = 45;
  a.values[C::kOccupancyPercent] = 20;
  const auto m = traffic_meta(60);
  const auto reported = compute_traffic_factors(a, &m, false);
  EXPECT_EQ(reported.ffs_percent, 90);
  EXPECT_NEAR(reported.ffs->value(), 0.1, 1e-12);
  const auto corrected = compute_traffic_factors(a, &m, true);
  EXPECT_EQ(corrected.ffs_percent, 75);
  EXPECT_NEAR(corrected.ffs->value(), 0.25, 1e-12);
  EXPECT_NEAR(corrected.occupancy->value(), 0.2, 1e-12);
  a.values.erase(C::kFfsPercent);
  EXPECT_EQ(compute_traffic_factors(a, &m, false).ffs_percent, 75);
  EXPECT_FALSE(compute_traffic_factors(a, nullptr, false).ffs_percent.has_value());
}

TEST(Traffic, MeanOfFactorsAndEventsMax) {
  EXPECT_NEAR(traffic_weight(UnitWeight(0.1), UnitWeight(0.2))->value(), 0.15, 1e-15);
  EXPECT_EQ(traffic_weight(std::nullopt, UnitWeight(0.2)), UnitWeight(0.2));
  EXPECT_FALSE(traffic_weight(std::nullopt, std::nullopt).has_value());
  EXPECT_EQ(event_weight(UnitWeight(0.33), UnitWeight(1.0)).value(), 1.0);
  EXPECT_EQ(event_weight(UnitWeight(0.66), UnitWeight(0.0)).value(), 0.66);
}

TEST(LengthWeight, ModesAndErrors) {
  EXPECT_DOUBLE_EQ(length_weight(2500, LengthMode::kRawKilometers), 2.5);
  EXPECT_DOUBLE_EQ(length_weight(2500, LengthMode::kNormalizedByMax, 5000), 0.5);
  EXPECT_THROW(length_weight(2500, LengthMode::kNormalizedByMax), ConfigError);
  EXPECT_THROW(length_weight(2500, LengthMode::kNormalizedByMax, 0.0), ConfigError);
  EXPECT_THROW(length_weight(0, LengthMode::kRawKilometers), InvalidInput);
  EXPECT_EQ(parse_length_mode(to_string(LengthMode::kNormalizedByMax)),
            LengthMode::kNormalizedByMax);
}

TEST(LengthWeight, NormalizedWithinUnitInterval) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> len(0.001, 50000);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> ls(10);
    for (double& l : ls) l = len(rng);
    const double mx = *std::max_element(ls.begin(), ls.end());
    for (double l : ls) {
      const double w = length_weight(l, LengthMode::kNormalizedByMax, mx);
      ASSERT_GT(w, 0.0);
      ASSERT_LE(w, 1.0);
    }
  }
}

struct AssembleFixture : ::testing::Test {
  RoadSegment seg;
  SegmentAssignment asg;
  StationWeightTable stations;

  void SetUp() override {
    seg.id = "s";
    seg.road_number = 4;
    seg.geometry = {{65.0, 25.0}, {65.0, 25.1}};
    seg.length_m = 2000.0;
    asg.weather_station = 1;
    asg.same_road = true;
    asg.traffic_station = 2;
    asg.secondary_weather_station = 3;
    StationWeights w1;
    w1.station_id = 1;
    w1.weather = {UnitWeight(0.6), UnitWeight(0.4)};
    StationWeights w3;
    w3.station_id = 3;
    w3.weather = {UnitWeight(0.9), UnitWeight(0.7)};
    StationWeights t2;
    t2.station_id = 2;
    t2.kind = StationKind::kTraffic;
    t2.traffic = UnitWeight(0.25);
    stations = {{1, w1}, {2, t2}, {3, w3}};
  }

  AssembledSegment run(SegmentEvents ev = {}) {
    return assemble_segment_vector(seg, asg, stations, ev, LengthMode::kRawKilometers);
  }
};

TEST_F(AssembleFixture, SameRoadUsesFullWeight) {
  const auto a = run();
  EXPECT_EQ(a.weather_source, WeatherSource::kFull);
  EXPECT_EQ(a.vector, (SegmentWeightVector{2.0, 0.25, 0.6, 0.0}));
  EXPECT_FALSE(a.data_incomplete());
}

TEST_F(AssembleFixture, OtherRoadUsesEnvironmentalWeight) {
  asg.same_road = false;
  const auto a = run();
  EXPECT_EQ(a.weather_source, WeatherSource::kEnvironmental);
  EXPECT_EQ(a.vector.weather, 0.4);
}

TEST_F(AssembleFixture, SilentPrimaryFallsBackToSecondaryEnvironmental) {
  stations[1].weather = {};
  const auto a = run();
  EXPECT_EQ(a.weather_source, WeatherSource::kSecondary);
  EXPECT_EQ(a.vector.weather, 0.7);
}

TEST_F(AssembleFixture, MissingDataContributesZeroAndFlags) {
  stations[1].weather = {};
  stations[3].weather = {};
  stations[2].traffic.reset();
  const auto a = run();
  EXPECT_EQ(a.weather_source, WeatherSource::kNone);
  EXPECT_EQ(a.vector.weather, 0.0);
  EXPECT_EQ(a.vector.traffic, 0.0);
  EXPECT_TRUE(a.weather_missing);
  EXPECT_TRUE(a.traffic_missing);
}

TEST_F(AssembleFixture, EventsTakeMaxOfRoadWorkAndAccident) {
  EXPECT_EQ(run({RoadWorkSeverity::kHigh, false}).vector.events, 0.66);
  EXPECT_EQ(run({RoadWorkSeverity::kLow, true}).vector.events, 1.0);
  EXPECT_EQ(run({RoadWorkSeverity::kNone, false}).vector.events, 0.0);
}

TEST(SegmentEvents, CombinesRoadWorkAndAccidents) {
  const Timestamp now = parse_timestamp("2026-10-16T08:00:00Z");
  TrafficEvent rw;
  rw.event_id = "rw";
  rw.kind = EventKind::kRoadWork;
  rw.severity = RoadWorkSeverity::kHighest;
  rw.segments = {"a"};
  rw.published_at = now;
  TrafficEvent acc;
  acc.event_id = "acc";
  acc.kind = EventKind::kAccidentReport;
  acc.segments = {"a", "b"};
  acc.published_at = now;
  const auto ev = segment_events({rw, acc}, now);
  EXPECT_EQ(ev.at("a").roadwork, RoadWorkSeverity::kHighest);
  EXPECT_TRUE(ev.at("a").accident);
  EXPECT_EQ(ev.at("b").roadwork, RoadWorkSeverity::kNone);
  EXPECT_TRUE(ev.at("b").accident);
}

TEST(StationWeights, TrafficStationsUseCorrectedMetadata) {
  StationSnapshot snap;
  snap.station_id = 23001;
  snap.kind = StationKind::kTraffic;
  snap.readings = {{1, "KESKINOPEUS_5MIN_LIUKUVA_SUUNTA1", 45, "km/h", {}, false},
                   {2, "KESKINOPEUS_5MIN_LIUKUVA_SUUNTA1_VVAPAAS1", 56, "%", {}, false},
                   {3, "KESKINOPEUS_5MIN_LIUKUVA_SUUNTA2", 10, "km/h", {}, false}};
  const FfsOverrides overrides = {{23001, {60, 60}}};
  StationInputs in;
  const auto plain = compute_station_weights({snap}, {traffic_meta(80)}, in);
  EXPECT_EQ(plain.at(23001).traffic_factors.ffs_percent, 56);
  in.ffs_overrides = &overrides;
  const auto fixed = compute_station_weights({snap}, {traffic_meta(80)}, in);
  EXPECT_EQ(fixed.at(23001).traffic_factors.ffs_percent, 75);
  EXPECT_NEAR(fixed.at(23001).traffic->value(), 0.25, 1e-12);
}

}  // namespace
}  // namespace roadwx
