// Copyright 2026 The Selfassess Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "selfassess/history.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "selfassess/errors.h"

namespace selfassess {
namespace {

AdmissionRecord Record(Tick t, bool granted = true, bool strict = false, double used = 0.5,
                       int count = 1) {
  return {"r" + std::to_string(t), count, granted, strict, used, t};
}

AdmissionRequest RequestWith(size_t n) {
  AdmissionRequest r;
  for (size_t i = 0; i < n; ++i) r.requirements.push_back({"cpu.cores", Rational(1), {}});
  return r;
}

TEST(HistoryLogTest, AppendAndWindow) {
  HistoryLog log(4);
  log.RecordAdmission(Record(1));
  EXPECT_EQ(log.records().size(), 1u);
  for (Tick t = 2; t <= 5; ++t) log.RecordAdmission(Record(t));
  EXPECT_EQ(log.records().size(), 4u);
  EXPECT_EQ(log.records().front().timestamp, 2);
  EXPECT_EQ(log.records().back().timestamp, 5);
}

TEST(HistoryLogTest, RejectsOutOfOrderAndBadRecords) {
  HistoryLog log;
  log.RecordAdmission(Record(10));
  EXPECT_THROW(log.RecordAdmission(Record(10)), ContractViolation);
  EXPECT_THROW(log.RecordAdmission(Record(9)), ContractViolation);
  EXPECT_THROW(log.RecordAdmission(Record(11, true, false, 1.5)), ContractViolation);
  EXPECT_THROW(log.RecordAdmission(Record(12, true, false, 0.5, 0)), ContractViolation);
  log.RecordSample({5, {{"cpu.cores", Rational(3)}}});
  EXPECT_THROW(log.RecordSample({5, {}}), ContractViolation);
  EXPECT_THROW(HistoryLog(0), ContractViolation);
}

TEST(ComputeMetricsTest, EmptyLogIsAllZero) {
  HistoryLog log;
  EXPECT_EQ(ComputeMetrics(log, RequestWith(2), {}), (HistoryMetrics{0, 0, 0, 0}));
}

TEST(ComputeMetricsTest, Examples) {
  HistoryLog log;
  for (Tick t = 1; t <= 4; ++t) log.RecordAdmission(Record(t, true, t == 1, 1.0));
  auto m = ComputeMetrics(log, RequestWith(1), {});
  EXPECT_EQ(m.rh2, 0.0);
  EXPECT_EQ(m.rh4, 0.25);
  EXPECT_EQ(m.rh1, 1.0);
}

TEST(ComputeMetricsTest, SimilarityRatio) {
  HistoryLog log;
  log.RecordAdmission(Record(1, true, false, 0.5, 2));
  log.RecordAdmission(Record(2, true, false, 0.5, 4));
  EXPECT_EQ(ComputeMetrics(log, RequestWith(3), {}).rh1, 1.0);
  EXPECT_EQ(ComputeMetrics(log, RequestWith(6), {}).rh1, 0.5);
  EXPECT_EQ(ComputeMetrics(log, RequestWith(1), {}).rh1, 1.0 / 3.0);
}

TEST(ComputeMetricsTest, UnusedFractionAndNoGrants) {
  HistoryLog log;
  log.RecordAdmission(Record(1, true, false, 0.25));
  log.RecordAdmission(Record(2, true, false, 0.75));
  log.RecordAdmission(Record(3, false, true, 0.0));
  auto m = ComputeMetrics(log, RequestWith(1), {});
  EXPECT_EQ(m.rh2, 0.5);
  EXPECT_EQ(m.rh4, 0.0);
  HistoryLog denied;
  denied.RecordAdmission(Record(1, false));
  EXPECT_EQ(ComputeMetrics(denied, RequestWith(1), {}).rh4, 0.0);
}

TEST(ComputeMetricsTest, StabilityFromSamples) {
  std::map<std::string, Rational> totals{{"cpu.cores", Rational(8)}};
  HistoryLog steady;
  for (Tick t = 1; t <= 5; ++t) steady.RecordSample({t, {{"cpu.cores", Rational(4)}}});
  EXPECT_EQ(ComputeMetrics(steady, RequestWith(1), totals).rh3, 1.0);
  // Fractions 0.25 and 0.75: mean 0.5, population sd 0.25, cv 0.5.
  HistoryLog swing;
  swing.RecordSample({1, {{"cpu.cores", Rational(2)}}});
  swing.RecordSample({2, {{"cpu.cores", Rational(6)}}});
  EXPECT_DOUBLE_EQ(ComputeMetrics(swing, RequestWith(1), totals).rh3, 0.5);
}

TEST(ComputeMetricsTest, RangeAndDeterminismProperty) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<std::string, Rational> totals{{"cpu.cores", Rational(8)},
                                         {"mem.bytes", Rational(1000)}};
  for (int trial = 0; trial < 300; ++trial) {
    HistoryLog log(16);
    int n = static_cast<int>(u(rng) * 40);
    for (int i = 0; i < n; ++i) {
      log.RecordAdmission({"x", 1 + static_cast<int>(u(rng) * 5), u(rng) < 0.7, u(rng) < 0.3,
                           u(rng), i});
      log.RecordSample({i, {{"cpu.cores", Rational(static_cast<int64_t>(u(rng) * 9))},
                            {"mem.bytes", Rational(static_cast<int64_t>(u(rng) * 1001))}}});
    }
    auto req = RequestWith(1 + static_cast<size_t>(u(rng) * 5));
    auto m = ComputeMetrics(log, req, totals);
    for (double v : {m.rh1, m.rh2, m.rh3, m.rh4}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    ASSERT_EQ(m, ComputeMetrics(log, req, totals));
  }
}

TEST(HistoryLogTest, NdjsonRoundTrip) {
  HistoryLog log(8);
  log.RecordAdmission({"a", 2, true, true, 0.125, 1});
  log.RecordAdmission({"b", 1, false, false, 0.0, 3});
  log.RecordSample({2, {{"cpu.cores", Rational(5, 2)}, {"mem.bytes", Rational(100)}}});
  std::stringstream buf;
  log.Save(buf);
  HistoryLog back = HistoryLog::Load(buf, 8);
  ASSERT_EQ(back.records().size(), 2u);
  EXPECT_EQ(back.records()[0].request_id, "a");
  EXPECT_EQ(back.records()[0].used_fraction, 0.125);
  EXPECT_TRUE(back.records()[0].strict_reservation);
  ASSERT_EQ(back.samples().size(), 1u);
  EXPECT_EQ(back.samples()[0].available.at("cpu.cores"), Rational(5, 2));
  std::stringstream again;
  back.Save(again);
  std::stringstream first;
  log.Save(first);
  EXPECT_EQ(again.str(), first.str());
}

TEST(HistoryLogTest, LoadRejectsGarbage) {
  std::stringstream bad("{\"type\":\"other\"}\n");
  EXPECT_THROW(HistoryLog::Load(bad), ConfigError);
  std::stringstream broken("not json\n");
  EXPECT_THROW(HistoryLog::Load(broken), ConfigError);
}

}  // namespace
}  // namespace selfassess
