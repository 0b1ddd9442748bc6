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

#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <string>

#include "selfassess/core.h"
#include "selfassess/rational.h"

namespace selfassess {

using Tick = int64_t;

/// Outcome of one past admission request on this node.
struct AdmissionRecord {
  std::string request_id;
  int requirement_count = 1;
  bool granted = false;
  bool strict_reservation = false;
  /// Observed utilization of the reservation, in [0,1].
  double used_fraction = 0.0;
  Tick timestamp = 0;
};

/// Snapshot of available capacity per resource kind.
struct CapacitySample {
  Tick timestamp = 0;
  std::map<std::string, Rational> available;
};

/// Historical-performance inputs rh1..rh4, each in [0,1].
struct HistoryMetrics {
  double rh1 = 0.0;
  double rh2 = 0.0;
  double rh3 = 0.0;
  double rh4 = 0.0;

  friend bool operator==(const HistoryMetrics &, const HistoryMetrics &) = default;
};

inline constexpr size_t kDefaultHistoryWindow = 256;

/// Bounded admission log and capacity samples owned by a single node.
class HistoryLog {
 public:
  explicit HistoryLog(size_t window = kDefaultHistoryWindow);

  /// Appends; evicts the oldest record beyond the window. Timestamps must be
  /// strictly increasing, otherwise ContractViolation.
  void RecordAdmission(const AdmissionRecord &record);
  void RecordSample(const CapacitySample &sample);

  const std::deque<AdmissionRecord> &records() const { return records_; }
  const std::deque<CapacitySample> &samples() const { return samples_; }
  size_t window() const { return window_; }
  bool empty() const { return records_.empty() && samples_.empty(); }

  /// Newline-delimited JSON, one record or sample per line.
  void Save(std::ostream &out) const;
  static HistoryLog Load(std::istream &in, size_t window = kDefaultHistoryWindow);

 private:
  size_t window_;
  std::deque<AdmissionRecord> records_;
  std::deque<CapacitySample> samples_;
};

/// Derives rh1..rh4 for `request` from the log. An empty log yields zeros.
///
///   rh1: min(n, mean)/max(n, mean) of requirement counts.
///   rh2: mean unused fraction over granted records.
///   rh3: 1 - coefficient of variation of the mean available fraction
///        (relative to `totals`) across samples, clamped to [0,1].
///   rh4: strict grants over all grants.
HistoryMetrics ComputeMetrics(const HistoryLog &log, const AdmissionRequest &request,
                              const std::map<std::string, Rational> &totals);

}  // namespace selfassess
