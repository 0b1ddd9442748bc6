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

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace selfassess::tsn {

/// Gate-control-list times are kept in whole nanoseconds so that schedule
/// bookkeeping (open time minus occupancy) is exact.
using Nanos = std::chrono::nanoseconds;

inline constexpr double kDefaultGuardFraction = 0.1;

/// A new service's data flow: message size D and its guard slack.
struct ServiceFlow {
  double data_size_bits = 0.0;
  double guard_fraction = kDefaultGuardFraction;
  int assigned_class = 0;
};

/// One occupancy entry in a class window (a flow's transmission or its guard).
struct ScheduledFlow {
  std::string label;
  Nanos t_tx{0};
};

struct TrafficClass {
  int class_id = 0;
  Nanos t_open{0};
  std::vector<ScheduledFlow> flows;
};

/// Per-interface time-aware-shaper schedule.
struct TasSchedule {
  std::vector<TrafficClass> classes;

  const TrafficClass &Class(int class_id) const;
  TrafficClass &Class(int class_id);

  /// t_open > 0 and occupancy <= t_open for every class; throws ContractViolation.
  void Validate() const;
};

/// D / bw, rounded to the nearest nanosecond. bandwidth in bits/s.
Nanos TransmissionTime(double data_size_bits, double bandwidth_bps);

/// Guard time t_tx * fraction, rounded to the nearest nanosecond.
Nanos GuardTime(Nanos t_tx, double guard_fraction);

/// t_tx + guard.
Nanos NeededTime(Nanos t_tx, double guard_fraction);

/// t_open minus every occupancy entry of the class (guards included).
Nanos FreeTime(const TrafficClass &traffic_class);
Nanos FreeTime(const TasSchedule &schedule, int class_id);

/// Effort grade of fitting t_needed into t_free.
///
/// With x = t_needed / t_free: a class that fits scores 0.5 + x/2, in
/// (0.5, 1]; a class whose window must grow scores (x - 1)/2, capped just
/// below 0.5 so any fitting class outranks any non-fitting one. A class
/// with no free time scores 0.
double EffortGrade(Nanos t_needed, Nanos t_free);

/// Grade for placing `flow` into class `class_id` of an interface.
double TasCapability(const ServiceFlow &flow, const TasSchedule &schedule, int class_id,
                     double bandwidth_bps);

struct ClassGrade {
  int class_id = 0;
  Nanos t_free{0};
  double grade = 0.0;
};

/// Grades every class of the schedule in schedule order. Selecting among
/// them is left to the caller.
std::vector<ClassGrade> GradeClasses(const ServiceFlow &flow, const TasSchedule &schedule,
                                     double bandwidth_bps);

/// Records an admitted flow as two entries: its transmission and its guard.
/// Throws CapacityExceeded when it does not fit unless `extend_open` is set,
/// in which case the class window grows by the deficit.
void Admit(TasSchedule &schedule, int class_id, const std::string &label, const ServiceFlow &flow,
           double bandwidth_bps, bool extend_open = false);

inline double ToMillis(Nanos t) { return std::chrono::duration<double, std::milli>(t).count(); }
inline double ToSeconds(Nanos t) { return std::chrono::duration<double>(t).count(); }
Nanos FromMillis(double ms);

}  // namespace selfassess::tsn
