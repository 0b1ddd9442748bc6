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

#include "selfassess/tsn.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "selfassess/errors.h"

namespace selfassess::tsn {

namespace {

Nanos RoundNanos(double ns) {
  if (!std::isfinite(ns) || std::fabs(ns) > 9.0e18) {
    throw ContractViolation("duration out of range");
  }
  return Nanos(std::llround(ns));
}

}  // namespace

const TrafficClass &TasSchedule::Class(int class_id) const {
  auto it = std::find_if(classes.begin(), classes.end(),
                         [class_id](const TrafficClass &c) { return c.class_id == class_id; });
  if (it == classes.end()) {
    throw LookupError("unknown traffic class " + std::to_string(class_id));
  }
  return *it;
}

TrafficClass &TasSchedule::Class(int class_id) {
  return const_cast<TrafficClass &>(std::as_const(*this).Class(class_id));
}

void TasSchedule::Validate() const {
  for (const auto &c : classes) {
    if (c.t_open <= Nanos::zero()) {
      throw ContractViolation("traffic class " + std::to_string(c.class_id) +
                              " has non-positive t_open");
    }
    for (const auto &f : c.flows) {
      if (f.t_tx < Nanos::zero()) {
        throw ContractViolation("flow '" + f.label + "' has negative t_tx");
      }
    }
    if (FreeTime(c) < Nanos::zero()) {
      throw ContractViolation("traffic class " + std::to_string(c.class_id) +
                              " is over-committed");
    }
  }
}

Nanos TransmissionTime(double data_size_bits, double bandwidth_bps) {
  if (!(bandwidth_bps > 0.0)) {
    throw ContractViolation("bandwidth must be positive");
  }
  if (!(data_size_bits >= 0.0)) {
    throw ContractViolation("data size must be nonnegative");
  }
  return RoundNanos(data_size_bits / bandwidth_bps * 1e9);
}

Nanos GuardTime(Nanos t_tx, double guard_fraction) {
  if (!(guard_fraction >= 0.0)) {
    throw ContractViolation("guard fraction must be nonnegative");
  }
  return RoundNanos(static_cast<double>(t_tx.count()) * guard_fraction);
}

Nanos NeededTime(Nanos t_tx, double guard_fraction) {
  if (t_tx < Nanos::zero()) {
    throw ContractViolation("transmission time must be nonnegative");
  }
  return t_tx + GuardTime(t_tx, guard_fraction);
}

Nanos FreeTime(const TrafficClass &traffic_class) {
  Nanos occupied{0};
  for (const auto &f : traffic_class.flows) occupied += f.t_tx;
  return traffic_class.t_open - occupied;
}

Nanos FreeTime(const TasSchedule &schedule, int class_id) {
  return FreeTime(schedule.Class(class_id));
}

double EffortGrade(Nanos t_needed, Nanos t_free) {
  if (t_free <= Nanos::zero()) return 0.0;
  double x = static_cast<double>(t_needed.count()) / static_cast<double>(t_free.count());
  if (t_free >= t_needed) {
    return 0.5 + x / 2.0;
  }
  return std::min((x - 1.0) / 2.0, std::nextafter(0.5, 0.0));
}

double TasCapability(const ServiceFlow &flow, const TasSchedule &schedule, int class_id,
                     double bandwidth_bps) {
  Nanos needed = NeededTime(TransmissionTime(flow.data_size_bits, bandwidth_bps),
                            flow.guard_fraction);
  return EffortGrade(needed, FreeTime(schedule, class_id));
}

std::vector<ClassGrade> GradeClasses(const ServiceFlow &flow, const TasSchedule &schedule,
                                     double bandwidth_bps) {
  Nanos needed = NeededTime(TransmissionTime(flow.data_size_bits, bandwidth_bps),
                            flow.guard_fraction);
  std::vector<ClassGrade> grades;
  grades.reserve(schedule.classes.size());
  for (const auto &c : schedule.classes) {
    Nanos free = FreeTime(c);
    grades.push_back({c.class_id, free, EffortGrade(needed, free)});
  }
  return grades;
}

void Admit(TasSchedule &schedule, int class_id, const std::string &label, const ServiceFlow &flow,
           double bandwidth_bps, bool extend_open) {
  TrafficClass &c = schedule.Class(class_id);
  Nanos t_tx = TransmissionTime(flow.data_size_bits, bandwidth_bps);
  Nanos guard = GuardTime(t_tx, flow.guard_fraction);
  Nanos free = FreeTime(c);
  if (free < t_tx + guard) {
    if (!extend_open) {
      throw CapacityExceeded("flow '" + label + "' does not fit in class " +
                             std::to_string(class_id));
    }
    c.t_open += (t_tx + guard) - free;
  }
  c.flows.push_back({label, t_tx});
  c.flows.push_back({label + ".guard", guard});
}

Nanos FromMillis(double ms) { return RoundNanos(ms * 1e6); }

}  // namespace selfassess::tsn
