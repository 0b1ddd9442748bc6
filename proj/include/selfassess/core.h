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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfassess/rational.h"

namespace selfassess {

using NodeId = std::string;

/// One element of an admission request's requirement list.
struct Requirement {
  /// Registry key, e.g. "cpu.cores", "mem.bytes", "tsn.tas".
  std::string kind;
  /// Quantity in the kind's native unit.
  Rational amount;
  /// Extra scalars for composite kinds (TAS message size, class, ...).
  std::map<std::string, double> params;
};

/// Ordered requirement list plus priority: the unit of negotiation.
/// Index 0 is the most relevant requirement and the order is never changed.
struct AdmissionRequest {
  std::vector<Requirement> requirements;
  int priority = 0;
  NodeId talker;
  NodeId listener;
  std::string request_id;
};

/// Grade of one requirement as produced by its capability grader.
struct RequirementGrade {
  std::string kind;
  double rho = 0.0;
};

/// The five criterion grades and the combined suitability value.
struct SuitabilityBreakdown {
  int bare_metal = 0;
  double current_resources = 0.0;
  double priority_grade = 0.0;
  double proximity = 0.0;
  double history = 0.0;
  double suitability = 0.0;
  std::vector<RequirementGrade> per_requirement;
  /// Set when bare_metal is 0: the first kind whose bare-metal check failed.
  std::optional<std::string> failing_kind;
};

/// Normalizer bounds for the proximity sub-grades.
struct ProximityMaxima {
  double hop_max = 32.0;
  double rtt_max = 1.0;  // seconds
  double pdv_max = 0.1;  // seconds
};

inline constexpr double kTauMin = 0.5;
inline constexpr double kTauMax = 1.0;
inline constexpr double kSaltWeightLimit = 0.01;

struct EngineConfig {
  double tau = 0.51;
  int p_max = 7;
  std::array<double, 4> delta = {0.25, 0.25, 0.25, 0.25};
  double salt_weight = 1e-10;
  ProximityMaxima proximity_maxima;
  uint64_t rng_seed = 0;
  size_t history_window = 256;

  /// Throws ContractViolation with a message naming the bad field.
  void Validate() const;
};

/// Checks non-empty list, nonnegative amounts, non-empty kinds and the
/// priority range [0, p_max].
void ValidateRequest(const AdmissionRequest &request, int p_max);

/// B = bare_metal * current * priority * (proximity + history) / 2.
/// Throws ContractViolation naming the criterion that is out of range.
double Combine(int bare_metal, double current, double priority_grade, double proximity,
               double history);

}  // namespace selfassess
