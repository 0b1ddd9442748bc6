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
#include <optional>
#include <random>
#include <span>
#include <string>

#include "selfassess/core.h"
#include "selfassess/history.h"
#include "selfassess/resources.h"

namespace selfassess {

/// Network conditions measured toward the request's listener.
struct ProximitySample {
  uint32_t hops = 0;
  double rtt = 0.0;   // seconds
  double loss = 0.0;  // fraction in [0,1]
  double pdv = 0.0;   // seconds
  NodeId toward;
};

struct BareMetalResult {
  int grade = 0;
  std::optional<std::string> failing_kind;
};

/// Walks the requirement list in order against total capacities and stops
/// at the first failure. Throws UnknownResourceType for unregistered kinds.
BareMetalResult AssessBareMetal(const AdmissionRequest &request, const NodeState &node,
                                const ResourceRegistry &registry);

/// Order-weighted combination of per-requirement grades:
///   f(rho_0)          = rho_0
///   f(rho_0..rho_n-1) = tau * rho_0 + (1 - tau) * f(rho_1..rho_n-1)
/// Any zero grade yields exactly 0.
double AssessCurrent(std::span<const double> rhos, double tau);

/// (priority + 1) / (p_max + 1): never 0, exactly 1 at p_max.
double GradePriority(int priority, int p_max);

/// The four normalized proximity sub-grades: hops, rtt, loss, pdv.
std::array<double, 4> ProximitySubgrades(const ProximitySample &sample,
                                         const ProximityMaxima &maxima);
/// Mean of ProximitySubgrades.
double AssessProximity(const ProximitySample &sample, const ProximityMaxima &maxima);

/// (1 - salt_weight) * sum(delta_i * rh_i) + salt_weight * salt.
double AssessHistory(const HistoryMetrics &metrics, double salt, const EngineConfig &config);

/// Per-node uniform salt stream. Draws are in [0,1) with 53 random bits and
/// depend only on the seed and the number of prior draws.
class SaltSource {
 public:
  explicit SaltSource(uint64_t seed) : engine_(seed) {}
  double Draw() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 &engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

uint64_t SplitMix64(uint64_t x);
/// Independent child seed for a named stream (node id, experiment cell...).
uint64_t DeriveSeed(uint64_t master, const std::string &stream);
uint64_t DeriveSeed(uint64_t master, uint64_t stream);

/// How many criteria contribute to the combined value, cumulatively.
enum class CriteriaDepth {
  kBareMetal,  // B = bare_metal
  kCurrent,    // ... x current resources
  kPriority,   // ... x priority
  kAll,        // ... x (proximity + history) / 2
};

struct AssessmentOptions {
  CriteriaDepth depth = CriteriaDepth::kAll;
  /// Replace the measured proximity / history grade (experiments).
  std::optional<double> proximity_override;
  std::optional<double> history_override;
};

/// Full self-assessment of `request` by `node`. Inactive criteria are
/// reported as 1 so that `suitability` always equals Combine() of the
/// reported grades. The salt is drawn once, only when the history
/// criterion is evaluated.
SuitabilityBreakdown SelfAssess(const AdmissionRequest &request, const NodeState &node,
                                const ResourceRegistry &registry,
                                const ProximitySample &proximity, SaltSource &salt,
                                const AssessmentOptions &options = {});

}  // namespace selfassess
