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

#include "selfassess/criteria.h"

#include <algorithm>
#include <sstream>
#include <vector>

#include "selfassess/errors.h"

namespace selfassess {

BareMetalResult AssessBareMetal(const AdmissionRequest &request, const NodeState &node,
                                const ResourceRegistry &registry) {
  for (const auto &req : request.requirements) {
    const auto &descriptor = registry.Get(req.kind);
    if (descriptor.bare_metal_check(req, node) == 0) {
      return {0, req.kind};
    }
  }
  return {1, std::nullopt};
}

double AssessCurrent(std::span<const double> rhos, double tau) {
  if (rhos.empty()) {
    throw ContractViolation("current-resources criterion needs at least one grade");
  }
  for (double rho : rhos) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
      std::ostringstream msg;
      msg << "requirement grade out of [0,1]: " << rho;
      throw ContractViolation(msg.str());
    }
  }
  if (std::find(rhos.begin(), rhos.end(), 0.0) != rhos.end()) return 0.0;
  // Unrolled from the tail; identical operations to the recursive form.
  double value = rhos.back();
  for (size_t i = rhos.size() - 1; i-- > 0;) {
    value = tau * rhos[i] + (1.0 - tau) * value;
  }
  return value;
}

double GradePriority(int priority, int p_max) {
  if (p_max < 0 || priority < 0 || priority > p_max) {
    throw ContractViolation("priority " + std::to_string(priority) + " outside [0, " +
                            std::to_string(p_max) + "]");
  }
  return static_cast<double>(priority + 1) / static_cast<double>(p_max + 1);
}

std::array<double, 4> ProximitySubgrades(const ProximitySample &sample,
                                         const ProximityMaxima &maxima) {
  if (!(maxima.hop_max > 0.0 && maxima.rtt_max > 0.0 && maxima.pdv_max > 0.0)) {
    throw ContractViolation("proximity maxima must be positive");
  }
  if (!(sample.rtt >= 0.0 && sample.pdv >= 0.0 && sample.loss >= 0.0 && sample.loss <= 1.0)) {
    throw ContractViolation("proximity sample out of range");
  }
  auto unit = [](double v) { return std::clamp(v, 0.0, 1.0); };
  return {unit(1.0 - static_cast<double>(sample.hops) / maxima.hop_max),
          unit(1.0 - sample.rtt / maxima.rtt_max), 1.0 - sample.loss,
          unit(1.0 - sample.pdv / maxima.pdv_max)};
}

double AssessProximity(const ProximitySample &sample, const ProximityMaxima &maxima) {
  auto g = ProximitySubgrades(sample, maxima);
  return (g[0] + g[1] + g[2] + g[3]) / 4.0;
}

double AssessHistory(const HistoryMetrics &metrics, double salt, const EngineConfig &config) {
  const double rh[4] = {metrics.rh1, metrics.rh2, metrics.rh3, metrics.rh4};
  double weighted = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!(rh[i] >= 0.0 && rh[i] <= 1.0)) {
      throw ContractViolation("history metric rh" + std::to_string(i + 1) + " outside [0,1]");
    }
    weighted += config.delta[i] * rh[i];
  }
  if (!(salt >= 0.0 && salt <= 1.0)) {
    throw ContractViolation("salt outside [0,1]");
  }
  const double theta = config.salt_weight;
  return (1.0 - theta) * weighted + theta * salt;
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, const std::string &stream) {
  // FNV-1a of the stream name, mixed with the master seed.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return SplitMix64(master ^ SplitMix64(h));
}

uint64_t DeriveSeed(uint64_t master, uint64_t stream) {
  return SplitMix64(master ^ SplitMix64(stream + 0x632be59bd9b4e019ULL));
}

SuitabilityBreakdown SelfAssess(const AdmissionRequest &request, const NodeState &node,
                                const ResourceRegistry &registry,
                                const ProximitySample &proximity, SaltSource &salt,
                                const AssessmentOptions &options) {
  const EngineConfig &config = node.config;
  ValidateRequest(request, config.p_max);
  for (const auto &req : request.requirements) registry.ValidateRequirement(req);

  SuitabilityBreakdown out;
  BareMetalResult bare = AssessBareMetal(request, node, registry);
  out.bare_metal = bare.grade;
  if (bare.grade == 0) {
    out.failing_kind = bare.failing_kind;
    out.priority_grade = GradePriority(request.priority, config.p_max);
    out.suitability = 0.0;
    return out;
  }

  const auto depth = options.depth;
  out.current_resources = 1.0;
  out.priority_grade = 1.0;
  out.proximity = 1.0;
  out.history = 1.0;

  if (depth >= CriteriaDepth::kCurrent) {
    std::vector<double> rhos;
    rhos.reserve(request.requirements.size());
    for (const auto &req : request.requirements) {
      double rho = registry.Get(req.kind).capability_grade(req, node);
      if (!(rho >= 0.0 && rho <= 1.0)) {
        std::ostringstream msg;
        msg << "grader for '" << req.kind << "' returned " << rho << " outside [0,1]";
        throw ContractViolation(msg.str());
      }
      rhos.push_back(rho);
      out.per_requirement.push_back({req.kind, rho});
    }
    out.current_resources = AssessCurrent(rhos, config.tau);
  }
  if (depth >= CriteriaDepth::kPriority) {
    out.priority_grade = GradePriority(request.priority, config.p_max);
  }
  if (depth >= CriteriaDepth::kAll) {
    out.proximity = options.proximity_override
                        ? *options.proximity_override
                        : AssessProximity(proximity, config.proximity_maxima);
    if (options.history_override) {
      out.history = *options.history_override;
    } else {
      HistoryMetrics metrics = ComputeMetrics(node.history, request, node.totals);
      out.history = AssessHistory(metrics, salt.Draw(), config);
    }
  }
  out.suitability = Combine(out.bare_metal, out.current_resources, out.priority_grade,
                            out.proximity, out.history);
  return out;
}

}  // namespace selfassess
