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

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "selfassess/core.h"
#include "selfassess/history.h"
#include "selfassess/rational.h"
#include "selfassess/tsn.h"

namespace selfassess {

namespace kinds {
inline constexpr const char *kCpuCores = "cpu.cores";
inline constexpr const char *kMemBytes = "mem.bytes";
inline constexpr const char *kNetBandwidth = "net.bandwidth_bps";
inline constexpr const char *kTsnTas = "tsn.tas";
}  // namespace kinds

struct NetworkInterface {
  std::string id;
  double bandwidth_bps = 0.0;
  std::optional<tsn::TasSchedule> tas;
};

/// Everything a node knows about itself when assessing a request.
struct NodeState {
  NodeId node_id;
  std::map<std::string, Rational> totals;
  std::map<std::string, Rational> in_use;
  std::vector<NetworkInterface> interfaces;
  HistoryLog history;
  EngineConfig config;

  /// totals - in_use for `kind`; zero when the node declares no total.
  Rational Available(const std::string &kind) const;
  Rational Total(const std::string &kind) const;

  /// 0 <= in_use <= totals per kind, positive interface bandwidths, valid
  /// schedules and config. Throws ContractViolation.
  void Validate() const;
};

/// Bare-metal check and current-capability grader for one resource kind.
struct ResourceTypeDescriptor {
  std::string kind;
  /// 1 when the node's total (not current) capacity supports the requirement.
  std::function<int(const Requirement &, const NodeState &)> bare_metal_check;
  /// Normalized grade in [0,1] of the requirement against current availability.
  std::function<double(const Requirement &, const NodeState &)> capability_grade;
  /// Parameter keys this kind understands; anything else is rejected.
  std::set<std::string> accepted_params;
};

class ResourceRegistry {
 public:
  /// Throws RegistryConflict when the kind is already present.
  void Register(ResourceTypeDescriptor descriptor);

  bool Contains(const std::string &kind) const;
  /// Throws UnknownResourceType.
  const ResourceTypeDescriptor &Get(const std::string &kind) const;

  /// Kind registered and every param accepted by it.
  void ValidateRequirement(const Requirement &requirement) const;

  std::vector<std::string> Kinds() const;

  /// Registry pre-populated with cpu.cores, mem.bytes, net.bandwidth_bps and tsn.tas.
  static ResourceRegistry WithBuiltins();

 private:
  std::map<std::string, ResourceTypeDescriptor> descriptors_;
};

/// 0 when requested exceeds the node total or is negative, otherwise 1.
int BareMetalQuantity(const std::string &kind, const Rational &requested, const NodeState &node);
/// 1 - requested/available, or 0 once requested reaches what is available.
double QuantityCapability(const std::string &kind, const Rational &requested,
                          const NodeState &node);

inline int BareMetalCpu(const Rational &requested_cores, const NodeState &node) {
  return BareMetalQuantity(kinds::kCpuCores, requested_cores, node);
}
inline double CpuCapability(const Rational &requested_cores, const NodeState &node) {
  return QuantityCapability(kinds::kCpuCores, requested_cores, node);
}
inline double MemoryCapability(const Rational &requested_bytes, const NodeState &node) {
  return QuantityCapability(kinds::kMemBytes, requested_bytes, node);
}

/// Descriptor for a plain countable resource (cores, bytes, bits/s).
ResourceTypeDescriptor MakeQuantityDescriptor(const std::string &kind);

/// 1 iff at least one interface carries a TAS schedule.
int TasBareMetal(const NodeState &node);

/// TAS requirement grade. Params: data_size_bits (required), guard_fraction,
/// interface (index), class_id. Without class_id the best class grade wins.
double TasRequirementGrade(const Requirement &requirement, const NodeState &node);

ResourceTypeDescriptor MakeTasDescriptor();

}  // namespace selfassess
