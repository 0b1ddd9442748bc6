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

#include "selfassess/resources.h"

#include <algorithm>
#include <cmath>

#include "selfassess/errors.h"

namespace selfassess {

Rational NodeState::Total(const std::string &kind) const {
  auto it = totals.find(kind);
  return it == totals.end() ? Rational(0) : it->second;
}

Rational NodeState::Available(const std::string &kind) const {
  auto used = in_use.find(kind);
  return Total(kind) - (used == in_use.end() ? Rational(0) : used->second);
}

void NodeState::Validate() const {
  for (const auto &[kind, total] : totals) {
    if (total.IsNegative()) {
      throw ContractViolation("node " + node_id + ": negative total for '" + kind + "'");
    }
  }
  for (const auto &[kind, used] : in_use) {
    if (used.IsNegative() || used > Total(kind)) {
      throw ContractViolation("node " + node_id + ": in_use of '" + kind +
                              "' outside [0, total]");
    }
  }
  for (const auto &iface : interfaces) {
    if (!(iface.bandwidth_bps > 0.0)) {
      throw ContractViolation("node " + node_id + ": interface '" + iface.id +
                              "' needs positive bandwidth");
    }
    if (iface.tas) iface.tas->Validate();
  }
  config.Validate();
}

void ResourceRegistry::Register(ResourceTypeDescriptor descriptor) {
  if (descriptor.kind.empty()) {
    throw ContractViolation("resource descriptor without kind");
  }
  if (!descriptor.bare_metal_check || !descriptor.capability_grade) {
    throw ContractViolation("resource descriptor '" + descriptor.kind + "' is missing a function");
  }
  if (descriptors_.contains(descriptor.kind)) {
    throw RegistryConflict("resource type already registered: " + descriptor.kind);
  }
  auto kind = descriptor.kind;
  descriptors_.emplace(std::move(kind), std::move(descriptor));
}

bool ResourceRegistry::Contains(const std::string &kind) const {
  return descriptors_.contains(kind);
}

const ResourceTypeDescriptor &ResourceRegistry::Get(const std::string &kind) const {
  auto it = descriptors_.find(kind);
  if (it == descriptors_.end()) throw UnknownResourceType(kind);
  return it->second;
}

void ResourceRegistry::ValidateRequirement(const Requirement &requirement) const {
  const auto &descriptor = Get(requirement.kind);
  for (const auto &[key, value] : requirement.params) {
    if (!descriptor.accepted_params.contains(key)) {
      throw ContractViolation("requirement '" + requirement.kind + "' does not accept param '" +
                              key + "'");
    }
    if (!std::isfinite(value)) {
      throw ContractViolation("requirement '" + requirement.kind + "' param '" + key +
                              "' is not finite");
    }
  }
}

std::vector<std::string> ResourceRegistry::Kinds() const {
  std::vector<std::string> out;
  out.reserve(descriptors_.size());
  for (const auto &[kind, unused] : descriptors_) out.push_back(kind);
  return out;
}

ResourceRegistry ResourceRegistry::WithBuiltins() {
  ResourceRegistry registry;
  registry.Register(MakeQuantityDescriptor(kinds::kCpuCores));
  registry.Register(MakeQuantityDescriptor(kinds::kMemBytes));
  registry.Register(MakeQuantityDescriptor(kinds::kNetBandwidth));
  registry.Register(MakeTasDescriptor());
  return registry;
}

int BareMetalQuantity(const std::string &kind, const Rational &requested, const NodeState &node) {
  if (requested.IsNegative()) return 0;
  return requested > node.Total(kind) ? 0 : 1;
}

double QuantityCapability(const std::string &kind, const Rational &requested,
                          const NodeState &node) {
  if (requested.IsNegative()) {
    throw ContractViolation("negative request for '" + kind + "'");
  }
  Rational available = node.Available(kind);
  // Over-provision guard: taking everything that is left grades as 0.
  if (requested >= available) return 0.0;
  return 1.0 - Ratio(requested, available);
}

ResourceTypeDescriptor MakeQuantityDescriptor(const std::string &kind) {
  return ResourceTypeDescriptor{
      kind,
      [kind](const Requirement &r, const NodeState &n) {
        return BareMetalQuantity(kind, r.amount, n);
      },
      [kind](const Requirement &r, const NodeState &n) {
        return QuantityCapability(kind, r.amount, n);
      },
      {}};
}

namespace {

std::optional<double> Param(const Requirement &r, const char *key) {
  auto it = r.params.find(key);
  if (it == r.params.end()) return std::nullopt;
  return it->second;
}

/// Interfaces the requirement may use: the one named by `interface`, or all.
std::vector<const NetworkInterface *> CandidateInterfaces(const Requirement &r,
                                                          const NodeState &node) {
  std::vector<const NetworkInterface *> out;
  if (auto index = Param(r, "interface")) {
    double i = *index;
    if (i >= 0.0 && i == std::floor(i) && i < static_cast<double>(node.interfaces.size())) {
      const auto &iface = node.interfaces[static_cast<size_t>(i)];
      if (iface.tas) out.push_back(&iface);
    }
    return out;
  }
  for (const auto &iface : node.interfaces) {
    if (iface.tas) out.push_back(&iface);
  }
  return out;
}

tsn::ServiceFlow FlowFrom(const Requirement &r) {
  auto size = Param(r, "data_size_bits");
  if (!size || !(*size > 0.0)) {
    throw ContractViolation("tsn.tas requirement needs a positive data_size_bits param");
  }
  tsn::ServiceFlow flow;
  flow.data_size_bits = *size;
  flow.guard_fraction = Param(r, "guard_fraction").value_or(tsn::kDefaultGuardFraction);
  if (!(flow.guard_fraction >= 0.0)) {
    throw ContractViolation("tsn.tas guard_fraction must be nonnegative");
  }
  return flow;
}

bool HasClass(const tsn::TasSchedule &schedule, int class_id) {
  return std::any_of(schedule.classes.begin(), schedule.classes.end(),
                     [class_id](const tsn::TrafficClass &c) { return c.class_id == class_id; });
}

}  // namespace

int TasBareMetal(const NodeState &node) {
  return std::any_of(node.interfaces.begin(), node.interfaces.end(),
                     [](const NetworkInterface &i) { return i.tas.has_value(); })
             ? 1
             : 0;
}

double TasRequirementGrade(const Requirement &requirement, const NodeState &node) {
  tsn::ServiceFlow flow = FlowFrom(requirement);
  auto class_id = Param(requirement, "class_id");
  double best = 0.0;
  for (const auto *iface : CandidateInterfaces(requirement, node)) {
    if (class_id) {
      int id = static_cast<int>(*class_id);
      if (!HasClass(*iface->tas, id)) continue;
      best = std::max(best, tsn::TasCapability(flow, *iface->tas, id, iface->bandwidth_bps));
      continue;
    }
    for (const auto &g : tsn::GradeClasses(flow, *iface->tas, iface->bandwidth_bps)) {
      best = std::max(best, g.grade);
    }
  }
  return best;
}

ResourceTypeDescriptor MakeTasDescriptor() {
  return ResourceTypeDescriptor{
      kinds::kTsnTas,
      [](const Requirement &r, const NodeState &n) {
        if (TasBareMetal(n) == 0) return 0;
        auto candidates = CandidateInterfaces(r, n);
        if (candidates.empty()) return 0;
        if (auto class_id = Param(r, "class_id")) {
          int id = static_cast<int>(*class_id);
          return std::any_of(candidates.begin(), candidates.end(),
                             [id](const NetworkInterface *i) { return HasClass(*i->tas, id); })
                     ? 1
                     : 0;
        }
        return 1;
      },
      [](const Requirement &r, const NodeState &n) { return TasRequirementGrade(r, n); },
      {"data_size_bits", "guard_fraction", "interface", "class_id"}};
}

}  // namespace selfassess
