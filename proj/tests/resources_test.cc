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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "selfassess/criteria.h"
#include "selfassess/errors.h"

namespace selfassess {
namespace {

constexpr int64_t kGb = 1000000000;

NodeState Node(int64_t cores, int64_t cores_used = 0, int64_t gb = 32) {
  NodeState node;
  node.node_id = "n";
  node.totals[kinds::kCpuCores] = Rational(cores);
  node.in_use[kinds::kCpuCores] = Rational(cores_used);
  node.totals[kinds::kMemBytes] = Rational(gb * kGb);
  return node;
}

// Reference grade from the two anchors (0 -> 1, available -> 0) by linear
// interpolation, in exact rational arithmetic via cross products.
double Interpolated(int64_t requested, int64_t available) {
  return static_cast<double>(available - requested) / static_cast<double>(available);
}

TEST(RegistryTest, BuiltinsResolve) {
  auto registry = ResourceRegistry::WithBuiltins();
  EXPECT_TRUE(registry.Contains(kinds::kCpuCores));
  EXPECT_TRUE(registry.Contains(kinds::kMemBytes));
  EXPECT_TRUE(registry.Contains(kinds::kNetBandwidth));
  EXPECT_TRUE(registry.Contains(kinds::kTsnTas));
  EXPECT_EQ(registry.Kinds().size(), 4u);
}

TEST(RegistryTest, RegisterThenAssess) {
  ResourceRegistry registry;
  registry.Register(MakeQuantityDescriptor(kinds::kCpuCores));
  AdmissionRequest r;
  r.requirements.push_back({kinds::kCpuCores, Rational(4), {}});
  SaltSource salt(0);
  auto b = SelfAssess(r, Node(8), registry, {}, salt);
  EXPECT_EQ(b.current_resources, 0.5);
}

TEST(RegistryTest, DuplicateKindConflicts) {
  auto registry = ResourceRegistry::WithBuiltins();
  EXPECT_THROW(registry.Register(MakeQuantityDescriptor(kinds::kCpuCores)), RegistryConflict);
}

TEST(RegistryTest, UnknownKindIsDistinctError) {
  auto registry = ResourceRegistry::WithBuiltins();
  try {
    registry.Get("gpu.vram");
    FAIL();
  } catch (const UnknownResourceType &e) {
    EXPECT_EQ(e.kind(), "gpu.vram");
  }
  AdmissionRequest r;
  r.requirements.push_back({"gpu.vram", Rational(1), {}});
  EXPECT_THROW(AssessBareMetal(r, Node(8), registry), UnknownResourceType);
}

TEST(RegistryTest, RejectsUnknownParams) {
  auto registry = ResourceRegistry::WithBuiltins();
  EXPECT_THROW(registry.ValidateRequirement({kinds::kCpuCores, Rational(1), {{"speed", 2.0}}}),
               ContractViolation);
  EXPECT_NO_THROW(
      registry.ValidateRequirement({kinds::kTsnTas, Rational(1), {{"data_size_bits", 1e6}}}));
}

TEST(CpuTest, BareMetal) {
  EXPECT_EQ(BareMetalCpu(Rational(9), Node(8)), 0);
  EXPECT_EQ(BareMetalCpu(Rational(-1), Node(8)), 0);
  EXPECT_EQ(BareMetalCpu(Rational(8), Node(8)), 1);
  EXPECT_EQ(BareMetalCpu(Rational(4), Node(8)), 1);
  EXPECT_EQ(BareMetalCpu(Rational(0), Node(8)), 1);
  // Total, not current capacity.
  EXPECT_EQ(BareMetalCpu(Rational(8), Node(8, 6)), 1);
}

TEST(CpuTest, Capability) {
  EXPECT_EQ(CpuCapability(Rational(8), Node(8)), 0.0);
  EXPECT_EQ(CpuCapability(Rational(0), Node(8)), 1.0);
  EXPECT_EQ(CpuCapability(Rational(4), Node(8)), Interpolated(4, 8));
  EXPECT_EQ(CpuCapability(Rational(4), Node(8)), 0.5);
  // Availability is totals minus in_use.
  EXPECT_EQ(CpuCapability(Rational(1), Node(8, 6)), 0.5);
  EXPECT_EQ(CpuCapability(Rational(2), Node(8, 6)), 0.0);
}

TEST(MemoryTest, Capability) {
  EXPECT_EQ(MemoryCapability(Rational(32 * kGb), Node(8)), 0.0);
  EXPECT_EQ(MemoryCapability(Rational(0), Node(8)), 1.0);
  EXPECT_EQ(MemoryCapability(Rational(16 * kGb), Node(8)), 0.5);
  EXPECT_EQ(MemoryCapability(Rational(33 * kGb), Node(8)), 0.0);
}

TEST(QuantityTest, MonotoneAndZeroAtAvailable) {
  std::mt19937_64 rng(47);
  for (const char *kind : {kinds::kCpuCores, kinds::kMemBytes, kinds::kNetBandwidth}) {
    for (int trial = 0; trial < 200; ++trial) {
      int64_t total = std::uniform_int_distribution<int64_t>(1, 1000000)(rng);
      int64_t used = std::uniform_int_distribution<int64_t>(0, total - 1)(rng);
      NodeState node;
      node.totals[kind] = Rational(total);
      node.in_use[kind] = Rational(used);
      int64_t available = total - used;
      EXPECT_EQ(QuantityCapability(kind, Rational(available), node), 0.0);
      double prev = 2.0;
      for (int k = 0; k <= 20; ++k) {
        int64_t req = available * k / 20;
        double g = QuantityCapability(kind, Rational(req), node);
        ASSERT_GE(g, 0.0);
        ASSERT_LE(g, 1.0);
        ASSERT_LE(g, prev);
        if (req < available) ASSERT_NEAR(g, Interpolated(req, available), 1e-15);
        prev = g;
      }
    }
  }
}

TEST(TasTest, BareMetal) {
  NodeState none;
  EXPECT_EQ(TasBareMetal(none), 0);
  NodeState plain;
  plain.interfaces.push_back({"eth0", 1e9, std::nullopt});
  EXPECT_EQ(TasBareMetal(plain), 0);
  NodeState tas = plain;
  tsn::TasSchedule schedule;
  schedule.classes.push_back({0, tsn::FromMillis(20), {}});
  tas.interfaces.push_back({"eth1", 1e9, schedule});
  EXPECT_EQ(TasBareMetal(tas), 1);
}

NodeState TasNode() {
  NodeState node;
  node.node_id = "bridge";
  tsn::TasSchedule schedule;
  schedule.classes.push_back({0, tsn::FromMillis(20), {{"s1", tsn::FromMillis(7)}}});
  schedule.classes.push_back({1, tsn::FromMillis(30), {{"s2", tsn::FromMillis(26)}}});
  node.interfaces.push_back({"eth0", 1e9, schedule});
  return node;
}

TEST(TasTest, RequirementGradePicksClassOrBest) {
  NodeState node = TasNode();
  Requirement r{kinds::kTsnTas, Rational(1), {{"data_size_bits", 5e6}}};
  double best = TasRequirementGrade(r, node);
  EXPECT_NEAR(best, 0.5 + (5.5 / 13.0) / 2.0, 1e-15);
  r.params["class_id"] = 1;
  EXPECT_NEAR(TasRequirementGrade(r, node), (5.5 / 4.0 - 1.0) / 2.0, 1e-15);
  r.params["class_id"] = 5;
  auto descriptor = MakeTasDescriptor();
  EXPECT_EQ(descriptor.bare_metal_check(r, node), 0);
  Requirement missing{kinds::kTsnTas, Rational(1), {}};
  EXPECT_THROW(TasRequirementGrade(missing, node), ContractViolation);
}

// Descriptor that logs every call so dispatch order can be observed.
ResourceTypeDescriptor Counting(const std::string &kind, int bare, double grade,
                                std::vector<std::string> *log) {
  return ResourceTypeDescriptor{
      kind,
      [=](const Requirement &, const NodeState &) {
        log->push_back("bare:" + kind);
        return bare;
      },
      [=](const Requirement &, const NodeState &) {
        log->push_back("grade:" + kind);
        return grade;
      },
      {}};
}

TEST(DispatchTest, TouchesListedKindsInListOrder) {
  std::mt19937_64 rng(53);
  const std::vector<std::string> all = {"k0", "k1", "k2", "k3", "k4", "k5"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> log;
    ResourceRegistry registry;
    std::vector<std::string> order = all;
    std::shuffle(order.begin(), order.end(), rng);
    // Registration order is deliberately unrelated to request order.
    for (const auto &k : order) registry.Register(Counting(k, 1, 0.5, &log));
    std::shuffle(order.begin(), order.end(), rng);
    size_t n = std::uniform_int_distribution<size_t>(1, order.size())(rng);
    AdmissionRequest r;
    for (size_t i = 0; i < n; ++i) r.requirements.push_back({order[i], Rational(1), {}});
    SaltSource salt(trial);
    SelfAssess(r, NodeState(), registry, {}, salt);
    std::vector<std::string> expected;
    for (size_t i = 0; i < n; ++i) expected.push_back("bare:" + order[i]);
    for (size_t i = 0; i < n; ++i) expected.push_back("grade:" + order[i]);
    ASSERT_EQ(log, expected);
  }
}

TEST(DispatchTest, BareMetalFailureSkipsGradersAndLaterChecks) {
  std::vector<std::string> log;
  ResourceRegistry registry;
  registry.Register(Counting("a", 1, 0.5, &log));
  registry.Register(Counting("b", 0, 0.5, &log));
  registry.Register(Counting("c", 1, 0.5, &log));
  AdmissionRequest r;
  for (const char *k : {"a", "b", "c"}) r.requirements.push_back({k, Rational(1), {}});
  SaltSource salt(0);
  auto result = SelfAssess(r, NodeState(), registry, {}, salt);
  EXPECT_EQ(result.suitability, 0.0);
  EXPECT_EQ(result.failing_kind, std::optional<std::string>("b"));
  EXPECT_EQ(log, (std::vector<std::string>{"bare:a", "bare:b"}));
}

TEST(NodeStateTest, Validate) {
  NodeState node = Node(8, 2);
  EXPECT_NO_THROW(node.Validate());
  node.in_use[kinds::kCpuCores] = Rational(9);
  EXPECT_THROW(node.Validate(), ContractViolation);
  node = Node(8);
  node.interfaces.push_back({"eth0", 0.0, std::nullopt});
  EXPECT_THROW(node.Validate(), ContractViolation);
}

}  // namespace
}  // namespace selfassess
