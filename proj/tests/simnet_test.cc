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

#include "selfassess/simnet.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "selfassess/errors.h"
#include "selfassess/json_io.h"

namespace selfassess::simnet {
namespace {

const std::string kData = SELFASSESS_DATA_DIR;
const std::string kGolden = SELFASSESS_GOLDEN_DIR;

NodeState Cores(const std::string &id, int64_t total, int64_t used = 0) {
  NodeState node;
  node.node_id = id;
  node.totals[kinds::kCpuCores] = Rational(total);
  node.in_use[kinds::kCpuCores] = Rational(used);
  return node;
}

AdmissionRequest Request(int64_t cores, const std::string &talker = "T",
                         const std::string &listener = "L") {
  AdmissionRequest r;
  r.requirements.push_back({kinds::kCpuCores, Rational(cores), {}});
  r.priority = 5;
  r.talker = talker;
  r.listener = listener;
  r.request_id = "req";
  return r;
}

LinkMetrics Link(double rtt_ms = 1.0) { return {1, rtt_ms / 1000.0, 0.0, 0.0001}; }

Topology Chain(const std::vector<std::string> &ids) {
  Topology t;
  for (const auto &id : ids) t.AddNode(Cores(id, 8));
  for (size_t i = 0; i + 1 < ids.size(); ++i) t.AddEdge(ids[i], ids[i + 1], Link());
  return t;
}

TEST(TopologyTest, EdgesAreSymmetricAndValidated) {
  Topology t = Chain({"T", "a", "L"});
  EXPECT_EQ(t.Link("a", "T").rtt, t.Link("T", "a").rtt);
  EXPECT_EQ(t.Neighbors("a"), (std::vector<NodeId>{"L", "T"}));
  EXPECT_THROW(t.AddEdge("T", "zz", Link()), LookupError);
  EXPECT_THROW(t.AddEdge("T", "T", Link()), ContractViolation);
  EXPECT_THROW(t.AddNode(Cores("a", 1)), ContractViolation);
  EXPECT_THROW(t.Node("zz"), LookupError);
}

TEST(TopologyTest, PathFoldsLinkMetrics) {
  Topology t;
  for (const char *id : {"T", "a", "L"}) t.AddNode(Cores(id, 8));
  t.AddEdge("T", "a", {1, 0.002, 0.1, 0.001});
  t.AddEdge("a", "L", {2, 0.003, 0.2, 0.004});
  auto p = t.PathToward("T", "L");
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->hops, 3u);
  EXPECT_DOUBLE_EQ(p->rtt, 0.005);
  EXPECT_DOUBLE_EQ(p->loss, 1.0 - 0.9 * 0.8);
  EXPECT_DOUBLE_EQ(p->pdv, 0.005);
  EXPECT_FALSE(t.PathToward("T", "L", {"a"}).has_value());
}

TEST(TopologyTest, PathPrefersFewerHopsThenLowerRtt) {
  Topology t;
  for (const char *id : {"T", "a", "b", "c", "L"}) t.AddNode(Cores(id, 8));
  t.AddEdge("T", "a", Link(10));
  t.AddEdge("a", "L", Link(10));
  t.AddEdge("T", "b", Link(1));
  t.AddEdge("b", "L", Link(1));
  t.AddEdge("T", "c", Link(0.1));
  t.AddEdge("c", "b", Link(0.1));
  auto p = t.PathToward("T", "L");
  EXPECT_EQ(p->hops, 2u);
  EXPECT_DOUBLE_EQ(p->rtt, 0.002);
}

TEST(SimulatorTest, FanoutPicksHighestSuitability) {
  Topology t = TopologyFromJson(LoadJsonFile(kData + "/topology_fanout.json"));
  Simulator sim(t, ResourceRegistry::WithBuiltins(), 3);
  AdmissionRequest req = Request(2);
  auto step = sim.StepHop("m", req, {"T", "m"});
  ASSERT_TRUE(step.next.has_value());
  EXPECT_EQ(*step.next, "n2");
  ASSERT_EQ(step.ranking.size(), 3u);
  EXPECT_EQ(step.ranking[0].node, "n2");
  EXPECT_EQ(step.ranking[1].node, "n3");
  EXPECT_EQ(step.ranking[2].node, "n1");
  EXPECT_EQ(step.ranking[2].suitability, 0.0);
}

TEST(SimulatorTest, IncapableNodeCancelsAtSelfAssessment) {
  Topology t;
  t.AddNode(Cores("T", 1));
  t.AddNode(Cores("L", 8));
  t.AddEdge("T", "L", Link());
  Simulator sim(t, ResourceRegistry::WithBuiltins(), 1);
  auto trace = sim.Run(Request(4));
  EXPECT_FALSE(trace.reached_listener);
  EXPECT_EQ(trace.cancel_reason, "incapable");
  EXPECT_EQ(trace.path, (std::vector<NodeId>{"T"}));
  ASSERT_EQ(trace.events.size(), 2u);
  EXPECT_EQ(trace.events[1].stage, Stage::kSelfAssess);
  EXPECT_EQ(trace.events[1].payload["outcome"], "cancel");
}

TEST(SimulatorTest, AllNeighborsIncapableExhaustsRoute) {
  Topology t;
  t.AddNode(Cores("T", 8));
  t.AddNode(Cores("a", 8, 7));
  t.AddNode(Cores("b", 2));
  t.AddNode(Cores("L", 8));
  for (const char *n : {"a", "b"}) {
    t.AddEdge("T", n, Link());
    t.AddEdge(n, "L", Link());
  }
  Simulator sim(t, ResourceRegistry::WithBuiltins(), 1);
  auto trace = sim.Run(Request(3));
  EXPECT_FALSE(trace.reached_listener);
  EXPECT_EQ(trace.cancel_reason, "route-exhausted");
  EXPECT_EQ(trace.path, (std::vector<NodeId>{"T"}));
}

TEST(SimulatorTest, LinearChainFollowsUniqueRoute) {
  Simulator sim(Chain({"T", "a", "b", "L"}), ResourceRegistry::WithBuiltins(), 9);
  auto trace = sim.Run(Request(2));
  EXPECT_TRUE(trace.reached_listener);
  EXPECT_EQ(trace.path, (std::vector<NodeId>{"T", "a", "b", "L"}));
}

TEST(SimulatorTest, HopLimitRaisesLoopDetected) {
  Simulator sim(Chain({"T", "a", "b", "c", "L"}), ResourceRegistry::WithBuiltins(), 9, 2);
  EXPECT_THROW(sim.Run(Request(2)), LoopDetected);
}

Topology Diamond() { return TopologyFromJson(LoadJsonFile(kData + "/topology_diamond.json")); }
AdmissionRequest DiamondRequest() {
  return RequestFromJson(LoadJsonFile(kData + "/request_diamond.json"));
}

TEST(SimulatorTest, DeterministicUnderFixedSeed) {
  std::string first;
  for (int run = 0; run < 5; ++run) {
    Simulator sim(Diamond(), ResourceRegistry::WithBuiltins(), 7);
    std::string text = sim.Run(DiamondRequest()).ToNdjson();
    if (run == 0) first = text;
    EXPECT_EQ(text, first);
  }
  Simulator sim(Diamond(), ResourceRegistry::WithBuiltins(), 7);
  EXPECT_EQ(sim.Run(DiamondRequest()).ToNdjson(), sim.Run(DiamondRequest()).ToNdjson());
}

TEST(SimulatorTest, StageOrderAndArgmaxPerHop) {
  Simulator sim(Diamond(), ResourceRegistry::WithBuiltins(), 7);
  auto trace = sim.Run(DiamondRequest());
  ASSERT_TRUE(trace.reached_listener);
  int hop = -1;
  char last = 'e';
  std::map<NodeId, double> replies;
  for (const auto &e : trace.events) {
    char s = static_cast<char>(e.stage);
    if (e.hop != hop) {
      EXPECT_EQ(last, 'e');
      EXPECT_EQ(s, 'a');
      hop = e.hop;
      replies.clear();
    } else {
      EXPECT_GE(s, last);
    }
    if (s == 'b') EXPECT_GT(e.payload["suitability"].get<double>(), 0.0);
    if (s == 'd') replies[e.node] = e.payload["suitability"].get<double>();
    if (s == 'e' && !replies.empty()) {
      NodeId next = e.payload["next"].get<std::string>();
      EXPECT_GT(replies.at(next), 0.0);
      for (const auto &[n, b] : replies) EXPECT_LE(b, replies.at(next));
    }
    last = s;
  }
  EXPECT_EQ(last, 'e');
}

TEST(SimulatorTest, DiamondMatchesGoldenTrace) {
  Simulator sim(Diamond(), ResourceRegistry::WithBuiltins(), 7);
  std::ifstream in(kGolden + "/diamond_trace_seed7.ndjson", std::ios::binary);
  ASSERT_TRUE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(sim.Run(DiamondRequest()).ToNdjson(), golden.str());
}

}  // namespace
}  // namespace selfassess::simnet
