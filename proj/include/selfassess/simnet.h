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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "selfassess/core.h"
#include "selfassess/criteria.h"
#include "selfassess/resources.h"

namespace selfassess::simnet {

/// Measured characteristics of one link.
struct LinkMetrics {
  uint32_t hops = 1;
  double rtt = 0.0;  // seconds
  double loss = 0.0;
  double pdv = 0.0;  // seconds
};

/// Undirected graph of nodes with per-link network metrics.
class Topology {
 public:
  void AddNode(NodeState node);
  void AddEdge(const NodeId &a, const NodeId &b, const LinkMetrics &link);

  bool Contains(const NodeId &id) const { return nodes_.contains(id); }
  const NodeState &Node(const NodeId &id) const;
  NodeState &Node(const NodeId &id);
  const std::map<NodeId, NodeState> &nodes() const { return nodes_; }

  /// Sorted by id.
  std::vector<NodeId> Neighbors(const NodeId &id) const;
  const LinkMetrics &Link(const NodeId &a, const NodeId &b) const;

  /// Best path (fewest hops, then lowest rtt) from `from` to `listener`
  /// avoiding `excluded`, folded into one proximity sample: hops, rtt and
  /// pdv add up, delivery probabilities multiply. nullopt when unreachable.
  std::optional<ProximitySample> PathToward(const NodeId &from, const NodeId &listener,
                                            const std::set<NodeId> &excluded = {}) const;

 private:
  std::map<NodeId, NodeState> nodes_;
  std::map<NodeId, std::map<NodeId, LinkMetrics>> adjacency_;
};

/// Negotiation stages per hop: a receive, b self-assess, c query
/// neighbors, d collect replies, e sort and forward.
enum class Stage : char { kReceive = 'a', kSelfAssess = 'b', kQuery = 'c', kReply = 'd', kSort = 'e' };

struct TraceEvent {
  int hop = 0;
  Stage stage = Stage::kReceive;
  NodeId node;
  nlohmann::ordered_json payload;
};

struct Candidate {
  NodeId node;
  double suitability = 0.0;
};

struct HopOutcome {
  std::optional<NodeId> next;  // nullopt on cancel
  std::string cancel_reason;   // "incapable" or "route-exhausted"
  SuitabilityBreakdown self;
  std::vector<Candidate> ranking;
  std::vector<TraceEvent> events;
};

struct HopBreakdown {
  NodeId node;
  SuitabilityBreakdown breakdown;
};

struct NegotiationTrace {
  std::vector<TraceEvent> events;
  std::vector<NodeId> path;
  bool reached_listener = false;
  std::string cancel_reason;
  std::vector<HopBreakdown> per_hop;

  /// One JSON object per line; the last line summarises the outcome.
  std::string ToNdjson() const;
};

inline constexpr size_t kDefaultHopLimit = 64;

/// Single-threaded deterministic negotiation over a topology. Each node's
/// salt stream is derived from the master seed, the node id and the
/// request id, so a negotiation replays bit-identically.
class Simulator {
 public:
  Simulator(Topology topology, ResourceRegistry registry, uint64_t seed,
            size_t hop_limit = kDefaultHopLimit);

  /// Stages b..e at `current`. Nodes in `visited` are never candidates.
  HopOutcome StepHop(const NodeId &current, const AdmissionRequest &request,
                     const std::set<NodeId> &visited, int hop = 0);

  /// Hops from the talker until the listener, a cancel, or the hop limit
  /// (LoopDetected).
  NegotiationTrace Run(const AdmissionRequest &request);

  const Topology &topology() const { return topology_; }

 private:
  SaltSource &SaltFor(const NodeId &node, const AdmissionRequest &request);
  SuitabilityBreakdown AssessAt(const NodeId &node, const AdmissionRequest &request,
                                const std::set<NodeId> &excluded);

  Topology topology_;
  ResourceRegistry registry_;
  uint64_t seed_;
  size_t hop_limit_;
  std::map<std::string, SaltSource> salts_;
};

}  // namespace selfassess::simnet
