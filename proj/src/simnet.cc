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

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>

#include "selfassess/errors.h"
#include "selfassess/json_io.h"

namespace selfassess::simnet {

using nlohmann::ordered_json;

void Topology::AddNode(NodeState node) {
  if (node.node_id.empty()) throw ContractViolation("node without id");
  if (nodes_.contains(node.node_id)) {
    throw ContractViolation("duplicate node id: " + node.node_id);
  }
  auto id = node.node_id;
  adjacency_[id];
  nodes_.emplace(std::move(id), std::move(node));
}

void Topology::AddEdge(const NodeId &a, const NodeId &b, const LinkMetrics &link) {
  if (!Contains(a) || !Contains(b)) {
    throw LookupError("edge " + a + "-" + b + " references an unknown node");
  }
  if (a == b) throw ContractViolation("self-loop edge on " + a);
  if (!(link.rtt >= 0.0 && link.pdv >= 0.0 && link.loss >= 0.0 && link.loss <= 1.0)) {
    throw ContractViolation("edge " + a + "-" + b + " has out-of-range metrics");
  }
  adjacency_[a][b] = link;
  adjacency_[b][a] = link;
}

const NodeState &Topology::Node(const NodeId &id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw LookupError("unknown node: " + id);
  return it->second;
}

NodeState &Topology::Node(const NodeId &id) {
  return const_cast<NodeState &>(std::as_const(*this).Node(id));
}

std::vector<NodeId> Topology::Neighbors(const NodeId &id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw LookupError("unknown node: " + id);
  std::vector<NodeId> out;
  for (const auto &[peer, unused] : it->second) out.push_back(peer);
  return out;
}

const LinkMetrics &Topology::Link(const NodeId &a, const NodeId &b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end() || !it->second.contains(b)) {
    throw LookupError("no edge " + a + "-" + b);
  }
  return it->second.at(b);
}

std::optional<ProximitySample> Topology::PathToward(const NodeId &from, const NodeId &listener,
                                                    const std::set<NodeId> &excluded) const {
  Node(from);
  Node(listener);
  if (from == listener) return ProximitySample{0, 0.0, 0.0, 0.0, listener};

  struct Label {
    uint64_t hops;
    double rtt;
    double delivery;
    double pdv;
  };
  using Key = std::tuple<uint64_t, double, NodeId>;
  std::map<NodeId, Label> best;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> frontier;
  best[from] = {0, 0.0, 1.0, 0.0};
  frontier.emplace(0, 0.0, from);
  std::set<NodeId> done;
  while (!frontier.empty()) {
    auto [hops, rtt, id] = frontier.top();
    frontier.pop();
    if (!done.insert(id).second) continue;
    const Label here = best.at(id);
    if (id == listener) {
      return ProximitySample{static_cast<uint32_t>(std::min<uint64_t>(
                                 here.hops, std::numeric_limits<uint32_t>::max())),
                             here.rtt, 1.0 - here.delivery, here.pdv, listener};
    }
    for (const auto &[peer, link] : adjacency_.at(id)) {
      if (done.contains(peer) || (excluded.contains(peer) && peer != listener)) continue;
      Label next{here.hops + link.hops, here.rtt + link.rtt, here.delivery * (1.0 - link.loss),
                 here.pdv + link.pdv};
      auto it = best.find(peer);
      if (it == best.end() || std::tie(next.hops, next.rtt) < std::tie(it->second.hops, it->second.rtt)) {
        best[peer] = next;
        frontier.emplace(next.hops, next.rtt, peer);
      }
    }
  }
  return std::nullopt;
}

std::string NegotiationTrace::ToNdjson() const {
  std::ostringstream out;
  for (const auto &e : events) {
    ordered_json line;
    line["hop"] = e.hop;
    line["stage"] = std::string(1, static_cast<char>(e.stage));
    line["node"] = e.node;
    line["payload"] = e.payload;
    out << line.dump() << '\n';
  }
  ordered_json summary;
  summary["result"] = reached_listener ? "reached" : "cancelled";
  summary["path"] = path;
  if (!cancel_reason.empty()) summary["reason"] = cancel_reason;
  out << summary.dump() << '\n';
  return out.str();
}

Simulator::Simulator(Topology topology, ResourceRegistry registry, uint64_t seed,
                     size_t hop_limit)
    : topology_(std::move(topology)), registry_(std::move(registry)), seed_(seed),
      hop_limit_(hop_limit) {}

SaltSource &Simulator::SaltFor(const NodeId &node, const AdmissionRequest &request) {
  std::string stream = node + "/" + request.request_id;
  auto it = salts_.find(stream);
  if (it == salts_.end()) {
    it = salts_.emplace(stream, SaltSource(DeriveSeed(seed_, stream))).first;
  }
  return it->second;
}

SuitabilityBreakdown Simulator::AssessAt(const NodeId &node, const AdmissionRequest &request,
                                         const std::set<NodeId> &excluded) {
  auto proximity = topology_.PathToward(node, request.listener, excluded);
  // Without a route the node grades its proximity as worst possible.
  ProximitySample sample = proximity.value_or(ProximitySample{
      std::numeric_limits<uint32_t>::max(), 1e300, 1.0, 1e300, request.listener});
  return SelfAssess(request, topology_.Node(node), registry_, sample, SaltFor(node, request));
}

HopOutcome Simulator::StepHop(const NodeId &current, const AdmissionRequest &request,
                              const std::set<NodeId> &visited, int hop) {
  topology_.Node(current);
  HopOutcome out;
  std::set<NodeId> behind = visited;
  behind.erase(current);

  out.self = AssessAt(current, request, behind);
  {
    ordered_json payload;
    payload["suitability"] = out.self.suitability;
    payload["outcome"] = out.self.suitability > 0.0 ? "capable" : "cancel";
    payload["breakdown"] = ToJson(out.self);
    out.events.push_back({hop, Stage::kSelfAssess, current, std::move(payload)});
  }
  if (out.self.suitability <= 0.0) {
    out.cancel_reason = "incapable";
    return out;
  }

  std::set<NodeId> excluded = behind;
  excluded.insert(current);
  std::vector<NodeId> neighbors;
  for (const auto &n : topology_.Neighbors(current)) {
    if (excluded.contains(n)) continue;
    if (n == request.listener || topology_.PathToward(n, request.listener, excluded)) {
      neighbors.push_back(n);
    }
  }

  bool listener_adjacent =
      std::find(neighbors.begin(), neighbors.end(), request.listener) != neighbors.end();
  if (listener_adjacent) {
    ordered_json payload;
    payload["ranking"] = ordered_json::array();
    payload["next"] = request.listener;
    payload["reason"] = "listener-adjacent";
    out.events.push_back({hop, Stage::kSort, current, std::move(payload)});
    out.next = request.listener;
    return out;
  }

  for (const auto &n : neighbors) {
    ordered_json payload;
    payload["neighbor"] = n;
    out.events.push_back({hop, Stage::kQuery, current, std::move(payload)});
  }
  for (const auto &n : neighbors) {
    SuitabilityBreakdown reply = AssessAt(n, request, excluded);
    ordered_json payload;
    payload["to"] = current;
    payload["suitability"] = reply.suitability;
    payload["breakdown"] = ToJson(reply);
    out.events.push_back({hop, Stage::kReply, n, std::move(payload)});
    out.ranking.push_back({n, reply.suitability});
  }

  std::sort(out.ranking.begin(), out.ranking.end(), [](const Candidate &a, const Candidate &b) {
    if (a.suitability != b.suitability) return a.suitability > b.suitability;
    return a.node < b.node;
  });
  ordered_json payload;
  payload["ranking"] = ordered_json::array();
  for (const auto &c : out.ranking) {
    payload["ranking"].push_back({{"node", c.node}, {"suitability", c.suitability}});
  }
  if (out.ranking.empty() || out.ranking.front().suitability <= 0.0) {
    payload["next"] = nullptr;
    payload["outcome"] = "cancel";
    out.events.push_back({hop, Stage::kSort, current, std::move(payload)});
    out.cancel_reason = "route-exhausted";
    return out;
  }
  out.next = out.ranking.front().node;
  payload["next"] = *out.next;
  out.events.push_back({hop, Stage::kSort, current, std::move(payload)});
  return out;
}

NegotiationTrace Simulator::Run(const AdmissionRequest &request) {
  topology_.Node(request.talker);
  topology_.Node(request.listener);
  salts_.clear();

  NegotiationTrace trace;
  std::set<NodeId> visited;
  NodeId current = request.talker;
  std::optional<NodeId> previous;
  trace.path.push_back(current);
  for (size_t hop = 0;; ++hop) {
    if (current == request.listener) {
      trace.reached_listener = true;
      return trace;
    }
    if (hop >= hop_limit_) {
      throw LoopDetected("negotiation exceeded " + std::to_string(hop_limit_) + " hops");
    }
    ordered_json received;
    received["from"] = previous ? ordered_json(*previous) : ordered_json(nullptr);
    received["request_id"] = request.request_id;
    trace.events.push_back({static_cast<int>(hop), Stage::kReceive, current, std::move(received)});

    visited.insert(current);
    HopOutcome step = StepHop(current, request, visited, static_cast<int>(hop));
    trace.per_hop.push_back({current, step.self});
    for (auto &e : step.events) trace.events.push_back(std::move(e));
    if (!step.next) {
      trace.cancel_reason = step.cancel_reason;
      return trace;
    }
    previous = current;
    current = *step.next;
    trace.path.push_back(current);
  }
}

}  // namespace selfassess::simnet
