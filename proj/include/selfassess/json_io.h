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

#include <string>

#include "json.hpp"
#include "selfassess/core.h"
#include "selfassess/criteria.h"
#include "selfassess/resources.h"
#include "selfassess/simnet.h"
#include "selfassess/tsn.h"

namespace selfassess {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; ConfigError on I/O or syntax errors.
Json LoadJsonFile(const std::string &path);

// Amounts accept integers, decimal numbers, or strings such as "5/2".
Rational AmountFromJson(const Json &j);
Json ToJson(const Rational &amount);

AdmissionRequest RequestFromJson(const Json &j);
Json ToJson(const AdmissionRequest &request);

SuitabilityBreakdown BreakdownFromJson(const Json &j);
Json ToJson(const SuitabilityBreakdown &breakdown);

/// Fields missing from `j` keep the value in `base`; the result is validated.
EngineConfig ConfigFromJson(const Json &j, const EngineConfig &base = {});
Json ToJson(const EngineConfig &config);

/// {interface_id, bandwidth_bps, classes: [{class_id, t_open_ms, flows: [{label, t_tx_ms}]}]}
/// A missing "classes" member means the interface has no shaper.
NetworkInterface InterfaceFromJson(const Json &j);
Json ToJson(const NetworkInterface &iface);

/// {node_id, totals, in_use, interfaces[], config?}. `defaults` seeds the
/// node's engine config before its own "config" member is applied.
NodeState NodeFromJson(const Json &j, const EngineConfig &defaults = {});
Json ToJson(const NodeState &node);

/// {hops, rtt_ms, loss, pdv_ms, toward?}
ProximitySample ProximityFromJson(const Json &j);

/// {nodes: [...], edges: [{a, b, hops, rtt_ms, loss, pdv_ms}]}
simnet::Topology TopologyFromJson(const Json &j, const EngineConfig &defaults = {});

}  // namespace selfassess
