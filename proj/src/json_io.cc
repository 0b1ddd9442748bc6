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

#include "selfassess/json_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "selfassess/errors.h"

namespace selfassess {

namespace {

template <class F>
auto Guard(const std::string &what, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::map<std::string, Rational> AmountMap(const Json &j) {
  std::map<std::string, Rational> out;
  for (const auto &[kind, amount] : j.items()) out[kind] = AmountFromJson(amount);
  return out;
}

Json AmountMapToJson(const std::map<std::string, Rational> &amounts) {
  Json out = Json::object();
  for (const auto &[kind, amount] : amounts) out[kind] = ToJson(amount);
  return out;
}

}  // namespace

Json LoadJsonFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Rational AmountFromJson(const Json &j) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  if (j.is_number_float()) return Rational::FromDouble(j.get<double>());
  if (j.is_string()) return Rational::Parse(j.get<std::string>());
  throw ConfigError("amount must be a number or a string, got " + j.dump());
}

Json ToJson(const Rational &amount) {
  if (amount.den() == 1) return amount.num();
  return amount.ToString();
}

AdmissionRequest RequestFromJson(const Json &j) {
  return Guard("admission request", [&] {
    AdmissionRequest r;
    const auto &reqs = j.at("requirements");
    if (!reqs.is_array()) throw ConfigError("requirements must be an array");
    for (const auto &item : reqs) {
      Requirement req;
      req.kind = item.at("kind").get<std::string>();
      req.amount = item.contains("amount") ? AmountFromJson(item.at("amount")) : Rational(0);
      if (item.contains("params")) {
        for (const auto &[key, value] : item.at("params").items()) {
          req.params[key] = value.get<double>();
        }
      }
      r.requirements.push_back(std::move(req));
    }
    r.priority = j.at("priority").get<int>();
    r.talker = j.value("talker", "");
    r.listener = j.value("listener", "");
    r.request_id = j.value("request_id", "");
    return r;
  });
}

Json ToJson(const AdmissionRequest &request) {
  Json reqs = Json::array();
  for (const auto &req : request.requirements) {
    Json item;
    item["kind"] = req.kind;
    item["amount"] = ToJson(req.amount);
    if (!req.params.empty()) {
      Json params = Json::object();
      for (const auto &[key, value] : req.params) params[key] = value;
      item["params"] = params;
    }
    reqs.push_back(std::move(item));
  }
  Json out;
  out["requirements"] = std::move(reqs);
  out["priority"] = request.priority;
  out["talker"] = request.talker;
  out["listener"] = request.listener;
  out["request_id"] = request.request_id;
  return out;
}

SuitabilityBreakdown BreakdownFromJson(const Json &j) {
  return Guard("suitability breakdown", [&] {
    SuitabilityBreakdown b;
    b.bare_metal = j.at("bare_metal").get<int>();
    b.current_resources = j.at("current_resources").get<double>();
    b.priority_grade = j.at("priority_grade").get<double>();
    b.proximity = j.at("proximity").get<double>();
    b.history = j.at("history").get<double>();
    b.suitability = j.at("suitability").get<double>();
    for (const auto &item : j.at("per_requirement")) {
      b.per_requirement.push_back({item.at("kind").get<std::string>(), item.at("rho").get<double>()});
    }
    if (j.contains("failing_kind")) b.failing_kind = j.at("failing_kind").get<std::string>();
    return b;
  });
}

Json ToJson(const SuitabilityBreakdown &b) {
  Json out;
  out["bare_metal"] = b.bare_metal;
  out["current_resources"] = b.current_resources;
  out["priority_grade"] = b.priority_grade;
  out["proximity"] = b.proximity;
  out["history"] = b.history;
  out["suitability"] = b.suitability;
  out["per_requirement"] = Json::array();
  for (const auto &g : b.per_requirement) {
    out["per_requirement"].push_back({{"kind", g.kind}, {"rho", g.rho}});
  }
  if (b.failing_kind) out["failing_kind"] = *b.failing_kind;
  return out;
}

EngineConfig ConfigFromJson(const Json &j, const EngineConfig &base) {
  EngineConfig c = base;
  Guard("engine config", [&] {
    if (!j.is_object()) throw ConfigError("engine config must be an object");
    for (const auto &[key, value] : j.items()) {
      if (key == "tau") {
        c.tau = value.get<double>();
      } else if (key == "p_max") {
        c.p_max = value.get<int>();
      } else if (key == "delta") {
        if (!value.is_array() || value.size() != 4) {
          throw ConfigError("engine config: delta must be an array of four weights");
        }
        for (size_t i = 0; i < 4; ++i) c.delta[i] = value[i].get<double>();
      } else if (key == "salt_weight") {
        c.salt_weight = value.get<double>();
      } else if (key == "proximity_maxima") {
        c.proximity_maxima.hop_max = value.value("hop_max", c.proximity_maxima.hop_max);
        c.proximity_maxima.rtt_max = value.value("rtt_max", c.proximity_maxima.rtt_max);
        c.proximity_maxima.pdv_max = value.value("pdv_max", c.proximity_maxima.pdv_max);
      } else if (key == "rng_seed") {
        c.rng_seed = value.get<uint64_t>();
      } else if (key == "history_window") {
        c.history_window = value.get<size_t>();
      } else {
        throw ConfigError("engine config: unknown field '" + key + "'");
      }
    }
    return 0;
  });
  try {
    c.Validate();
  } catch (const ContractViolation &e) {
    throw ConfigError(std::string("engine config: ") + e.what());
  }
  return c;
}

Json ToJson(const EngineConfig &c) {
  Json out;
  out["tau"] = c.tau;
  out["p_max"] = c.p_max;
  out["delta"] = c.delta;
  out["salt_weight"] = c.salt_weight;
  out["proximity_maxima"] = {{"hop_max", c.proximity_maxima.hop_max},
                             {"rtt_max", c.proximity_maxima.rtt_max},
                             {"pdv_max", c.proximity_maxima.pdv_max}};
  out["rng_seed"] = c.rng_seed;
  out["history_window"] = c.history_window;
  return out;
}

NetworkInterface InterfaceFromJson(const Json &j) {
  return Guard("interface", [&] {
    NetworkInterface iface;
    iface.id = j.at("interface_id").get<std::string>();
    iface.bandwidth_bps = j.at("bandwidth_bps").get<double>();
    if (j.contains("classes")) {
      tsn::TasSchedule schedule;
      for (const auto &cj : j.at("classes")) {
        tsn::TrafficClass c;
        c.class_id = cj.at("class_id").get<int>();
        c.t_open = tsn::FromMillis(cj.at("t_open_ms").get<double>());
        if (cj.contains("flows")) {
          for (const auto &fj : cj.at("flows")) {
            c.flows.push_back({fj.at("label").get<std::string>(),
                               tsn::FromMillis(fj.at("t_tx_ms").get<double>())});
          }
        }
        schedule.classes.push_back(std::move(c));
      }
      schedule.Validate();
      iface.tas = std::move(schedule);
    }
    return iface;
  });
}

Json ToJson(const NetworkInterface &iface) {
  Json out;
  out["interface_id"] = iface.id;
  out["bandwidth_bps"] = iface.bandwidth_bps;
  if (iface.tas) {
    out["classes"] = Json::array();
    for (const auto &c : iface.tas->classes) {
      Json cj;
      cj["class_id"] = c.class_id;
      cj["t_open_ms"] = tsn::ToMillis(c.t_open);
      cj["flows"] = Json::array();
      for (const auto &f : c.flows) {
        cj["flows"].push_back({{"label", f.label}, {"t_tx_ms", tsn::ToMillis(f.t_tx)}});
      }
      out["classes"].push_back(std::move(cj));
    }
  }
  return out;
}

NodeState NodeFromJson(const Json &j, const EngineConfig &defaults) {
  NodeState node = Guard("node", [&] {
    NodeState n;
    n.node_id = j.at("node_id").get<std::string>();
    n.config = j.contains("config") ? ConfigFromJson(j.at("config"), defaults) : defaults;
    n.history = HistoryLog(n.config.history_window);
    if (j.contains("totals")) n.totals = AmountMap(j.at("totals"));
    if (j.contains("in_use")) n.in_use = AmountMap(j.at("in_use"));
    if (j.contains("interfaces")) {
      for (const auto &ij : j.at("interfaces")) n.interfaces.push_back(InterfaceFromJson(ij));
    }
    return n;
  });
  node.Validate();
  return node;
}

Json ToJson(const NodeState &node) {
  Json out;
  out["node_id"] = node.node_id;
  out["totals"] = AmountMapToJson(node.totals);
  out["in_use"] = AmountMapToJson(node.in_use);
  out["interfaces"] = Json::array();
  for (const auto &iface : node.interfaces) out["interfaces"].push_back(ToJson(iface));
  out["config"] = ToJson(node.config);
  return out;
}

ProximitySample ProximityFromJson(const Json &j) {
  return Guard("proximity sample", [&] {
    ProximitySample s;
    s.hops = j.value("hops", 0u);
    s.rtt = j.value("rtt_ms", 0.0) / 1000.0;
    s.loss = j.value("loss", 0.0);
    s.pdv = j.value("pdv_ms", 0.0) / 1000.0;
    s.toward = j.value("toward", "");
    if (!(s.rtt >= 0.0 && s.pdv >= 0.0 && s.loss >= 0.0 && s.loss <= 1.0)) {
      throw ConfigError("proximity sample out of range");
    }
    return s;
  });
}

simnet::Topology TopologyFromJson(const Json &j, const EngineConfig &defaults) {
  simnet::Topology topology;
  Guard("topology", [&] {
    for (const auto &nj : j.at("nodes")) topology.AddNode(NodeFromJson(nj, defaults));
    for (const auto &ej : j.at("edges")) {
      simnet::LinkMetrics link;
      link.hops = ej.value("hops", 1u);
      link.rtt = ej.value("rtt_ms", 0.0) / 1000.0;
      link.loss = ej.value("loss", 0.0);
      link.pdv = ej.value("pdv_ms", 0.0) / 1000.0;
      topology.AddEdge(ej.at("a").get<std::string>(), ej.at("b").get<std::string>(), link);
    }
    return 0;
  });
  return topology;
}

}  // namespace selfassess
