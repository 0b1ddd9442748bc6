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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "selfassess/core.h"
#include "selfassess/criteria.h"
#include "selfassess/errors.h"
#include "selfassess/experiments.h"
#include "selfassess/json_io.h"
#include "selfassess/simnet.h"
#include "selfassess/tsn.h"

namespace py = pybind11;
using namespace selfassess;

namespace {

// JSON documents cross the boundary as strings; the Python side wraps them
// with json.loads/json.dumps.
std::string Assess(const std::string &node_json, const std::string &request_json,
                   const std::string &proximity_json, uint64_t seed) {
  NodeState node = NodeFromJson(Json::parse(node_json));
  AdmissionRequest request = RequestFromJson(Json::parse(request_json));
  ProximitySample proximity =
      proximity_json.empty() ? ProximitySample{} : ProximityFromJson(Json::parse(proximity_json));
  SaltSource salt(DeriveSeed(seed, node.node_id));
  return ToJson(SelfAssess(request, node, ResourceRegistry::WithBuiltins(), proximity, salt))
      .dump();
}

std::string Simulate(const std::string &topology_json, const std::string &request_json,
                     uint64_t seed) {
  simnet::Simulator sim(TopologyFromJson(Json::parse(topology_json)),
                        ResourceRegistry::WithBuiltins(), seed);
  return sim.Run(RequestFromJson(Json::parse(request_json))).ToNdjson();
}

py::dict TasExample(const std::string &fixture_json) {
  auto report = experiments::RunTasExample(InterfaceFromJson(Json::parse(fixture_json)));
  py::dict out;
  out["t_tx_ms"] = tsn::ToMillis(report.t_tx);
  out["t_needed_ms"] = tsn::ToMillis(report.t_needed);
  out["t_free_ms"] = py::make_tuple(tsn::ToMillis(report.t_free_x), tsn::ToMillis(report.t_free_x1));
  out["grades"] = py::make_tuple(report.grade_x, report.grade_x1);
  out["ok"] = report.ok();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Node self-assessment of admission requests";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<UnknownResourceType>(m, "UnknownResourceType", PyExc_KeyError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("combine", &Combine, py::arg("bare_metal"), py::arg("current"), py::arg("priority_grade"),
        py::arg("proximity"), py::arg("history"));
  m.def(
      "assess_current",
      [](const std::vector<double> &rhos, double tau) { return AssessCurrent(rhos, tau); },
      py::arg("rhos"), py::arg("tau"));
  m.def("grade_priority", &GradePriority, py::arg("priority"), py::arg("p_max") = 7);
  m.def(
      "assess_proximity",
      [](uint32_t hops, double rtt, double loss, double pdv, double hop_max, double rtt_max,
         double pdv_max) {
        return AssessProximity({hops, rtt, loss, pdv, {}}, {hop_max, rtt_max, pdv_max});
      },
      py::arg("hops"), py::arg("rtt"), py::arg("loss"), py::arg("pdv"), py::arg("hop_max") = 32.0,
      py::arg("rtt_max") = 1.0, py::arg("pdv_max") = 0.1);
  m.def(
      "assess_history",
      [](std::vector<double> rh, double salt, double salt_weight, std::vector<double> delta) {
        if (rh.size() != 4 || delta.size() != 4) {
          throw ContractViolation("rh and delta need four entries each");
        }
        EngineConfig config;
        config.salt_weight = salt_weight;
        std::copy(delta.begin(), delta.end(), config.delta.begin());
        return AssessHistory({rh[0], rh[1], rh[2], rh[3]}, salt, config);
      },
      py::arg("rh"), py::arg("salt"), py::arg("salt_weight") = 1e-10,
      py::arg("delta") = std::vector<double>{0.25, 0.25, 0.25, 0.25});

  m.def(
      "transmission_time_ms",
      [](double data_size_bits, double bandwidth_bps) {
        return tsn::ToMillis(tsn::TransmissionTime(data_size_bits, bandwidth_bps));
      },
      py::arg("data_size_bits"), py::arg("bandwidth_bps"));
  m.def(
      "needed_time_ms",
      [](double t_tx_ms, double guard_fraction) {
        return tsn::ToMillis(tsn::NeededTime(tsn::FromMillis(t_tx_ms), guard_fraction));
      },
      py::arg("t_tx_ms"), py::arg("guard_fraction") = tsn::kDefaultGuardFraction);
  m.def(
      "effort_grade",
      [](double t_needed_ms, double t_free_ms) {
        return tsn::EffortGrade(tsn::FromMillis(t_needed_ms), tsn::FromMillis(t_free_ms));
      },
      py::arg("t_needed_ms"), py::arg("t_free_ms"));

  m.def("assess_json", &Assess, py::arg("node"), py::arg("request"), py::arg("proximity") = "",
        py::arg("seed") = 0);
  m.def("simulate_json", &Simulate, py::arg("topology"), py::arg("request"), py::arg("seed") = 0);
  m.def("tas_example_json", &TasExample, py::arg("fixture"));
}
