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

// selfassess: one-shot assessments, negotiation simulation and the
// validation experiments.
//
//   selfassess assess --node node.json --request request.json [--proximity p.json]
//   selfassess simulate --topology topo.json --request request.json
//   selfassess experiment <single-req|multi-req|salt-sweep|tas-example> [--spec s.json]

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "selfassess/criteria.h"
#include "selfassess/errors.h"
#include "selfassess/experiments.h"
#include "selfassess/json_io.h"
#include "selfassess/simnet.h"

namespace {

using namespace selfassess;

constexpr int kExitCheckFailed = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out_path;
};

EngineConfig LoadConfig(const CommonOptions &opts) {
  EngineConfig config;
  if (!opts.config_path.empty()) config = ConfigFromJson(LoadJsonFile(opts.config_path));
  if (opts.seed) config.rng_seed = *opts.seed;
  return config;
}

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("cannot write " + path);
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void AddCommon(CLI::App *cmd, CommonOptions &opts) {
  cmd->add_option("--config", opts.config_path, "Engine config JSON");
  cmd->add_option("--seed", opts.seed, "Master RNG seed (overrides the config)");
  cmd->add_option("--out", opts.out_path, "Output file (default: stdout)");
}

int RunAssess(const CommonOptions &opts, const std::string &node_path,
              const std::string &request_path, const std::string &proximity_path) {
  EngineConfig defaults = LoadConfig(opts);
  NodeState node = NodeFromJson(LoadJsonFile(node_path), defaults);
  AdmissionRequest request = RequestFromJson(LoadJsonFile(request_path));
  ProximitySample proximity;
  if (!proximity_path.empty()) proximity = ProximityFromJson(LoadJsonFile(proximity_path));
  auto registry = ResourceRegistry::WithBuiltins();
  SaltSource salt(DeriveSeed(node.config.rng_seed, node.node_id));
  SuitabilityBreakdown b = SelfAssess(request, node, registry, proximity, salt);
  Output out(opts.out_path);
  out.stream() << ToJson(b).dump(2) << '\n';
  return 0;
}

int RunSimulate(const CommonOptions &opts, const std::string &topology_path,
                const std::string &request_path) {
  EngineConfig defaults = LoadConfig(opts);
  simnet::Topology topology = TopologyFromJson(LoadJsonFile(topology_path), defaults);
  AdmissionRequest request = RequestFromJson(LoadJsonFile(request_path));
  simnet::Simulator sim(std::move(topology), ResourceRegistry::WithBuiltins(),
                        defaults.rng_seed);
  Output out(opts.out_path);
  out.stream() << sim.Run(request).ToNdjson();
  return 0;
}

int RunExperiment(const CommonOptions &opts, const std::string &name,
                  const std::string &spec_path, std::optional<int64_t> runs,
                  const std::string &fixture_path) {
  if (name == "tas-example") {
    if (fixture_path.empty()) throw ConfigError("tas-example needs --fixture");
    auto report = experiments::RunTasExample(InterfaceFromJson(LoadJsonFile(fixture_path)));
    Output out(opts.out_path);
    out.stream() << report.ToText();
    return report.ok() ? 0 : kExitCheckFailed;
  }

  experiments::ExperimentSpec spec =
      spec_path.empty() ? experiments::DefaultSpec(name)
                        : experiments::SpecFromJson(LoadJsonFile(spec_path), name);
  if (spec.name != name) {
    throw ConfigError("spec file describes '" + spec.name + "', not '" + name + "'");
  }
  if (!opts.config_path.empty()) spec.engine = LoadConfig(opts);
  if (opts.seed) spec.seed = *opts.seed;
  if (runs) spec.runs = *runs;
  spec.Validate();

  Output out(opts.out_path);
  if (name == "single-req") {
    experiments::WriteSingleReqCsv(spec, out.stream());
  } else if (name == "multi-req") {
    experiments::WriteMultiReqCsv(spec, out.stream());
  } else {
    experiments::WriteSaltSweepCsv(experiments::RunSaltSweep(spec), out.stream());
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Node self-assessment of admission requests"};
  app.require_subcommand(1);

  CommonOptions assess_opts;
  std::string node_path, request_path, proximity_path;
  auto *assess = app.add_subcommand("assess", "Self-assess one request on one node");
  assess->add_option("--node", node_path, "Node capacity JSON")->required()->check(CLI::ExistingFile);
  assess->add_option("--request", request_path, "Admission request JSON")
      ->required()
      ->check(CLI::ExistingFile);
  assess->add_option("--proximity", proximity_path, "Proximity sample JSON")
      ->check(CLI::ExistingFile);
  AddCommon(assess, assess_opts);

  CommonOptions sim_opts;
  std::string topology_path, sim_request_path;
  auto *simulate = app.add_subcommand("simulate", "Run a negotiation over a topology");
  simulate->add_option("--topology", topology_path, "Topology JSON")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--request", sim_request_path, "Admission request JSON")
      ->required()
      ->check(CLI::ExistingFile);
  AddCommon(simulate, sim_opts);

  CommonOptions exp_opts;
  std::string exp_name, spec_path, fixture_path;
  std::optional<int64_t> runs;
  auto *experiment = app.add_subcommand("experiment", "Run a validation experiment, emit CSV");
  experiment->add_option("name", exp_name, "Experiment name")
      ->required()
      ->check(CLI::IsMember({"single-req", "multi-req", "salt-sweep", "tas-example"}));
  experiment->add_option("--spec", spec_path, "Experiment spec JSON")->check(CLI::ExistingFile);
  experiment->add_option("--runs", runs, "Override the number of runs per cell");
  experiment->add_option("--fixture", fixture_path, "TAS schedule fixture (tas-example)")
      ->check(CLI::ExistingFile);
  AddCommon(experiment, exp_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*assess) return RunAssess(assess_opts, node_path, request_path, proximity_path);
    if (*simulate) return RunSimulate(sim_opts, topology_path, sim_request_path);
    return RunExperiment(exp_opts, exp_name, spec_path, runs, fixture_path);
  } catch (const std::exception &e) {
    std::cerr << "selfassess: " << e.what() << '\n';
    return 1;
  }
}
