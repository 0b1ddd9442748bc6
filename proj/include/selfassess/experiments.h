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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "selfassess/criteria.h"
#include "selfassess/resources.h"
#include "selfassess/tsn.h"

namespace selfassess::experiments {

/// Inclusive integer range.
struct Range {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo + 1; }
};

struct ExperimentSpec {
  std::string name;  // single-req | multi-req | salt-sweep | tas-example
  int64_t runs = 1;
  uint64_t seed = 0;
  Range cores{0, 9};
  Range memory_gb{0, 33};
  Range priorities{0, 7};
  std::vector<double> taus{0.51, 0.66, 0.99};
  std::vector<double> thetas;
  /// Proximity inputs drawn on a grid of this many levels; 0 = continuous.
  int quantize_levels = 0;
  /// Engine settings of the fixture node (tau is swept in multi-req).
  EngineConfig engine;

  void Validate() const;
};

/// Campaign defaults: 100 000 runs for single-req, 1 000 per cell for
/// multi-req, cores 0..7 and thetas 1..1e-20 plus 0 for salt-sweep.
ExperimentSpec DefaultSpec(const std::string &name);
/// Overrides DefaultSpec(name) with whatever fields `j` carries.
ExperimentSpec SpecFromJson(const nlohmann::ordered_json &j, const std::string &name);

/// Node fixtures: 8 cores; 8 cores with 32 GB (decimal gigabytes).
NodeState SingleReqNode();
NodeState MultiReqNode();

/// Uniform proximity sample over the normalizers' domains, optionally snapped
/// to `levels` evenly spaced values per field.
ProximitySample RandomProximity(SaltSource &rng, const ProximityMaxima &maxima, int levels);

struct SingleReqRow {
  int requested_cores = 0;
  int priority = 0;
  char phase = 'a';  // a: bare metal, b: +current, c: +priority, d: +proximity
  double suitability = 0.0;
};

void RunSingleReq(const ExperimentSpec &spec, const std::function<void(const SingleReqRow &)> &emit);
std::vector<SingleReqRow> RunSingleReq(const ExperimentSpec &spec);

struct MultiReqRow {
  std::string order;  // "cpu-mem" or "mem-cpu"
  int cores = 0;
  int memory_gb = 0;
  std::optional<double> rho_cpu;  // absent when bare metal failed first
  std::optional<double> rho_mem;
  int priority = 0;
  double tau = 0.0;
  double current_resources = 0.0;
  double suitability = 0.0;
};

void RunMultiReq(const ExperimentSpec &spec, const std::function<void(const MultiReqRow &)> &emit);
std::vector<MultiReqRow> RunMultiReq(const ExperimentSpec &spec);

struct SaltSweepRow {
  double theta = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double duplicate_rate = 0.0;
  int64_t pairs = 0;
};

/// Statistics of |B_o - B_s| where B_s differs from B_o only by salt.
SaltSweepRow SaltDifferences(const ExperimentSpec &spec, double theta, uint64_t stream);
/// Fraction of `runs` independently salted assessments that repeat an
/// earlier value.
double DuplicateRate(const ExperimentSpec &spec, double theta, uint64_t stream);
std::vector<SaltSweepRow> RunSaltSweep(const ExperimentSpec &spec);

struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct TasExampleReport {
  tsn::Nanos t_tx{0};
  tsn::Nanos t_needed{0};
  tsn::Nanos t_free_x{0};
  tsn::Nanos t_free_x1{0};
  double grade_x = 0.0;
  double grade_x1 = 0.0;
  std::vector<Check> checks;
  bool ok() const;
  std::string ToText() const;
};

/// Places a 5 Mbit flow with 10% guard into the first two classes of the
/// interface schedule and checks the resulting times and grades against
/// the reference values of the 5 Mbit worked example.
TasExampleReport RunTasExample(const NetworkInterface &fixture);

// CSV writers: header row, '.' decimals, '\n' line endings, shortest
// round-trip formatting of doubles.
void WriteSingleReqCsv(const ExperimentSpec &spec, std::ostream &out);
void WriteMultiReqCsv(const ExperimentSpec &spec, std::ostream &out);
void WriteSaltSweepCsv(const std::vector<SaltSweepRow> &rows, std::ostream &out);

std::string FormatDouble(double value);

}  // namespace selfassess::experiments
