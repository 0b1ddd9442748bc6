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

#include "selfassess/experiments.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "selfassess/criteria.h"
#include "selfassess/errors.h"
#include "selfassess/json_io.h"

namespace selfassess::experiments {

namespace {

constexpr int64_t kBytesPerGb = 1000000000;

std::vector<double> DefaultThetas() {
  std::vector<double> thetas;
  for (int k = 0; k <= 20; ++k) thetas.push_back(std::stod("1e-" + std::to_string(k)));
  thetas.push_back(0.0);
  return thetas;
}

int UniformInt(SaltSource &rng, Range range) {
  int offset = static_cast<int>(rng.Draw() * range.size());
  return range.lo + std::min(offset, range.size() - 1);
}

AdmissionRequest CpuRequest(int cores, int priority) {
  AdmissionRequest r;
  r.requirements.push_back({kinds::kCpuCores, Rational(cores), {}});
  r.priority = priority;
  r.request_id = "single";
  return r;
}

}  // namespace

void ExperimentSpec::Validate() const {
  if (runs <= 0) throw ContractViolation("experiment runs must be positive");
  for (const Range *r : {&cores, &memory_gb, &priorities}) {
    if (r->hi < r->lo) throw ContractViolation("experiment range is empty");
  }
  if (cores.lo < 0 || memory_gb.lo < 0 || priorities.lo < 0) {
    throw ContractViolation("experiment ranges must be nonnegative");
  }
  if (name == "multi-req" && taus.empty()) throw ContractViolation("tau list is empty");
  if (name == "salt-sweep" && thetas.empty()) throw ContractViolation("theta list is empty");
  if (quantize_levels < 0) throw ContractViolation("quantize_levels must be nonnegative");
}

ExperimentSpec DefaultSpec(const std::string &name) {
  ExperimentSpec spec;
  spec.name = name;
  if (name == "single-req") {
    spec.runs = 100000;
  } else if (name == "multi-req") {
    spec.runs = 1000;
  } else if (name == "salt-sweep") {
    spec.runs = 100000;
    spec.cores = {0, 7};
    spec.thetas = DefaultThetas();
    spec.quantize_levels = 16;
  } else if (name == "tas-example") {
    spec.runs = 1;
  } else {
    throw ContractViolation("unknown experiment: " + name);
  }
  return spec;
}

ExperimentSpec SpecFromJson(const nlohmann::ordered_json &j, const std::string &name) {
  ExperimentSpec spec = DefaultSpec(j.value("name", name));
  try {
    auto range = [&j](const char *key, Range fallback) {
      if (!j.contains(key)) return fallback;
      const auto &v = j.at(key);
      return Range{v.at(0).get<int>(), v.at(1).get<int>()};
    };
    spec.runs = j.value("runs", spec.runs);
    spec.seed = j.value("seed", spec.seed);
    spec.cores = range("cores", spec.cores);
    spec.memory_gb = range("memory_gb", spec.memory_gb);
    spec.priorities = range("priorities", spec.priorities);
    if (j.contains("taus")) spec.taus = j.at("taus").get<std::vector<double>>();
    if (j.contains("thetas")) spec.thetas = j.at("thetas").get<std::vector<double>>();
    spec.quantize_levels = j.value("quantize_levels", spec.quantize_levels);
    if (j.contains("engine")) spec.engine = ConfigFromJson(j.at("engine"), spec.engine);
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("experiment spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

NodeState SingleReqNode() {
  NodeState node;
  node.node_id = "fixture-8c";
  node.totals[kinds::kCpuCores] = Rational(8);
  node.in_use[kinds::kCpuCores] = Rational(0);
  return node;
}

NodeState MultiReqNode() {
  NodeState node = SingleReqNode();
  node.node_id = "fixture-8c-32g";
  node.totals[kinds::kMemBytes] = Rational(32 * kBytesPerGb);
  node.in_use[kinds::kMemBytes] = Rational(0);
  return node;
}

ProximitySample RandomProximity(SaltSource &rng, const ProximityMaxima &maxima, int levels) {
  ProximitySample s;
  if (levels > 0) {
    auto level = [&rng, levels]() {
      if (levels == 1) return 0.0;
      int k = std::min(static_cast<int>(rng.Draw() * levels), levels - 1);
      return static_cast<double>(k) / static_cast<double>(levels - 1);
    };
    s.hops = static_cast<uint32_t>(std::llround(level() * maxima.hop_max));
    s.rtt = level() * maxima.rtt_max;
    s.loss = level();
    s.pdv = level() * maxima.pdv_max;
    return s;
  }
  double hop_span = std::floor(maxima.hop_max) + 1.0;
  s.hops = static_cast<uint32_t>(std::min(std::floor(rng.Draw() * hop_span), hop_span - 1.0));
  s.rtt = rng.Draw() * maxima.rtt_max;
  s.loss = rng.Draw();
  s.pdv = rng.Draw() * maxima.pdv_max;
  return s;
}

void RunSingleReq(const ExperimentSpec &spec,
                  const std::function<void(const SingleReqRow &)> &emit) {
  spec.Validate();
  const auto registry = ResourceRegistry::WithBuiltins();
  NodeState node = SingleReqNode();
  node.config = spec.engine;
  node.config.p_max = std::max(node.config.p_max, spec.priorities.hi);
  const ProximitySample perfect{};
  uint64_t cell = 0;
  for (char phase : {'a', 'b', 'c', 'd'}) {
    AssessmentOptions options;
    options.depth = phase == 'a'   ? CriteriaDepth::kBareMetal
                    : phase == 'b' ? CriteriaDepth::kCurrent
                    : phase == 'c' ? CriteriaDepth::kPriority
                                   : CriteriaDepth::kAll;
    // Phase d isolates proximity: the history term is held at its cold-start
    // value without salt.
    if (phase == 'd') options.history_override = 0.0;
    for (int cores = spec.cores.lo; cores <= spec.cores.hi; ++cores) {
      for (int p = spec.priorities.lo; p <= spec.priorities.hi; ++p, ++cell) {
        SaltSource rng(DeriveSeed(spec.seed, cell));
        const AdmissionRequest request = CpuRequest(cores, p);
        if (phase != 'd') {
          double b = SelfAssess(request, node, registry, perfect, rng, options).suitability;
          for (int64_t run = 0; run < spec.runs; ++run) emit({cores, p, phase, b});
          continue;
        }
        for (int64_t run = 0; run < spec.runs; ++run) {
          ProximitySample sample = RandomProximity(rng, node.config.proximity_maxima,
                                                   spec.quantize_levels);
          double b = SelfAssess(request, node, registry, sample, rng, options).suitability;
          emit({cores, p, phase, b});
        }
      }
    }
  }
}

std::vector<SingleReqRow> RunSingleReq(const ExperimentSpec &spec) {
  std::vector<SingleReqRow> rows;
  RunSingleReq(spec, [&rows](const SingleReqRow &r) { rows.push_back(r); });
  return rows;
}

void RunMultiReq(const ExperimentSpec &spec,
                 const std::function<void(const MultiReqRow &)> &emit) {
  spec.Validate();
  const auto registry = ResourceRegistry::WithBuiltins();
  NodeState node = MultiReqNode();
  node.config = spec.engine;
  node.config.p_max = std::max(node.config.p_max, spec.priorities.hi);
  uint64_t cell = 0;
  for (bool cpu_first : {true, false}) {
    const std::string order = cpu_first ? "cpu-mem" : "mem-cpu";
    for (double tau : spec.taus) {
      node.config.tau = tau;
      for (int cores = spec.cores.lo; cores <= spec.cores.hi; ++cores) {
        for (int gb = spec.memory_gb.lo; gb <= spec.memory_gb.hi; ++gb) {
          Requirement cpu{kinds::kCpuCores, Rational(cores), {}};
          Requirement mem{kinds::kMemBytes, Rational(gb * kBytesPerGb), {}};
          for (int p = spec.priorities.lo; p <= spec.priorities.hi; ++p, ++cell) {
            AdmissionRequest request;
            request.requirements = cpu_first ? std::vector{cpu, mem} : std::vector{mem, cpu};
            request.priority = p;
            request.request_id = "multi";
            SaltSource rng(DeriveSeed(spec.seed, cell));
            for (int64_t run = 0; run < spec.runs; ++run) {
              ProximitySample sample = RandomProximity(rng, node.config.proximity_maxima,
                                                       spec.quantize_levels);
              SuitabilityBreakdown b = SelfAssess(request, node, registry, sample, rng);
              MultiReqRow row{order, cores, gb, std::nullopt, std::nullopt, p, tau,
                              b.current_resources, b.suitability};
              for (const auto &g : b.per_requirement) {
                (g.kind == kinds::kCpuCores ? row.rho_cpu : row.rho_mem) = g.rho;
              }
              emit(row);
            }
          }
        }
      }
    }
  }
}

std::vector<MultiReqRow> RunMultiReq(const ExperimentSpec &spec) {
  std::vector<MultiReqRow> rows;
  RunMultiReq(spec, [&rows](const MultiReqRow &r) { rows.push_back(r); });
  return rows;
}

SaltSweepRow SaltDifferences(const ExperimentSpec &spec, double theta, uint64_t stream) {
  spec.Validate();
  const auto registry = ResourceRegistry::WithBuiltins();
  NodeState plain = SingleReqNode();
  plain.config = spec.engine;
  plain.config.p_max = std::max(plain.config.p_max, spec.priorities.hi);
  plain.config.salt_weight = 0.0;
  NodeState salted = plain;
  salted.config.salt_weight = theta;

  SaltSource rng(DeriveSeed(spec.seed, stream));
  SaltSweepRow row;
  row.theta = theta;
  row.pairs = spec.runs;
  row.min = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int64_t run = 0; run < spec.runs; ++run) {
    const AdmissionRequest request =
        CpuRequest(UniformInt(rng, spec.cores), UniformInt(rng, spec.priorities));
    ProximitySample sample = RandomProximity(rng, plain.config.proximity_maxima, 0);
    SaltSource original = rng;
    SaltSource with_salt = rng;
    rng.Draw();
    double b_o = SelfAssess(request, plain, registry, sample, original).suitability;
    double b_s = SelfAssess(request, salted, registry, sample, with_salt).suitability;
    double diff = std::fabs(b_o - b_s);
    row.min = std::min(row.min, diff);
    row.max = std::max(row.max, diff);
    sum += diff;
    sum_sq += diff * diff;
  }
  const double n = static_cast<double>(spec.runs);
  row.mean = sum / n;
  row.stddev = std::sqrt(std::max(0.0, sum_sq / n - row.mean * row.mean));
  return row;
}

double DuplicateRate(const ExperimentSpec &spec, double theta, uint64_t stream) {
  spec.Validate();
  const auto registry = ResourceRegistry::WithBuiltins();
  NodeState node = SingleReqNode();
  node.config = spec.engine;
  node.config.p_max = std::max(node.config.p_max, spec.priorities.hi);
  node.config.salt_weight = theta;
  SaltSource rng(DeriveSeed(spec.seed, stream));
  std::vector<double> values;
  values.reserve(static_cast<size_t>(spec.runs));
  for (int64_t run = 0; run < spec.runs; ++run) {
    const AdmissionRequest request =
        CpuRequest(UniformInt(rng, spec.cores), UniformInt(rng, spec.priorities));
    ProximitySample sample =
        RandomProximity(rng, node.config.proximity_maxima, spec.quantize_levels);
    values.push_back(SelfAssess(request, node, registry, sample, rng).suitability);
  }
  std::sort(values.begin(), values.end());
  auto distinct = std::unique(values.begin(), values.end()) - values.begin();
  return static_cast<double>(spec.runs - distinct) / static_cast<double>(spec.runs);
}

std::vector<SaltSweepRow> RunSaltSweep(const ExperimentSpec &spec) {
  std::vector<SaltSweepRow> rows;
  for (size_t i = 0; i < spec.thetas.size(); ++i) {
    SaltSweepRow row = SaltDifferences(spec, spec.thetas[i], 2 * i);
    row.duplicate_rate = DuplicateRate(spec, spec.thetas[i], 2 * i + 1);
    rows.push_back(row);
  }
  return rows;
}

bool TasExampleReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

std::string TasExampleReport::ToText() const {
  std::ostringstream out;
  out.precision(12);
  for (const auto &c : checks) {
    out << (c.pass ? "ok    " : "FAIL  ") << c.name << " = " << c.value << " (expected "
        << c.expected;
    if (c.tolerance > 0.0) out << " +/- " << c.tolerance;
    out << ")\n";
  }
  return out.str();
}

TasExampleReport RunTasExample(const NetworkInterface &fixture) {
  if (!fixture.tas || fixture.tas->classes.size() < 2) {
    throw ConfigError("TAS example fixture needs a schedule with two traffic classes");
  }
  const auto &schedule = *fixture.tas;
  tsn::ServiceFlow flow;
  flow.data_size_bits = 5e6;
  flow.guard_fraction = 0.1;

  TasExampleReport report;
  report.t_tx = tsn::TransmissionTime(flow.data_size_bits, fixture.bandwidth_bps);
  report.t_needed = tsn::NeededTime(report.t_tx, flow.guard_fraction);
  report.t_free_x = tsn::FreeTime(schedule.classes[0]);
  report.t_free_x1 = tsn::FreeTime(schedule.classes[1]);
  report.grade_x = tsn::EffortGrade(report.t_needed, report.t_free_x);
  report.grade_x1 = tsn::EffortGrade(report.t_needed, report.t_free_x1);

  auto check = [&report](std::string name, double value, double expected, double tol) {
    report.checks.push_back({std::move(name), value, expected, tol,
                             std::fabs(value - expected) <= tol});
  };
  check("t_tx_ms", tsn::ToMillis(report.t_tx), 5.0, 0.0);
  check("t_needed_ms", tsn::ToMillis(report.t_needed), 5.5, 0.0);
  check("t_free_x_ms", tsn::ToMillis(report.t_free_x), 13.0, 0.0);
  check("t_free_x1_ms", tsn::ToMillis(report.t_free_x1), 4.4, 0.0);
  check("grade_x", report.grade_x, 0.711, 1e-3);
  check("grade_x1", report.grade_x1, 0.125, 1e-12);
  return report;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

void WriteSingleReqCsv(const ExperimentSpec &spec, std::ostream &out) {
  out << "requested_cores,priority,criteria_phase,suitability\n";
  RunSingleReq(spec, [&out](const SingleReqRow &r) {
    out << r.requested_cores << ',' << r.priority << ',' << r.phase << ','
        << FormatDouble(r.suitability) << '\n';
  });
}

void WriteMultiReqCsv(const ExperimentSpec &spec, std::ostream &out) {
  out << "order,cores,memory_gb,rho_cpu,rho_mem,priority,tau,current_resources,suitability\n";
  RunMultiReq(spec, [&out](const MultiReqRow &r) {
    out << r.order << ',' << r.cores << ',' << r.memory_gb << ','
        << (r.rho_cpu ? FormatDouble(*r.rho_cpu) : "") << ','
        << (r.rho_mem ? FormatDouble(*r.rho_mem) : "") << ',' << r.priority << ','
        << FormatDouble(r.tau) << ',' << FormatDouble(r.current_resources) << ','
        << FormatDouble(r.suitability) << '\n';
  });
}

void WriteSaltSweepCsv(const std::vector<SaltSweepRow> &rows, std::ostream &out) {
  out << "theta,min,max,mean,stddev,duplicate_rate\n";
  for (const auto &r : rows) {
    out << FormatDouble(r.theta) << ',' << FormatDouble(r.min) << ',' << FormatDouble(r.max)
        << ',' << FormatDouble(r.mean) << ',' << FormatDouble(r.stddev) << ','
        << FormatDouble(r.duplicate_rate) << '\n';
  }
}

}  // namespace selfassess::experiments
