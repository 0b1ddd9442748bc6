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

#include "selfassess/history.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "selfassess/errors.h"

namespace selfassess {

using nlohmann::json;

HistoryLog::HistoryLog(size_t window) : window_(window) {
  if (window_ == 0) {
    throw ContractViolation("history window must be positive");
  }
}

void HistoryLog::RecordAdmission(const AdmissionRecord &record) {
  if (!records_.empty() && record.timestamp <= records_.back().timestamp) {
    throw ContractViolation("admission record timestamp " + std::to_string(record.timestamp) +
                            " not after " + std::to_string(records_.back().timestamp));
  }
  if (record.requirement_count < 1) {
    throw ContractViolation("admission record needs at least one requirement");
  }
  if (!(record.used_fraction >= 0.0 && record.used_fraction <= 1.0)) {
    throw ContractViolation("used_fraction outside [0,1]");
  }
  records_.push_back(record);
  while (records_.size() > window_) records_.pop_front();
}

void HistoryLog::RecordSample(const CapacitySample &sample) {
  if (!samples_.empty() && sample.timestamp <= samples_.back().timestamp) {
    throw ContractViolation("capacity sample timestamp " + std::to_string(sample.timestamp) +
                            " not after " + std::to_string(samples_.back().timestamp));
  }
  for (const auto &[kind, amount] : sample.available) {
    if (amount.IsNegative()) {
      throw ContractViolation("capacity sample has negative '" + kind + "'");
    }
  }
  samples_.push_back(sample);
  while (samples_.size() > window_) samples_.pop_front();
}

void HistoryLog::Save(std::ostream &out) const {
  for (const auto &r : records_) {
    json line = {{"type", "admission"},
                 {"request_id", r.request_id},
                 {"requirement_count", r.requirement_count},
                 {"granted", r.granted},
                 {"strict_reservation", r.strict_reservation},
                 {"used_fraction", r.used_fraction},
                 {"timestamp", r.timestamp}};
    out << line.dump() << '\n';
  }
  for (const auto &s : samples_) {
    json available = json::object();
    for (const auto &[kind, amount] : s.available) available[kind] = amount.ToString();
    json line = {{"type", "capacity"}, {"timestamp", s.timestamp}, {"available", available}};
    out << line.dump() << '\n';
  }
}

HistoryLog HistoryLog::Load(std::istream &in, size_t window) {
  HistoryLog log(window);
  std::string text;
  size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    try {
      json line = json::parse(text);
      const auto type = line.at("type").get<std::string>();
      if (type == "admission") {
        AdmissionRecord r;
        r.request_id = line.at("request_id").get<std::string>();
        r.requirement_count = line.at("requirement_count").get<int>();
        r.granted = line.at("granted").get<bool>();
        r.strict_reservation = line.at("strict_reservation").get<bool>();
        r.used_fraction = line.at("used_fraction").get<double>();
        r.timestamp = line.at("timestamp").get<Tick>();
        log.RecordAdmission(r);
      } else if (type == "capacity") {
        CapacitySample s;
        s.timestamp = line.at("timestamp").get<Tick>();
        for (const auto &[kind, amount] : line.at("available").items()) {
          s.available[kind] = amount.is_string() ? Rational::Parse(amount.get<std::string>())
                                                 : Rational::FromDouble(amount.get<double>());
        }
        log.RecordSample(s);
      } else {
        throw ConfigError("unknown entry type '" + type + "'");
      }
    } catch (const json::exception &e) {
      throw ConfigError("history log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

namespace {

double SimilarityRatio(double a, double b) {
  double hi = std::max(a, b);
  return hi > 0.0 ? std::min(a, b) / hi : 1.0;
}

double StabilityGrade(const std::deque<CapacitySample> &samples,
                      const std::map<std::string, Rational> &totals) {
  std::vector<double> levels;
  levels.reserve(samples.size());
  for (const auto &s : samples) {
    double sum = 0.0;
    int kinds = 0;
    for (const auto &[kind, total] : totals) {
      if (total <= Rational(0)) continue;
      auto it = s.available.find(kind);
      double fraction = it == s.available.end() ? 0.0 : std::clamp(Ratio(it->second, total), 0.0, 1.0);
      sum += fraction;
      ++kinds;
    }
    if (kinds > 0) levels.push_back(sum / kinds);
  }
  if (levels.empty()) return 0.0;
  double mean = 0.0;
  for (double v : levels) mean += v;
  mean /= static_cast<double>(levels.size());
  if (mean <= 0.0) return 0.0;
  double var = 0.0;
  for (double v : levels) var += (v - mean) * (v - mean);
  var /= static_cast<double>(levels.size());
  return std::clamp(1.0 - std::sqrt(var) / mean, 0.0, 1.0);
}

}  // namespace

HistoryMetrics ComputeMetrics(const HistoryLog &log, const AdmissionRequest &request,
                              const std::map<std::string, Rational> &totals) {
  HistoryMetrics m;
  const auto &records = log.records();
  if (!records.empty()) {
    double mean_count = 0.0;
    for (const auto &r : records) mean_count += r.requirement_count;
    mean_count /= static_cast<double>(records.size());
    m.rh1 = SimilarityRatio(static_cast<double>(request.requirements.size()), mean_count);

    int granted = 0;
    int strict = 0;
    double unused = 0.0;
    for (const auto &r : records) {
      if (!r.granted) continue;
      ++granted;
      unused += 1.0 - r.used_fraction;
      if (r.strict_reservation) ++strict;
    }
    if (granted > 0) {
      m.rh2 = std::clamp(unused / granted, 0.0, 1.0);
      m.rh4 = static_cast<double>(strict) / granted;
    }
  }
  m.rh3 = StabilityGrade(log.samples(), totals);
  return m;
}

}  // namespace selfassess
