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

#include "selfassess/core.h"

#include <cmath>
#include <sstream>

#include "selfassess/errors.h"

namespace selfassess {

namespace {

void RequireUnit(double value, const char *criterion) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << criterion << " grade out of [0,1]: " << value;
    throw ContractViolation(msg.str());
  }
}

}  // namespace

void EngineConfig::Validate() const {
  std::ostringstream msg;
  if (!(tau > kTauMin && tau < kTauMax)) {
    msg << "tau must lie strictly between 0.5 and 1.0, got " << tau;
    throw ContractViolation(msg.str());
  }
  if (p_max < 0) {
    msg << "p_max must be nonnegative, got " << p_max;
    throw ContractViolation(msg.str());
  }
  double sum = 0.0;
  for (size_t i = 0; i < delta.size(); ++i) {
    if (!(delta[i] >= 0.0)) {
      msg << "delta[" << i << "] must be nonnegative, got " << delta[i];
      throw ContractViolation(msg.str());
    }
    sum += delta[i];
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    msg.precision(17);
    msg << "delta weights must sum to 1, got " << sum;
    throw ContractViolation(msg.str());
  }
  if (!(salt_weight >= 0.0 && salt_weight < kSaltWeightLimit)) {
    msg << "salt_weight must lie in [0, 0.01), got " << salt_weight;
    throw ContractViolation(msg.str());
  }
  const auto &m = proximity_maxima;
  if (!(m.hop_max > 0.0 && m.rtt_max > 0.0 && m.pdv_max > 0.0)) {
    throw ContractViolation("proximity_maxima must all be positive");
  }
  if (history_window == 0) {
    throw ContractViolation("history_window must be positive");
  }
}

void ValidateRequest(const AdmissionRequest &request, int p_max) {
  if (request.requirements.empty()) {
    throw ContractViolation("admission request has no requirements");
  }
  if (request.priority < 0 || request.priority > p_max) {
    throw ContractViolation("priority " + std::to_string(request.priority) +
                            " outside [0, " + std::to_string(p_max) + "]");
  }
  for (const auto &req : request.requirements) {
    if (req.kind.empty()) {
      throw ContractViolation("requirement with empty kind");
    }
    if (req.amount.IsNegative()) {
      throw ContractViolation("requirement '" + req.kind +
                              "' has negative amount " + req.amount.ToString());
    }
  }
}

double Combine(int bare_metal, double current, double priority_grade, double proximity,
               double history) {
  if (bare_metal != 0 && bare_metal != 1) {
    throw ContractViolation("bare_metal grade must be 0 or 1, got " + std::to_string(bare_metal));
  }
  RequireUnit(current, "current_resources");
  if (!(priority_grade > 0.0 && priority_grade <= 1.0)) {
    std::ostringstream msg;
    msg << "priority grade out of (0,1]: " << priority_grade;
    throw ContractViolation(msg.str());
  }
  RequireUnit(proximity, "proximity");
  RequireUnit(history, "history");
  return static_cast<double>(bare_metal) * current * priority_grade * (proximity + history) / 2.0;
}

}  // namespace selfassess
