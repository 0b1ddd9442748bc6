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

#include <stdexcept>
#include <string>

namespace selfassess {

/// An argument or object violates the documented preconditions of an
/// operation (out-of-range grade, bad priority, empty requirement list...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requirement names a resource kind nobody registered.
class UnknownResourceType : public std::runtime_error {
 public:
  explicit UnknownResourceType(const std::string &kind)
      : std::runtime_error("unknown resource type: " + kind), kind_(kind) {}
  const std::string &kind() const { return kind_; }

 private:
  std::string kind_;
};

/// A second descriptor was registered for an existing kind.
class RegistryConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named entity (traffic class, node, interface) does not exist.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LoopDetected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace selfassess
