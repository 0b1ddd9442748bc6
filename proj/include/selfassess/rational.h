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

#include <compare>
#include <cstdint>
#include <string>

namespace selfassess {

/// Exact nonnegative-or-signed rational amount (cores, bytes, bits/s).
/// Always stored reduced with a positive denominator, so the defaulted
/// equality is structural equality.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by intent
  Rational(int64_t num, int64_t den);

  /// Parses "7", "-3", "5/2" or a decimal such as "1.25".
  static Rational Parse(const std::string &text);
  /// Nearest rational with denominator 10^9 (inputs arriving as binary floats).
  static Rational FromDouble(double value);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string ToString() const;

  bool IsNegative() const { return num_ < 0; }
  bool IsZero() const { return num_ == 0; }

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);
  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

/// a / b evaluated from the exact cross products, rounded once to double.
double Ratio(const Rational &a, const Rational &b);

}  // namespace selfassess
