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

#include "selfassess/rational.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "selfassess/errors.h"

namespace selfassess {

namespace {

using Wide = __int128;

Wide Gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational FromWide(Wide num, Wide den) {
  if (den == 0) {
    throw ContractViolation("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = Gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr Wide kMax = std::numeric_limits<int64_t>::max();
  constexpr Wide kMin = std::numeric_limits<int64_t>::min();
  if (num > kMax || num < kMin || den > kMax) {
    throw ContractViolation("rational amount overflows 64-bit range");
  }
  return Rational(static_cast<int64_t>(num), static_cast<int64_t>(den));
}

}  // namespace

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) {
    throw ContractViolation("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::Parse(const std::string &text) {
  auto bad = [&text]() { return ContractViolation("malformed amount: '" + text + "'"); };
  if (text.empty()) throw bad();
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      size_t used_num = 0, used_den = 0;
      int64_t num = std::stoll(text.substr(0, slash), &used_num);
      int64_t den = std::stoll(text.substr(slash + 1), &used_den);
      if (used_num != slash || used_den != text.size() - slash - 1) throw bad();
      return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      size_t used = 0;
      int64_t num = std::stoll(digits, &used);
      if (used != digits.size()) throw bad();
      int64_t den = 1;
      for (size_t i = dot + 1; i < text.size(); ++i) {
        if (den > std::numeric_limits<int64_t>::max() / 10) throw bad();
        den *= 10;
      }
      return Rational(num, den);
    }
    size_t used = 0;
    int64_t num = std::stoll(text, &used);
    if (used != text.size()) throw bad();
    return Rational(num);
  } catch (const std::logic_error &) {
    throw bad();
  }
}

Rational Rational::FromDouble(double value) {
  if (!std::isfinite(value) || std::fabs(value) > 9.0e9) {
    // Large magnitudes: keep the integer part exact and drop the fraction.
    if (!std::isfinite(value) || std::fabs(value) > 9.2e18) {
      throw ContractViolation("amount not representable: " + std::to_string(value));
    }
    return Rational(static_cast<int64_t>(std::llround(value)));
  }
  constexpr int64_t kDen = 1000000000;
  return Rational(std::llround(value * static_cast<double>(kDen)), kDen);
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational operator+(const Rational &a, const Rational &b) {
  return FromWide(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                  static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational &a, const Rational &b) {
  return FromWide(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                  static_cast<Wide>(a.den_) * b.den_);
}

double Ratio(const Rational &a, const Rational &b) {
  if (b.IsZero()) {
    throw ContractViolation("ratio with zero divisor");
  }
  // Reduce the cross products first so small exact ratios such as 4/8 stay exact.
  Wide num = static_cast<Wide>(a.num()) * b.den();
  Wide den = static_cast<Wide>(a.den()) * b.num();
  Wide g = Gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace selfassess
