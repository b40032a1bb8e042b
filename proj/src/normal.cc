// Copyright 2026 The dppref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dppref/normal.h"

#include <cmath>
#include <numbers>

namespace dppref {
namespace {

constexpr double kLowerTail = -6.0;
constexpr int kContinuedFractionTerms = 100;

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// Mills ratio Phi(-x) / phi(x) = 1/(x+ 1/(x+ 2/(x+ 3/(x+ ...)))), x >= 6.
double MillsRatio(double x) {
  double t = x;
  for (int k = kContinuedFractionTerms; k >= 1; --k) t = x + k / t;
  return 1.0 / t;
}

}  // namespace

double StdNormalCdf(double s) {
  return 0.5 * std::erfc(-s * std::numbers::sqrt2 / 2.0);
}

double StdNormalPdf(double s) { return kInvSqrt2Pi * std::exp(-0.5 * s * s); }

double LogStdNormalCdf(double z) {
  if (z < kLowerTail) {
    return -0.5 * z * z - kLogSqrt2Pi + std::log(MillsRatio(-z));
  }
  if (z > 0.0) {
    // ln(1 - Phi(-z)) keeps full precision as Phi(z) -> 1.
    return std::log1p(-StdNormalCdf(-z));
  }
  return std::log(StdNormalCdf(z));
}

double LogStdNormalCdfDerivative(double z) {
  if (z < kLowerTail) return 1.0 / MillsRatio(-z);
  return StdNormalPdf(z) / StdNormalCdf(z);
}

}  // namespace dppref
