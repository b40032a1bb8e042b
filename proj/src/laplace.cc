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

#include "dppref/laplace.h"

#include <cassert>
#include <cmath>

namespace dppref {

double SampleLaplace(double scale, RngStream& rng) {
  assert(scale >= 0.0);
  if (scale == 0.0) return 0.0;
  double u = rng.Uniform01() - 0.5;
  // u = -1/2 maps to an infinite draw; redraw that single point.
  while (u == -0.5) u = rng.Uniform01() - 0.5;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(u));
}

double LaplaceCdf(double x, double scale) {
  if (x < 0.0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

}  // namespace dppref
