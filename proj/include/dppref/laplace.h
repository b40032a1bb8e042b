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

#ifndef DPPREF_LAPLACE_H_
#define DPPREF_LAPLACE_H_

#include "dppref/rng.h"

namespace dppref {

// Zero-mean Laplace draw of the given scale by inverse CDF:
// u ~ U(-1/2, 1/2), x = -scale * sign(u) * ln(1 - 2|u|).
// A zero scale returns 0 without consuming randomness.
double SampleLaplace(double scale, RngStream& rng);

// CDF of Lap(scale) at x.
double LaplaceCdf(double x, double scale);

}  // namespace dppref

#endif  // DPPREF_LAPLACE_H_
