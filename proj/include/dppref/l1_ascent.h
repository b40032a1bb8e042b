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

#ifndef DPPREF_L1_ASCENT_H_
#define DPPREF_L1_ASCENT_H_

#include <functional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppref/types.h"

namespace dppref {

// Projected gradient ascent settings.
struct SolverConfig {
  int max_iters = 5000;
  // First trial step of the Armijo search. Later iterations restart from
  // min(step_init, last_step / armijo_shrink).
  double step_init = 1.0;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  // Stop once the accepted step has infinity norm below this.
  double tol_step = 1e-8;

  absl::Status Validate() const;
};

// Euclidean projection onto {x : ||x||_1 <= bound}, O(d log d).
absl::StatusOr<Vector> ProjectL1Ball(std::span<const double> v, double bound);

// Unchecked projection into `out` (may alias nothing in `v`).
void ProjectL1BallInto(std::span<const double> v, double bound,
                       std::span<double> out);

// A differentiable function to maximize.
struct SmoothObjective {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct AscentResult {
  Vector point;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  // Objective at the start point followed by every accepted iterate.
  std::vector<double> objective_trace;
};

// Maximizes `objective` over the l1 ball of radius `bound`, starting from the
// projection of `start`. The objective sequence is non-decreasing.
AscentResult MaximizeOnL1Ball(const SmoothObjective& objective,
                              std::span<const double> start, double bound,
                              const SolverConfig& config);

}  // namespace dppref

#endif  // DPPREF_L1_ASCENT_H_
