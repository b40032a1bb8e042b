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

#include "dppref/l1_ascent.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "absl/strings/str_cat.h"

namespace dppref {

absl::Status SolverConfig::Validate() const {
  if (max_iters < 1) {
    return absl::InvalidArgumentError("solver max_iters must be >= 1");
  }
  if (!(step_init > 0.0) || !std::isfinite(step_init)) {
    return absl::InvalidArgumentError("solver step_init must be positive");
  }
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) {
    return absl::InvalidArgumentError("solver armijo_c must lie in (0, 1)");
  }
  if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0)) {
    return absl::InvalidArgumentError("solver armijo_shrink must lie in (0, 1)");
  }
  if (!(tol_step > 0.0) || !std::isfinite(tol_step)) {
    return absl::InvalidArgumentError("solver tol_step must be positive");
  }
  return absl::OkStatus();
}

void ProjectL1BallInto(std::span<const double> v, double bound,
                       std::span<double> out) {
  if (L1Norm(v) <= bound) {
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  std::vector<double> magnitudes(v.size());
  for (size_t k = 0; k < v.size(); ++k) magnitudes[k] = std::abs(v[k]);
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());

  // Largest rho with u_rho > (sum_{r<=rho} u_r - bound) / rho.
  double prefix = 0.0;
  double theta = 0.0;
  for (size_t j = 0; j < magnitudes.size(); ++j) {
    prefix += magnitudes[j];
    const double candidate = (prefix - bound) / static_cast<double>(j + 1);
    if (magnitudes[j] > candidate) theta = candidate;
  }
  for (size_t k = 0; k < v.size(); ++k) {
    const double shrunk = std::max(std::abs(v[k]) - theta, 0.0);
    out[k] = std::copysign(shrunk, v[k]);
  }
}

absl::StatusOr<Vector> ProjectL1Ball(std::span<const double> v, double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    return absl::InvalidArgumentError(
        absl::StrCat("l1 bound must be positive and finite, got ", bound));
  }
  if (!AllFinite(v)) {
    return absl::InvalidArgumentError("cannot project a non-finite vector");
  }
  Vector out(v.size());
  ProjectL1BallInto(v, bound, out);
  return out;
}

AscentResult MaximizeOnL1Ball(const SmoothObjective& objective,
                              std::span<const double> start, double bound,
                              const SolverConfig& config) {
  constexpr int kMaxBacktracks = 80;
  const size_t dim = start.size();

  AscentResult result;
  result.point.assign(dim, 0.0);
  ProjectL1BallInto(start, bound, result.point);
  Vector& x = result.point;
  double fx = objective.value(x);
  result.objective_trace.push_back(fx);

  Vector gradient(dim), trial(dim), candidate(dim);
  double last_step = config.step_init;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    objective.gradient(x, gradient);
    double step = std::min(config.step_init, last_step / config.armijo_shrink);
    bool accepted = false;
    double f_candidate = fx;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (size_t k = 0; k < dim; ++k) trial[k] = x[k] + step * gradient[k];
      ProjectL1BallInto(trial, bound, candidate);
      double ascent = 0.0;
      for (size_t k = 0; k < dim; ++k) {
        ascent += gradient[k] * (candidate[k] - x[k]);
      }
      f_candidate = objective.value(candidate);
      if (std::isfinite(f_candidate) &&
          f_candidate >= fx + config.armijo_c * std::max(ascent, 0.0)) {
        accepted = true;
        break;
      }
      step *= config.armijo_shrink;
    }
    if (!accepted) break;

    const double moved = LInfDistance(candidate, x);
    x.swap(candidate);
    fx = f_candidate;
    last_step = step;
    result.iterations = iter + 1;
    result.objective_trace.push_back(fx);
    if (moved < config.tol_step) {
      result.converged = true;
      break;
    }
  }
  result.objective = fx;
  return result;
}

}  // namespace dppref
