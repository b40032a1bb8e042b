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

#include "dppref/inference.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dppref/normal.h"

namespace dppref {

absl::StatusOr<VoterLikelihood> VoterLikelihood::Create(
    const VoterDataset& dataset) {
  if (dataset.records.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("voter ", dataset.voter_id, " has no records"));
  }
  const int dimension = static_cast<int>(dataset.records.front().chosen.size());
  if (absl::Status s = CheckVoterDataset(dataset, dimension); !s.ok()) return s;
  const int n = static_cast<int>(dataset.records.size());
  Vector differences(static_cast<size_t>(n) * dimension);
  for (int j = 0; j < n; ++j) {
    const PairwiseComparison& r = dataset.records[j];
    for (int k = 0; k < dimension; ++k) {
      differences[static_cast<size_t>(j) * dimension + k] =
          r.chosen[k] - r.rejected[k];
    }
  }
  return VoterLikelihood(dimension, n, std::move(differences));
}

double VoterLikelihood::Value(std::span<const double> beta) const {
  double sum = 0.0;
  for (int j = 0; j < num_records_; ++j) {
    sum += LogStdNormalCdf(Dot(beta, Row(j)));
  }
  return sum;
}

void VoterLikelihood::Gradient(std::span<const double> beta,
                               std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 0; j < num_records_; ++j) {
    std::span<const double> v = Row(j);
    const double weight = LogStdNormalCdfDerivative(Dot(beta, v));
    for (int k = 0; k < dimension_; ++k) out[k] += weight * v[k];
  }
}

namespace {

absl::StatusOr<VoterLikelihood> LikelihoodFor(const PreferenceVector& beta,
                                              const VoterDataset& dataset) {
  absl::StatusOr<VoterLikelihood> likelihood = VoterLikelihood::Create(dataset);
  if (!likelihood.ok()) return likelihood.status();
  if (beta.dimension() != likelihood->dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension mismatch: beta has ", beta.dimension(),
                     " entries, records have ", likelihood->dimension()));
  }
  if (!AllFinite(beta.beta)) {
    return absl::InvalidArgumentError("beta has non-finite entries");
  }
  return likelihood;
}

}  // namespace

absl::StatusOr<double> LogLikelihood(const PreferenceVector& beta,
                                     const VoterDataset& dataset) {
  absl::StatusOr<VoterLikelihood> likelihood = LikelihoodFor(beta, dataset);
  if (!likelihood.ok()) return likelihood.status();
  return likelihood->Value(beta.beta);
}

absl::StatusOr<Vector> LogLikelihoodGradient(const PreferenceVector& beta,
                                             const VoterDataset& dataset) {
  absl::StatusOr<VoterLikelihood> likelihood = LikelihoodFor(beta, dataset);
  if (!likelihood.ok()) return likelihood.status();
  Vector gradient(beta.beta.size());
  likelihood->Gradient(beta.beta, gradient);
  return gradient;
}

absl::StatusOr<FitResult> FitVoter(const VoterDataset& dataset, double bound,
                                   const SolverConfig& config) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    return absl::InvalidArgumentError(
        absl::StrCat("norm bound must be positive and finite, got ", bound));
  }
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  absl::StatusOr<VoterLikelihood> likelihood = VoterLikelihood::Create(dataset);
  if (!likelihood.ok()) return likelihood.status();

  const VoterLikelihood& l = *likelihood;
  SmoothObjective objective{
      [&l](std::span<const double> b) { return l.Value(b); },
      [&l](std::span<const double> b, std::span<double> g) {
        l.Gradient(b, g);
      }};
  const Vector zero(l.dimension(), 0.0);
  AscentResult ascent = MaximizeOnL1Ball(objective, zero, bound, config);

  FitResult result;
  result.beta.beta = std::move(ascent.point);
  result.beta.l1_bound = bound;
  result.final_objective = ascent.objective;
  result.iterations = ascent.iterations;
  result.converged = ascent.converged;
  result.objective_trace = std::move(ascent.objective_trace);
  return result;
}

absl::StatusOr<PreferenceVector> AggregateMean(
    std::span<const PreferenceVector> betas) {
  if (betas.empty()) {
    return absl::InvalidArgumentError("cannot average an empty list");
  }
  const int d = betas.front().dimension();
  PreferenceVector mean;
  mean.beta.assign(d, 0.0);
  bool all_bounded = true;
  double bound = 0.0;
  for (const PreferenceVector& b : betas) {
    if (b.dimension() != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("dimension mismatch: expected ", d, ", got ",
                       b.dimension()));
    }
    for (int k = 0; k < d; ++k) mean.beta[k] += b.beta[k];
    if (b.l1_bound.has_value()) {
      bound = std::max(bound, *b.l1_bound);
    } else {
      all_bounded = false;
    }
  }
  const double n = static_cast<double>(betas.size());
  for (double& x : mean.beta) x /= n;
  if (all_bounded) mean.l1_bound = bound;
  return mean;
}

}  // namespace dppref
