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

#include "dppref/mechanisms.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "dppref/inference.h"
#include "dppref/laplace.h"

namespace dppref {
namespace {

absl::Status CheckBound(double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    return absl::InvalidArgumentError(
        absl::StrCat("norm bound must be positive and finite, got ", bound));
  }
  return absl::OkStatus();
}

// The sensitivity argument needs every input inside the B ball.
absl::Status CheckInsideBall(const PreferenceVector& beta, double bound) {
  if (!AllFinite(beta.beta)) {
    return absl::InvalidArgumentError("parameter has non-finite entries");
  }
  const double norm = L1Norm(beta.beta);
  if (norm > bound + kL1BoundSlack) {
    return absl::FailedPreconditionError(
        absl::StrCat("parameter l1 norm ", norm, " exceeds the bound ", bound,
                     "; the sensitivity bound does not apply"));
  }
  return absl::OkStatus();
}

}  // namespace

double CentralizedSensitivity(double bound, int num_voters) {
  return 2.0 * bound / num_voters;
}

double VoterSensitivity(double bound) { return 2.0 * bound; }

absl::StatusOr<PreferenceVector> VlcpRelease(
    std::span<const PreferenceVector> betas, PrivacyBudget epsilon,
    double bound, RngStream& rng) {
  if (absl::Status s = CheckBound(bound); !s.ok()) return s;
  if (betas.empty()) {
    return absl::InvalidArgumentError("centralized release needs >= 1 voter");
  }
  for (const PreferenceVector& b : betas) {
    if (absl::Status s = CheckInsideBall(b, bound); !s.ok()) return s;
  }
  absl::StatusOr<PreferenceVector> mean = AggregateMean(betas);
  if (!mean.ok()) return mean.status();

  const int n = static_cast<int>(betas.size());
  const double scale = CentralizedSensitivity(bound, n) / epsilon.epsilon();
  PreferenceVector released;
  released.beta = std::move(mean->beta);
  for (double& x : released.beta) x += SampleLaplace(scale, rng);
  return released;
}

absl::StatusOr<PreferenceVector> VldpPerturbVoter(const PreferenceVector& beta,
                                                  PrivacyBudget epsilon,
                                                  double bound,
                                                  RngStream& rng) {
  if (absl::Status s = CheckBound(bound); !s.ok()) return s;
  if (absl::Status s = CheckInsideBall(beta, bound); !s.ok()) return s;
  const double scale = VoterSensitivity(bound) / epsilon.epsilon();
  PreferenceVector released;
  released.beta = beta.beta;
  for (double& x : released.beta) x += SampleLaplace(scale, rng);
  return released;
}

absl::StatusOr<DistributedRelease> VldpRelease(
    std::span<const PreferenceVector> betas, std::span<const int64_t> voter_ids,
    std::span<const PrivacyBudget> epsilons, double bound, uint64_t seed) {
  if (betas.size() != voter_ids.size() || betas.size() != epsilons.size()) {
    return absl::InvalidArgumentError(
        "betas, voter ids and epsilons must have equal length");
  }
  DistributedRelease release;
  release.voter_ids.assign(voter_ids.begin(), voter_ids.end());
  release.voter_outputs.reserve(betas.size());
  for (size_t i = 0; i < betas.size(); ++i) {
    RngStream rng(seed, voter_ids[i], StreamPurpose::kVoterNoise);
    absl::StatusOr<PreferenceVector> noisy =
        VldpPerturbVoter(betas[i], epsilons[i], bound, rng);
    if (!noisy.ok()) return noisy.status();
    release.voter_outputs.push_back(*std::move(noisy));
  }
  absl::StatusOr<PreferenceVector> mean = AggregateMean(release.voter_outputs);
  if (!mean.ok()) return mean.status();
  release.mean = *std::move(mean);
  return release;
}

absl::StatusOr<double> UtilityBoundAlpha(double bound, int num_voters,
                                         double epsilon, int dimension,
                                         double gamma) {
  if (!(bound > 0.0) || num_voters < 1 || !(epsilon > 0.0) || dimension < 1) {
    return absl::InvalidArgumentError(
        "bound, voter count, epsilon and dimension must be positive");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must lie in (0, 1), got ", gamma));
  }
  return CentralizedSensitivity(bound, num_voters) / epsilon *
         std::log(dimension / gamma);
}

}  // namespace dppref
