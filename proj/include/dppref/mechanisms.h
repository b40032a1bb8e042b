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

#ifndef DPPREF_MECHANISMS_H_
#define DPPREF_MECHANISMS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dppref/rng.h"
#include "dppref/types.h"

namespace dppref {

// l1 sensitivity of the mean of N bounded parameters: 2B/N.
double CentralizedSensitivity(double bound, int num_voters);
// l1 sensitivity of one bounded parameter: 2B.
double VoterSensitivity(double bound);

// Centralized release of the mean of fitted parameters with
// [Lap(2B / (N epsilon))]^d noise. Every input must satisfy ||beta||_1 <= B;
// the guarantee holds for voter-level and record-level neighbors alike.
absl::StatusOr<PreferenceVector> VlcpRelease(
    std::span<const PreferenceVector> betas, PrivacyBudget epsilon,
    double bound, RngStream& rng);

// Local perturbation of one voter's parameter with [Lap(2B / epsilon_i)]^d.
absl::StatusOr<PreferenceVector> VldpPerturbVoter(const PreferenceVector& beta,
                                                  PrivacyBudget epsilon,
                                                  double bound, RngStream& rng);

// Per-voter outputs of a distributed mechanism and the aggregator's mean.
struct DistributedRelease {
  std::vector<int64_t> voter_ids;
  std::vector<PreferenceVector> voter_outputs;
  PreferenceVector mean;
};

// Runs VldpPerturbVoter for every voter, each with its own epsilon and its own
// (seed, voter id) noise stream, then averages.
absl::StatusOr<DistributedRelease> VldpRelease(
    std::span<const PreferenceVector> betas, std::span<const int64_t> voter_ids,
    std::span<const PrivacyBudget> epsilons, double bound, uint64_t seed);

// alpha = (2B / (N epsilon)) ln(d / gamma): with probability >= 1 - gamma the
// centralized release is within alpha of the mean in the infinity norm. Use
// num_voters = 1 for the per-voter mechanism.
absl::StatusOr<double> UtilityBoundAlpha(double bound, int num_voters,
                                         double epsilon, int dimension,
                                         double gamma);

}  // namespace dppref

#endif  // DPPREF_MECHANISMS_H_
