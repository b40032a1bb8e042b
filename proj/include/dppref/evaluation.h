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

#ifndef DPPREF_EVALUATION_H_
#define DPPREF_EVALUATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dppref/l1_ascent.h"
#include "dppref/types.h"

namespace dppref {

// Fresh scenario pairs (x1, x2), x ~ N(0, I_d), on which two parameters are
// compared. Stored as (chosen = x1, rejected = x2).
struct TestScenarioSet {
  int dimension = 0;
  uint64_t seed = 0;
  std::vector<PairwiseComparison> scenarios;
};

absl::StatusOr<TestScenarioSet> GenerateTestScenarios(int dimension,
                                                      int num_scenarios,
                                                      uint64_t seed);

// Fraction of scenarios on which both parameters predict the same choice.
absl::StatusOr<double> Accuracy(const PreferenceVector& reference,
                                const PreferenceVector& noisy,
                                const TestScenarioSet& scenarios);

// Accuracy(ground, noisy) / Accuracy(ground, nonprivate). Fails when the
// non-private baseline never agrees with the ground truth.
absl::StatusOr<double> AccuracyRatio(const PreferenceVector& ground,
                                     const PreferenceVector& nonprivate,
                                     const PreferenceVector& noisy,
                                     const TestScenarioSet& scenarios);

struct Summary {
  double mean = 0.0;
  double stderr = 0.0;  // sample standard deviation / sqrt(count); 0 if count < 2
  int count = 0;
};

Summary Summarize(std::span<const double> values);

// Which released statistic the sensitivity check perturbs.
enum class SensitivityStatistic {
  kSocietyMean,     // the mean of N fitted parameters (centralized release)
  kVoterParameter,  // one voter's fitted parameter (per-voter release)
};

enum class NeighborLevel { kVoter, kRecord };

struct SensitivityCheckConfig {
  int num_voters = 10;  // ignored for kVoterParameter
  int num_records = 20;
  int dimension = 5;
  double bound = 2.0;
  // Neighboring pairs, including the single adversarial pair.
  int trials = 250;
  SolverConfig solver;
};

struct SensitivityReport {
  double theoretical_bound = 0.0;  // 2B/N or 2B
  // l1 deviation on the adversarial pair: one record with V = (1,...,1)
  // flipped to V = -(1,...,1), all other records near zero.
  double adversarial_deviation = 0.0;
  double max_random_deviation = 0.0;
  double max_deviation = 0.0;
  int pairs = 0;
  bool within_bound = false;  // max_deviation <= bound + 1e-4
};

// Refits the non-noisy statistic on neighboring datasets and reports the
// largest l1 change observed.
absl::StatusOr<SensitivityReport> EmpiricalSensitivityCheck(
    SensitivityStatistic statistic, NeighborLevel level,
    const SensitivityCheckConfig& config, uint64_t seed);

struct ExceedanceReport {
  double alpha = 0.0;
  double fraction = 0.0;  // releases with ||noise||_inf > alpha
  double margin = 0.0;    // 3 binomial standard deviations at gamma
  int releases = 0;
  bool within_bound = false;  // fraction <= gamma + margin
};

// Repeats the centralized release on a fixed set of N bounded parameters and
// counts how often the infinity-norm error exceeds UtilityBoundAlpha.
absl::StatusOr<ExceedanceReport> UtilityBoundExceedance(
    double bound, int num_voters, double epsilon, int dimension, double gamma,
    int releases, uint64_t seed);

}  // namespace dppref

#endif  // DPPREF_EVALUATION_H_
