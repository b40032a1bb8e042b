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

#include "dppref/evaluation.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dppref/datagen.h"
#include "dppref/inference.h"
#include "dppref/mechanisms.h"
#include "dppref/rng.h"

namespace dppref {
namespace {

constexpr double kSensitivitySlack = 1e-4;

// Magnitude of the "close to zero" records in the adversarial construction.
constexpr double kNearZero = 1e-6;

Vector NormalVector(int d, RngStream& rng) {
  Vector x(d);
  for (double& v : x) v = rng.StandardNormal();
  return x;
}

PairwiseComparison RandomComparison(int d, RngStream& rng) {
  return {NormalVector(d, rng), NormalVector(d, rng)};
}

VoterDataset RandomVoter(int64_t id, int n, int d, RngStream& rng) {
  PreferenceVector beta{NormalVector(d, rng), std::nullopt};
  return GenerateVoterRecords(beta, n, id, rng);
}

// Record 0 has V = sign * (1, ..., 1); the rest have V of order kNearZero.
VoterDataset AdversarialVoter(int64_t id, int n, int d, double sign,
                              RngStream& rng) {
  VoterDataset voter;
  voter.voter_id = id;
  const Vector ones(d, 1.0), zeros(d, 0.0);
  voter.records.push_back(sign > 0 ? PairwiseComparison{ones, zeros}
                                   : PairwiseComparison{zeros, ones});
  for (int j = 1; j < n; ++j) {
    Vector z = NormalVector(d, rng);
    Vector x = z;
    for (double& v : x) v += kNearZero * rng.StandardNormal();
    voter.records.push_back({std::move(x), std::move(z)});
  }
  return voter;
}

absl::StatusOr<PreferenceVector> Fit(const VoterDataset& voter,
                                     const SensitivityCheckConfig& config) {
  absl::StatusOr<FitResult> fit = FitVoter(voter, config.bound, config.solver);
  if (!fit.ok()) return fit.status();
  return std::move(fit->beta);
}

// l1 change of the statistic when voter `changed` goes from `before` to
// `after`; `others` holds the fits of the remaining voters.
absl::StatusOr<double> Deviation(SensitivityStatistic statistic,
                                 std::vector<PreferenceVector> fits,
                                 size_t changed, const VoterDataset& before,
                                 const VoterDataset& after,
                                 const SensitivityCheckConfig& config) {
  absl::StatusOr<PreferenceVector> b = Fit(before, config);
  if (!b.ok()) return b.status();
  absl::StatusOr<PreferenceVector> a = Fit(after, config);
  if (!a.ok()) return a.status();
  if (statistic == SensitivityStatistic::kVoterParameter) {
    return L1Distance(b->beta, a->beta);
  }
  fits[changed] = *b;
  absl::StatusOr<PreferenceVector> mean_before = AggregateMean(fits);
  if (!mean_before.ok()) return mean_before.status();
  fits[changed] = *a;
  absl::StatusOr<PreferenceVector> mean_after = AggregateMean(fits);
  if (!mean_after.ok()) return mean_after.status();
  return L1Distance(mean_before->beta, mean_after->beta);
}

}  // namespace

absl::StatusOr<TestScenarioSet> GenerateTestScenarios(int dimension,
                                                      int num_scenarios,
                                                      uint64_t seed) {
  if (dimension < 1 || dimension > kMaxDimension || num_scenarios < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= d <= ", kMaxDimension, " and T >= 1"));
  }
  TestScenarioSet set;
  set.dimension = dimension;
  set.seed = seed;
  set.scenarios.reserve(num_scenarios);
  RngStream rng(seed, -1, StreamPurpose::kTestScenarios);
  for (int t = 0; t < num_scenarios; ++t) {
    set.scenarios.push_back(RandomComparison(dimension, rng));
  }
  return set;
}

absl::StatusOr<double> Accuracy(const PreferenceVector& reference,
                                const PreferenceVector& noisy,
                                const TestScenarioSet& scenarios) {
  if (reference.dimension() != scenarios.dimension ||
      noisy.dimension() != scenarios.dimension) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: reference ", reference.dimension(), ", noisy ",
        noisy.dimension(), ", scenarios ", scenarios.dimension));
  }
  if (!AllFinite(reference.beta) || !AllFinite(noisy.beta)) {
    return absl::InvalidArgumentError("parameters must be finite");
  }
  if (scenarios.scenarios.empty()) {
    return absl::InvalidArgumentError("scenario set is empty");
  }
  Vector v(scenarios.dimension);
  int agree = 0;
  for (const PairwiseComparison& s : scenarios.scenarios) {
    for (int k = 0; k < scenarios.dimension; ++k) {
      v[k] = s.chosen[k] - s.rejected[k];
    }
    if (ChoiceFromDifference(reference.beta, v) ==
        ChoiceFromDifference(noisy.beta, v)) {
      ++agree;
    }
  }
  return static_cast<double>(agree) /
         static_cast<double>(scenarios.scenarios.size());
}

absl::StatusOr<double> AccuracyRatio(const PreferenceVector& ground,
                                     const PreferenceVector& nonprivate,
                                     const PreferenceVector& noisy,
                                     const TestScenarioSet& scenarios) {
  absl::StatusOr<double> baseline = Accuracy(ground, nonprivate, scenarios);
  if (!baseline.ok()) return baseline.status();
  if (*baseline == 0.0) {
    return absl::FailedPreconditionError(
        "accuracy ratio undefined: non-private baseline accuracy is zero");
  }
  absl::StatusOr<double> private_accuracy = Accuracy(ground, noisy, scenarios);
  if (!private_accuracy.ok()) return private_accuracy.status();
  return *private_accuracy / *baseline;
}

Summary Summarize(std::span<const double> values) {
  Summary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.count;
  if (s.count >= 2) {
    double squares = 0.0;
    for (double v : values) squares += (v - s.mean) * (v - s.mean);
    s.stderr = std::sqrt(squares / (s.count - 1)) / std::sqrt(s.count);
  }
  return s;
}

absl::StatusOr<SensitivityReport> EmpiricalSensitivityCheck(
    SensitivityStatistic statistic, NeighborLevel level,
    const SensitivityCheckConfig& config, uint64_t seed) {
  const bool per_voter = statistic == SensitivityStatistic::kVoterParameter;
  const int num_voters = per_voter ? 1 : config.num_voters;
  if (num_voters < 1 || config.num_records < 1 || config.dimension < 1 ||
      config.trials < 1 || !(config.bound > 0.0)) {
    return absl::InvalidArgumentError(
        "sensitivity check needs positive N, n, d, trials and bound");
  }
  const int n = config.num_records;
  const int d = config.dimension;

  SensitivityReport report;
  report.theoretical_bound =
      per_voter ? VoterSensitivity(config.bound)
                : CentralizedSensitivity(config.bound, num_voters);

  for (int trial = 0; trial < config.trials; ++trial) {
    RngStream rng(seed, trial, StreamPurpose::kNeighbors);
    // Voters 1..N-1 stay fixed within the pair; voter 0 changes.
    std::vector<PreferenceVector> fits(num_voters);
    for (int i = 1; i < num_voters; ++i) {
      absl::StatusOr<PreferenceVector> fit =
          Fit(RandomVoter(i, n, d, rng), config);
      if (!fit.ok()) return fit.status();
      fits[i] = *std::move(fit);
    }

    VoterDataset before, after;
    const bool adversarial = trial == 0;
    if (adversarial) {
      before = AdversarialVoter(0, n, d, 1.0, rng);
      after = before;
      if (level == NeighborLevel::kRecord) {
        after.records[0] = {before.records[0].rejected,
                            before.records[0].chosen};
      } else {
        for (PairwiseComparison& r : after.records) std::swap(r.chosen, r.rejected);
      }
    } else {
      before = RandomVoter(0, n, d, rng);
      if (level == NeighborLevel::kRecord) {
        after = before;
        const int j = static_cast<int>(rng.Uniform01() * n);
        after.records[std::min(j, n - 1)] = RandomComparison(d, rng);
      } else {
        after = RandomVoter(0, n, d, rng);
      }
    }

    absl::StatusOr<double> deviation =
        Deviation(statistic, fits, 0, before, after, config);
    if (!deviation.ok()) return deviation.status();
    if (adversarial) {
      report.adversarial_deviation = *deviation;
    } else {
      report.max_random_deviation =
          std::max(report.max_random_deviation, *deviation);
    }
    report.max_deviation = std::max(report.max_deviation, *deviation);
    ++report.pairs;
  }
  report.within_bound =
      report.max_deviation <= report.theoretical_bound + kSensitivitySlack;
  return report;
}

absl::StatusOr<ExceedanceReport> UtilityBoundExceedance(
    double bound, int num_voters, double epsilon, int dimension, double gamma,
    int releases, uint64_t seed) {
  absl::StatusOr<double> alpha =
      UtilityBoundAlpha(bound, num_voters, epsilon, dimension, gamma);
  if (!alpha.ok()) return alpha.status();
  absl::StatusOr<PrivacyBudget> budget = PrivacyBudget::Create(epsilon);
  if (!budget.ok()) return budget.status();
  if (releases < 1) {
    return absl::InvalidArgumentError("need at least one release");
  }

  // Any parameters inside the ball will do; the noise does not depend on them.
  std::vector<PreferenceVector> betas;
  RngStream setup(seed, -1, StreamPurpose::kTrueBeta);
  for (int i = 0; i < num_voters; ++i) {
    Vector raw = NormalVector(dimension, setup);
    Vector inside(dimension);
    ProjectL1BallInto(raw, bound, inside);
    betas.push_back({std::move(inside), bound});
  }
  absl::StatusOr<PreferenceVector> mean = AggregateMean(betas);
  if (!mean.ok()) return mean.status();

  int exceed = 0;
  for (int r = 0; r < releases; ++r) {
    RngStream rng(seed, r, StreamPurpose::kCentralNoise);
    absl::StatusOr<PreferenceVector> released =
        VlcpRelease(betas, *budget, bound, rng);
    if (!released.ok()) return released.status();
    if (LInfDistance(released->beta, mean->beta) > *alpha) ++exceed;
  }

  ExceedanceReport report;
  report.alpha = *alpha;
  report.releases = releases;
  report.fraction = static_cast<double>(exceed) / releases;
  report.margin = 3.0 * std::sqrt(gamma * (1.0 - gamma) / releases);
  report.within_bound = report.fraction <= gamma + report.margin;
  return report;
}

}  // namespace dppref
