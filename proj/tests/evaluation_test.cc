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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace dppref {
namespace {

PreferenceVector P(Vector beta) { return PreferenceVector{std::move(beta), {}}; }

TEST(ScenarioTest, DeterministicAndStandardNormal) {
  const TestScenarioSet a = *GenerateTestScenarios(4, 10000, 17);
  const TestScenarioSet b = *GenerateTestScenarios(4, 10000, 17);
  ASSERT_EQ(a.scenarios.size(), 10000u);
  EXPECT_EQ(a.scenarios[9999].chosen, b.scenarios[9999].chosen);
  double sum = 0.0, sq = 0.0;
  int count = 0;
  for (const PairwiseComparison& s : a.scenarios) {
    for (double x : s.chosen) { sum += x; sq += x * x; ++count; }
    for (double x : s.rejected) { sum += x; sq += x * x; ++count; }
  }
  EXPECT_NEAR(sum / count, 0.0, 0.04);
  EXPECT_NEAR(sq / count, 1.0, 0.04);
  EXPECT_NE(GenerateTestScenarios(4, 10, 18)->scenarios[0].chosen,
            GenerateTestScenarios(4, 10, 17)->scenarios[0].chosen);
}

TEST(ScenarioTest, RejectsBadArguments) {
  EXPECT_FALSE(GenerateTestScenarios(0, 10, 1).ok());
  EXPECT_FALSE(GenerateTestScenarios(3, 0, 1).ok());
}

TEST(AccuracyTest, Properties) {
  const TestScenarioSet set = *GenerateTestScenarios(5, 10000, 3);
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector a = testing::RandomNormal(5, gen);
    const Vector b = testing::RandomNormal(5, gen);
    Vector neg_a = a, scaled_a = a;
    for (int k = 0; k < 5; ++k) {
      neg_a[k] = -a[k];
      scaled_a[k] = 3.7 * a[k];
    }
    EXPECT_EQ(*Accuracy(P(a), P(a), set), 1.0);
    EXPECT_EQ(*Accuracy(P(a), P(neg_a), set), 0.0);
    EXPECT_EQ(*Accuracy(P(a), P(scaled_a), set), 1.0);
    EXPECT_EQ(*Accuracy(P(a), P(b), set), *Accuracy(P(b), P(a), set));
    // Sign agreement of two Gaussian projections: 1 - angle / pi.
    double dot = 0.0;
    for (int k = 0; k < 5; ++k) dot += a[k] * b[k];
    const double angle =
        std::acos(dot / (L2Norm(a) * L2Norm(b)));
    EXPECT_NEAR(*Accuracy(P(a), P(b), set), 1.0 - angle / M_PI, 0.02);
  }
}

TEST(AccuracyTest, Errors) {
  const TestScenarioSet set = *GenerateTestScenarios(3, 100, 3);
  EXPECT_FALSE(Accuracy(P({1, 2}), P({1, 2, 3}), set).ok());
  EXPECT_FALSE(Accuracy(P({1, 2, NAN}), P({1, 2, 3}), set).ok());
  TestScenarioSet empty{3, 0, {}};
  EXPECT_FALSE(Accuracy(P({1, 2, 3}), P({1, 2, 3}), empty).ok());
}

TEST(AccuracyRatioTest, Values) {
  const TestScenarioSet set = *GenerateTestScenarios(3, 10000, 9);
  const Vector g = {1, 0, 0};
  EXPECT_EQ(*AccuracyRatio(P(g), P(g), P(g), set), 1.0);
  const double baseline = *Accuracy(P(g), P({1, 1, 0}), set);
  const double noisy = *Accuracy(P(g), P({0, 1, 0}), set);
  EXPECT_DOUBLE_EQ(*AccuracyRatio(P(g), P({1, 1, 0}), P({0, 1, 0}), set),
                   noisy / baseline);
  EXPECT_EQ(AccuracyRatio(P(g), P({-1, 0, 0}), P(g), set).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(SummarizeTest, MeanAndStandardError) {
  const std::vector<double> v = {1, 2, 3, 4};
  const Summary s = Summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.stderr, std::sqrt(5.0 / 3.0) / 2.0);
  EXPECT_EQ(s.count, 4);
  const std::vector<double> one = {7};
  EXPECT_EQ(Summarize(one).stderr, 0.0);
}

TEST(SensitivityCheckTest, SocietyMeanRecordLevel) {
  SensitivityCheckConfig config;
  config.trials = 20;
  const SensitivityReport r = *EmpiricalSensitivityCheck(
      SensitivityStatistic::kSocietyMean, NeighborLevel::kRecord, config, 1);
  EXPECT_DOUBLE_EQ(r.theoretical_bound, 0.4);
  EXPECT_GE(r.adversarial_deviation, 0.95 * 0.4);
  EXPECT_TRUE(r.within_bound);
  EXPECT_EQ(r.pairs, 20);
}

TEST(SensitivityCheckTest, VoterParameterVoterLevel) {
  SensitivityCheckConfig config;
  config.trials = 20;
  const SensitivityReport r = *EmpiricalSensitivityCheck(
      SensitivityStatistic::kVoterParameter, NeighborLevel::kVoter, config, 2);
  EXPECT_DOUBLE_EQ(r.theoretical_bound, 4.0);
  EXPECT_LE(r.max_deviation, 4.0 + 1e-4);
  EXPECT_GE(r.adversarial_deviation, 0.95 * 4.0);
}

TEST(SensitivityCheckTest, RejectsBadConfig) {
  SensitivityCheckConfig config;
  config.bound = 0.0;
  EXPECT_FALSE(EmpiricalSensitivityCheck(SensitivityStatistic::kSocietyMean,
                                         NeighborLevel::kRecord, config, 1)
                   .ok());
}

TEST(ExceedanceTest, WithinGamma) {
  const ExceedanceReport r =
      *UtilityBoundExceedance(2.0, 100, 1.0, 10, 0.05, 2000, 4);
  EXPECT_TRUE(r.within_bound) << r.fraction;
  EXPECT_EQ(r.releases, 2000);
  EXPECT_GT(r.fraction, 0.0);
  EXPECT_DOUBLE_EQ(r.margin, 3.0 * std::sqrt(0.05 * 0.95 / 2000));
}

}  // namespace
}  // namespace dppref
