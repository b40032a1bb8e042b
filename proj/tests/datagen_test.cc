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

#include "dppref/datagen.h"

#include <cmath>
#include <map>

#include "dppref/normal.h"
#include "dppref/rng.h"
#include "gtest/gtest.h"

namespace dppref {
namespace {

TEST(SocietySpecTest, Validation) {
  EXPECT_TRUE((SocietySpec{2, 2, 3, 0}).Validate().ok());
  EXPECT_FALSE((SocietySpec{0, 2, 3, 0}).Validate().ok());
  EXPECT_FALSE((SocietySpec{2, 0, 3, 0}).Validate().ok());
  EXPECT_FALSE((SocietySpec{2, 2, 0, 0}).Validate().ok());
  EXPECT_FALSE((SocietySpec{2, 2, kMaxDimension + 1, 0}).Validate().ok());
}

TEST(GenerateSocietyTest, Deterministic) {
  const SocietySpec spec{20, 5, 4, 123};
  const Society a = *GenerateSociety(spec);
  const Society b = *GenerateSociety(spec);
  EXPECT_EQ(a.mean, b.mean);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.betas[i].beta, b.betas[i].beta);
  const Corpus ca = *GenerateCorpus(spec, a);
  const Corpus cb = *GenerateCorpus(spec, b);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 5; ++j) {
      EXPECT_EQ(ca.voters[i].records[j].chosen, cb.voters[i].records[j].chosen);
    }
  }
  EXPECT_NE(GenerateSociety({20, 5, 4, 124})->mean, a.mean);
}

TEST(GenerateSocietyTest, MomentsMatchGenerativeModel) {
  const int n = 100000, d = 3;
  const Society s = *GenerateSociety({n, 1, d, 77});
  for (int k = 0; k < d; ++k) {
    EXPECT_GE(s.mean[k], -1.0);
    EXPECT_LT(s.mean[k], 1.0);
    double sum = 0.0, squares = 0.0;
    for (const PreferenceVector& b : s.betas) sum += b.beta[k];
    const double mean = sum / n;
    for (const PreferenceVector& b : s.betas) squares += (b.beta[k] - mean) * (b.beta[k] - mean);
    EXPECT_NEAR(mean, s.mean[k], 0.02);
    EXPECT_NEAR(squares / (n - 1), 1.0, 0.02);
  }
}

TEST(GenerateVoterRecordsTest, ZeroBetaIsSymmetric) {
  RngStream rng(5, 0, StreamPurpose::kRecords);
  // With beta = 0 the choice is a coin flip; count how often x1 (drawn first)
  // wins by regenerating the draws from the same stream.
  RngStream replay(5, 0, StreamPurpose::kRecords);
  const VoterDataset v = GenerateVoterRecords({Vector(2, 0.0), {}}, 100000, 0, rng);
  int x1_chosen = 0;
  for (const PairwiseComparison& r : v.records) {
    Vector x1(2);
    for (double& x : x1) x = replay.StandardNormal();
    for (int k = 0; k < 2; ++k) replay.StandardNormal();
    replay.StandardNormal();
    replay.StandardNormal();
    x1_chosen += r.chosen == x1;
  }
  EXPECT_NEAR(x1_chosen / 100000.0, 0.5, 0.01);
}

TEST(GenerateVoterRecordsTest, ChoiceProbabilityFollowsProbitModel) {
  // P(choose x1) = Phi(beta . (x1 - x2)) since U1 - U2 ~ N(beta.V, 1).
  const PreferenceVector beta{{1.5, -1.0}, {}};
  RngStream rng(11, 0, StreamPurpose::kRecords);
  const VoterDataset v = GenerateVoterRecords(beta, 100000, 0, rng);
  std::map<int, std::pair<double, double>> bins;  // bin -> (agree count, Phi sum)
  std::map<int, int> counts;
  for (const PairwiseComparison& r : v.records) {
    Vector diff(2);
    for (int k = 0; k < 2; ++k) diff[k] = r.chosen[k] - r.rejected[k];
    // Orient by the model's preferred side; the chosen side agrees with
    // probability Phi(|beta.V|).
    const double z = std::abs(Dot(beta.beta, diff));
    const int bin = std::min(static_cast<int>(z / 0.5), 5);
    bins[bin].first += Dot(beta.beta, diff) >= 0.0 ? 1.0 : 0.0;
    bins[bin].second += StdNormalCdf(z);
    ++counts[bin];
  }
  for (const auto& [bin, sums] : bins) {
    if (counts[bin] < 2000) continue;
    EXPECT_NEAR(sums.first / counts[bin], sums.second / counts[bin], 0.02) << "bin " << bin;
  }
}

TEST(GenerateVoterRecordsTest, UtilityNoiseHasUnitVarianceDifference) {
  // Replays the generator's draw order to recover U1 - U2 - beta.(x1 - x2).
  const PreferenceVector beta{{0.7, 0.2}, {}};
  RngStream rng(21, 0, StreamPurpose::kRecords);
  GenerateVoterRecords(beta, 100000, 0, rng);
  RngStream replay(21, 0, StreamPurpose::kRecords);
  double sum = 0.0, squares = 0.0;
  const int n = 100000;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < 4; ++k) replay.StandardNormal();
    const double e = std::sqrt(0.5) * (replay.StandardNormal() - replay.StandardNormal());
    sum += e;
    squares += e * e;
  }
  const double mean = sum / n;
  EXPECT_NEAR(squares / n - mean * mean, 1.0, 0.02);
}

TEST(PreprocessScaleTest, ClipsOnlyLongAlternatives) {
  Corpus c;
  c.dimension = 2;
  c.voters.push_back({0, {{{3.0, 4.0}, {0.3, 0.0}}}});
  const Corpus p = PreprocessScale(c);
  EXPECT_NEAR(p.voters[0].records[0].chosen[0], 0.3, 1e-15);
  EXPECT_NEAR(p.voters[0].records[0].chosen[1], 0.4, 1e-15);
  EXPECT_EQ(p.voters[0].records[0].rejected, (Vector{0.3, 0.0}));
  EXPECT_TRUE(p.preprocessed);
  EXPECT_FALSE(IsWithinPreprocessBound(c));
  EXPECT_TRUE(IsWithinPreprocessBound(p));
}

TEST(PreprocessScaleTest, IdempotentAndNonIncreasing) {
  const SocietySpec spec{10, 20, 6, 3};
  const Corpus raw = *GenerateCorpus(spec, *GenerateSociety(spec));
  const Corpus once = PreprocessScale(raw);
  const Corpus twice = PreprocessScale(once);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 20; ++j) {
      const PairwiseComparison& r = raw.voters[i].records[j];
      const PairwiseComparison& o = once.voters[i].records[j];
      EXPECT_EQ(o.chosen, twice.voters[i].records[j].chosen);
      EXPECT_LE(L2Norm(o.chosen), std::min(L2Norm(r.chosen), 0.5 + 1e-12));
      EXPECT_LE(L2Norm(o.rejected), std::min(L2Norm(r.rejected), 0.5 + 1e-12));
      Vector v(6);
      for (int k = 0; k < 6; ++k) v[k] = o.chosen[k] - o.rejected[k];
      EXPECT_LE(L2Norm(v), 1.0 + 1e-12);
    }
  }
}

TEST(RoundToHundredthTest, HalfAwayFromZero) {
  EXPECT_EQ(RoundToHundredth(0.125), 0.13);
  EXPECT_EQ(RoundToHundredth(-0.125), -0.13);
  EXPECT_EQ(RoundToHundredth(0.014), 0.01);
  EXPECT_EQ(RoundToHundredth(0.2), 0.2);
}

TEST(AssignPrivacyGroupsTest, DefaultSplitAndRanges) {
  std::vector<int64_t> ids(100);
  for (int i = 0; i < 100; ++i) ids[i] = 1000 + i;
  RngStream rng(3, -1, StreamPurpose::kPrivacyGroups);
  const PersonalizedSpec spec;
  const auto groups = *AssignPrivacyGroups(ids, spec, rng);
  std::map<PrivacyGroup, int> counts;
  for (size_t i = 0; i < groups.size(); ++i) {
    const PrivacyAssignment& a = groups[i];
    EXPECT_EQ(a.voter_id, ids[i]);
    ++counts[a.group];
    const double hundredths = a.epsilon * 100.0;
    EXPECT_NEAR(hundredths, std::round(hundredths), 1e-9);
    EXPECT_GE(a.epsilon, 0.01);
    EXPECT_LE(a.epsilon, 1.0);
    switch (a.group) {
      case PrivacyGroup::kConservative:
        EXPECT_GE(a.epsilon, spec.eps_conservative);
        EXPECT_LE(a.epsilon, spec.eps_moderate);
        break;
      case PrivacyGroup::kModerate:
        EXPECT_GE(a.epsilon, spec.eps_moderate);
        EXPECT_LE(a.epsilon, spec.eps_liberal);
        break;
      case PrivacyGroup::kLiberal:
        EXPECT_EQ(a.epsilon, spec.eps_liberal);
        break;
    }
  }
  EXPECT_EQ(counts[PrivacyGroup::kConservative], 54);
  EXPECT_EQ(counts[PrivacyGroup::kModerate], 36);
  EXPECT_EQ(counts[PrivacyGroup::kLiberal], 10);
}

TEST(AssignPrivacyGroupsTest, FloorCountsAndValidation) {
  std::vector<int64_t> ids(7);
  RngStream rng(1, -1, StreamPurpose::kPrivacyGroups);
  PersonalizedSpec spec;
  const auto groups = *AssignPrivacyGroups(ids, spec, rng);
  int conservative = 0, moderate = 0;
  for (const auto& a : groups) {
    conservative += a.group == PrivacyGroup::kConservative;
    moderate += a.group == PrivacyGroup::kModerate;
  }
  EXPECT_EQ(conservative, 3);  // floor(0.54 * 7)
  EXPECT_EQ(moderate, 2);      // floor(0.36 * 7)

  spec.f_conservative = 0.8;
  EXPECT_FALSE(AssignPrivacyGroups(ids, spec, rng).ok());
  spec = {};
  spec.eps_conservative = 0.5;
  EXPECT_FALSE(AssignPrivacyGroups(ids, spec, rng).ok());
  spec = {};
  spec.eps_conservative = 0.0;
  EXPECT_FALSE(AssignPrivacyGroups(ids, spec, rng).ok());
}

}  // namespace
}  // namespace dppref
