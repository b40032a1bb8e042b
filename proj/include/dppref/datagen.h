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

#ifndef DPPREF_DATAGEN_H_
#define DPPREF_DATAGEN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dppref/rng.h"
#include "dppref/types.h"

namespace dppref {

// Norm every alternative is clipped to before the functional mechanism.
inline constexpr double kAlternativeNormBound = 0.5;

struct SocietySpec {
  int num_voters = 100;   // N
  int num_records = 50;   // n
  int dimension = 10;     // d
  uint64_t seed = 0;

  absl::Status Validate() const;
};

struct Society {
  std::vector<PreferenceVector> betas;  // generating parameters, unbounded
  Vector mean;                          // m
};

// m_k ~ U(-1, 1) i.i.d., beta_i ~ N(m, I_d) i.i.d.
absl::StatusOr<Society> GenerateSociety(const SocietySpec& spec);

// n comparisons for one voter: x1, x2 ~ N(0, I_d), utilities
// U ~ N(beta . x, 1/2), and the higher-utility alternative is `chosen`
// (ties go to x1).
VoterDataset GenerateVoterRecords(const PreferenceVector& beta, int num_records,
                                  int64_t voter_id, RngStream& rng);

// Records for every voter of `society`, voter i drawing from the
// (spec.seed, i, kRecords) stream. Not preprocessed.
absl::StatusOr<Corpus> GenerateCorpus(const SocietySpec& spec,
                                      const Society& society);

// Rescales each alternative with l2 norm above 1/2 to norm exactly 1/2.
Corpus PreprocessScale(const Corpus& corpus);

// True when every alternative has l2 norm <= 1/2 (up to rounding).
bool IsWithinPreprocessBound(const Corpus& corpus);

enum class PrivacyGroup { kConservative, kModerate, kLiberal };

std::string PrivacyGroupName(PrivacyGroup group);

struct PrivacyAssignment {
  int64_t voter_id = 0;
  PrivacyGroup group = PrivacyGroup::kLiberal;
  double epsilon = 1.0;
};

// Group fractions and epsilon ranges for personalized privacy.
struct PersonalizedSpec {
  double f_conservative = 0.54;
  double f_moderate = 0.36;
  double eps_conservative = 0.01;
  double eps_moderate = 0.2;
  double eps_liberal = 1.0;

  absl::Status Validate() const;
};

// Round half away from zero to two decimals.
double RoundToHundredth(double x);

// Random partition of the voters: the first floor(f_C N) of a random
// permutation are conservative with epsilon ~ U[eps_C, eps_M], the next
// floor(f_M N) moderate with epsilon ~ U[eps_M, eps_L], both rounded to
// hundredths; the rest are liberal with epsilon = eps_L. Output is in
// voter order.
absl::StatusOr<std::vector<PrivacyAssignment>> AssignPrivacyGroups(
    std::span<const int64_t> voter_ids, const PersonalizedSpec& spec,
    RngStream& rng);

}  // namespace dppref

#endif  // DPPREF_DATAGEN_H_
