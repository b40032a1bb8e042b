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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace dppref {
namespace {

const double kUtilityStddev = std::sqrt(0.5);

// floor(f N) with a little headroom so 0.57 * 100 counts 57, not 56.
int GroupSize(double fraction, int n) {
  return static_cast<int>(std::floor(fraction * n + 1e-9));
}

Vector StandardNormalVector(int d, RngStream& rng) {
  Vector x(d);
  for (double& v : x) v = rng.StandardNormal();
  return x;
}

void ClipNorm(Vector& x) {
  // Rescaling can land a few ulps above the bound; treating those as already
  // clipped makes preprocessing idempotent.
  constexpr double kRoundingSlack = 1e-14;
  const double norm = L2Norm(x);
  if (norm > kAlternativeNormBound + kRoundingSlack) {
    const double factor = kAlternativeNormBound / norm;
    for (double& v : x) v *= factor;
  }
}

}  // namespace

absl::Status SocietySpec::Validate() const {
  if (num_voters < 1 || num_records < 1 || dimension < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("N, n and d must all be >= 1 (got N=", num_voters,
                     ", n=", num_records, ", d=", dimension, ")"));
  }
  if (dimension > kMaxDimension) {
    return absl::InvalidArgumentError(
        absl::StrCat("d must be <= ", kMaxDimension));
  }
  return absl::OkStatus();
}

absl::StatusOr<Society> GenerateSociety(const SocietySpec& spec) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  Society society;
  RngStream mean_rng(spec.seed, -1, StreamPurpose::kSocietyMean);
  society.mean.resize(spec.dimension);
  for (double& m : society.mean) m = 2.0 * mean_rng.Uniform01() - 1.0;

  society.betas.reserve(spec.num_voters);
  for (int i = 0; i < spec.num_voters; ++i) {
    RngStream rng(spec.seed, i, StreamPurpose::kTrueBeta);
    PreferenceVector beta;
    beta.beta = society.mean;
    for (double& b : beta.beta) b += rng.StandardNormal();
    society.betas.push_back(std::move(beta));
  }
  return society;
}

VoterDataset GenerateVoterRecords(const PreferenceVector& beta, int num_records,
                                  int64_t voter_id, RngStream& rng) {
  const int d = beta.dimension();
  VoterDataset dataset;
  dataset.voter_id = voter_id;
  dataset.records.reserve(num_records);
  for (int j = 0; j < num_records; ++j) {
    Vector x1 = StandardNormalVector(d, rng);
    Vector x2 = StandardNormalVector(d, rng);
    const double u1 = Dot(beta.beta, x1) + kUtilityStddev * rng.StandardNormal();
    const double u2 = Dot(beta.beta, x2) + kUtilityStddev * rng.StandardNormal();
    if (u1 >= u2) {
      dataset.records.push_back({std::move(x1), std::move(x2)});
    } else {
      dataset.records.push_back({std::move(x2), std::move(x1)});
    }
  }
  return dataset;
}

absl::StatusOr<Corpus> GenerateCorpus(const SocietySpec& spec,
                                      const Society& society) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  if (static_cast<int>(society.betas.size()) != spec.num_voters) {
    return absl::InvalidArgumentError("society size does not match spec");
  }
  Corpus corpus;
  corpus.dimension = spec.dimension;
  corpus.voters.reserve(spec.num_voters);
  for (int i = 0; i < spec.num_voters; ++i) {
    RngStream rng(spec.seed, i, StreamPurpose::kRecords);
    corpus.voters.push_back(
        GenerateVoterRecords(society.betas[i], spec.num_records, i, rng));
  }
  return corpus;
}

Corpus PreprocessScale(const Corpus& corpus) {
  Corpus out = corpus;
  for (VoterDataset& voter : out.voters) {
    for (PairwiseComparison& r : voter.records) {
      ClipNorm(r.chosen);
      ClipNorm(r.rejected);
    }
  }
  out.preprocessed = true;
  return out;
}

bool IsWithinPreprocessBound(const Corpus& corpus) {
  constexpr double kSlack = 1e-12;
  for (const VoterDataset& voter : corpus.voters) {
    for (const PairwiseComparison& r : voter.records) {
      if (L2Norm(r.chosen) > kAlternativeNormBound + kSlack ||
          L2Norm(r.rejected) > kAlternativeNormBound + kSlack) {
        return false;
      }
    }
  }
  return true;
}

std::string PrivacyGroupName(PrivacyGroup group) {
  switch (group) {
    case PrivacyGroup::kConservative:
      return "conservative";
    case PrivacyGroup::kModerate:
      return "moderate";
    case PrivacyGroup::kLiberal:
      return "liberal";
  }
  return "unknown";
}

absl::Status PersonalizedSpec::Validate() const {
  if (!(f_conservative >= 0.0 && f_moderate >= 0.0 &&
        f_conservative + f_moderate <= 1.0 + 1e-12)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "group fractions must be non-negative with f_c + f_m <= 1 (got f_c=",
        f_conservative, ", f_m=", f_moderate, ")"));
  }
  if (!(eps_conservative > 0.0 && eps_conservative <= eps_moderate &&
        eps_moderate <= eps_liberal && std::isfinite(eps_liberal))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need 0 < eps_c <= eps_m <= eps_l (got ", eps_conservative, ", ",
        eps_moderate, ", ", eps_liberal, ")"));
  }
  return absl::OkStatus();
}

double RoundToHundredth(double x) { return std::round(x * 100.0) / 100.0; }

absl::StatusOr<std::vector<PrivacyAssignment>> AssignPrivacyGroups(
    std::span<const int64_t> voter_ids, const PersonalizedSpec& spec,
    RngStream& rng) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  const int n = static_cast<int>(voter_ids.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng.engine());

  const int conservative = GroupSize(spec.f_conservative, n);
  const int moderate = std::min(n - conservative,
                                GroupSize(spec.f_moderate, n));

  auto draw = [&rng](double lo, double hi) {
    const double eps = RoundToHundredth(lo + (hi - lo) * rng.Uniform01());
    return std::clamp(eps, lo, hi);
  };

  std::vector<PrivacyAssignment> out(n);
  for (int rank = 0; rank < n; ++rank) {
    const int i = order[rank];
    PrivacyAssignment& a = out[i];
    a.voter_id = voter_ids[i];
    if (rank < conservative) {
      a.group = PrivacyGroup::kConservative;
      a.epsilon = draw(spec.eps_conservative, spec.eps_moderate);
    } else if (rank < conservative + moderate) {
      a.group = PrivacyGroup::kModerate;
      a.epsilon = draw(spec.eps_moderate, spec.eps_liberal);
    } else {
      a.group = PrivacyGroup::kLiberal;
      a.epsilon = spec.eps_liberal;
    }
  }
  return out;
}

}  // namespace dppref
