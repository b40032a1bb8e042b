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

#ifndef DPPREF_TYPES_H_
#define DPPREF_TYPES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dppref {

// Largest feature dimension accepted anywhere in the library.
inline constexpr int kMaxDimension = 1024;

// Slack allowed when checking an l1 bound certificate.
inline constexpr double kL1BoundSlack = 1e-9;

// Dense real vector. Used for scenario features, differences and parameters.
using Vector = std::vector<double>;

// One voter decision: `chosen` (X) was preferred over `rejected` (Z).
struct PairwiseComparison {
  Vector chosen;
  Vector rejected;
};

// The n comparisons contributed by one voter. Record order carries no
// meaning but is preserved.
struct VoterDataset {
  int64_t voter_id = 0;
  std::vector<PairwiseComparison> records;
};

struct Corpus {
  std::vector<VoterDataset> voters;
  int dimension = 0;
  // True once every alternative has l2 norm <= 1/2.
  bool preprocessed = false;
};

// A voter or society preference vector. `l1_bound` is a certificate that
// ||beta||_1 <= *l1_bound (up to kL1BoundSlack).
struct PreferenceVector {
  Vector beta;
  std::optional<double> l1_bound;

  int dimension() const { return static_cast<int>(beta.size()); }
};

// A strictly positive, finite privacy parameter.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double epsilon);

  double epsilon() const { return epsilon_; }

 private:
  explicit PrivacyBudget(double epsilon) : epsilon_(epsilon) {}

  double epsilon_;
};

enum class Choice { kX, kZ };

double Dot(std::span<const double> a, std::span<const double> b);
double L1Norm(std::span<const double> v);
double L2Norm(std::span<const double> v);
double LInfNorm(std::span<const double> v);
double LInfDistance(std::span<const double> a, std::span<const double> b);
double L1Distance(std::span<const double> a, std::span<const double> b);
bool AllFinite(std::span<const double> v);

// V = X - Z.
absl::StatusOr<Vector> DifferenceVector(const PairwiseComparison& c);

// Modal choice of the Gaussian utility model: X when beta.V >= 0, else Z.
absl::StatusOr<Choice> PredictChoice(const PreferenceVector& beta,
                                     const PairwiseComparison& c);

// Unchecked form for hot loops; `difference` is X - Z.
inline Choice ChoiceFromDifference(std::span<const double> beta,
                                   std::span<const double> difference) {
  return Dot(beta, difference) >= 0.0 ? Choice::kX : Choice::kZ;
}

// Finite entries and, when a bound is attached, ||beta||_1 <= bound + slack.
absl::Status CheckPreferenceVector(const PreferenceVector& beta);

struct CorpusDiagnostic {
  int64_t voter_id = -1;
  // Index of the offending record within the voter, or -1 for voter-level
  // and corpus-level problems.
  int64_t record_index = -1;
  std::string reason;
};

// Returns an empty list when the corpus is well formed.
std::vector<CorpusDiagnostic> ValidateCorpus(const Corpus& corpus);

// Status form of ValidateCorpus; the message lists the first diagnostics.
absl::Status CheckCorpus(const Corpus& corpus);

// Validates a single dataset against an expected dimension.
absl::Status CheckVoterDataset(const VoterDataset& dataset, int dimension);

std::string FormatDiagnostic(const CorpusDiagnostic& diagnostic);

}  // namespace dppref

#endif  // DPPREF_TYPES_H_
