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

#include "dppref/types.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dppref {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy parameter must be positive and finite, got ",
                     epsilon));
  }
  return PrivacyBudget(epsilon);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

double L1Norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += std::abs(x);
  return sum;
}

double L2Norm(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

double LInfNorm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double LInfDistance(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double L1Distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
  return sum;
}

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

absl::StatusOr<Vector> DifferenceVector(const PairwiseComparison& c) {
  if (c.chosen.size() != c.rejected.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension mismatch: chosen has ", c.chosen.size(),
                     " features, rejected has ", c.rejected.size()));
  }
  Vector v(c.chosen.size());
  for (size_t k = 0; k < v.size(); ++k) v[k] = c.chosen[k] - c.rejected[k];
  return v;
}

absl::StatusOr<Choice> PredictChoice(const PreferenceVector& beta,
                                     const PairwiseComparison& c) {
  absl::StatusOr<Vector> v = DifferenceVector(c);
  if (!v.ok()) return v.status();
  if (v->size() != beta.beta.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension mismatch: beta has ", beta.beta.size(),
                     " entries, comparison has ", v->size()));
  }
  if (!AllFinite(beta.beta)) {
    return absl::InvalidArgumentError("beta has non-finite entries");
  }
  return ChoiceFromDifference(beta.beta, *v);
}

absl::Status CheckPreferenceVector(const PreferenceVector& beta) {
  if (!AllFinite(beta.beta)) {
    return absl::InvalidArgumentError("preference vector has non-finite entries");
  }
  if (beta.l1_bound.has_value()) {
    const double norm = L1Norm(beta.beta);
    if (norm > *beta.l1_bound + kL1BoundSlack) {
      return absl::FailedPreconditionError(
          absl::StrCat("preference vector has l1 norm ", norm,
                       " above its bound ", *beta.l1_bound));
    }
  }
  return absl::OkStatus();
}

namespace {

void CheckRecords(const VoterDataset& voter, int dimension,
                  std::vector<CorpusDiagnostic>& out) {
  if (voter.records.empty()) {
    out.push_back({voter.voter_id, -1, "voter has no records"});
    return;
  }
  for (size_t j = 0; j < voter.records.size(); ++j) {
    const PairwiseComparison& r = voter.records[j];
    const auto record = static_cast<int64_t>(j);
    if (static_cast<int>(r.chosen.size()) != dimension ||
        static_cast<int>(r.rejected.size()) != dimension) {
      out.push_back({voter.voter_id, record,
                     absl::StrCat("dimension mismatch: expected ", dimension,
                                  ", got chosen=", r.chosen.size(),
                                  " rejected=", r.rejected.size())});
      continue;
    }
    if (!AllFinite(r.chosen) || !AllFinite(r.rejected)) {
      out.push_back({voter.voter_id, record, "non-finite feature value"});
    }
  }
}

}  // namespace

std::vector<CorpusDiagnostic> ValidateCorpus(const Corpus& corpus) {
  std::vector<CorpusDiagnostic> out;
  if (corpus.voters.empty()) {
    out.push_back({-1, -1, "corpus has no voters"});
    return out;
  }
  if (corpus.dimension < 1 || corpus.dimension > kMaxDimension) {
    out.push_back({-1, -1,
                   absl::StrCat("dimension ", corpus.dimension,
                                " outside [1, ", kMaxDimension, "]")});
    return out;
  }
  for (const VoterDataset& voter : corpus.voters) {
    CheckRecords(voter, corpus.dimension, out);
  }
  return out;
}

std::string FormatDiagnostic(const CorpusDiagnostic& d) {
  if (d.voter_id < 0) return d.reason;
  if (d.record_index < 0) return absl::StrCat("voter ", d.voter_id, ": ", d.reason);
  return absl::StrCat("voter ", d.voter_id, " record ", d.record_index, ": ",
                      d.reason);
}

absl::Status CheckCorpus(const Corpus& corpus) {
  const std::vector<CorpusDiagnostic> diagnostics = ValidateCorpus(corpus);
  if (diagnostics.empty()) return absl::OkStatus();
  constexpr size_t kShown = 5;
  std::vector<std::string> lines;
  for (size_t i = 0; i < std::min(kShown, diagnostics.size()); ++i) {
    lines.push_back(FormatDiagnostic(diagnostics[i]));
  }
  std::string message = absl::StrJoin(lines, "; ");
  if (diagnostics.size() > kShown) {
    absl::StrAppend(&message, " (", diagnostics.size() - kShown, " more)");
  }
  return absl::InvalidArgumentError(message);
}

absl::Status CheckVoterDataset(const VoterDataset& dataset, int dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension ", dimension, " outside [1, ", kMaxDimension,
                     "]"));
  }
  std::vector<CorpusDiagnostic> out;
  CheckRecords(dataset, dimension, out);
  if (out.empty()) return absl::OkStatus();
  return absl::InvalidArgumentError(FormatDiagnostic(out.front()));
}

}  // namespace dppref
