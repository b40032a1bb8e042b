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

#ifndef DPPREF_INFERENCE_H_
#define DPPREF_INFERENCE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dppref/l1_ascent.h"
#include "dppref/types.h"

namespace dppref {

struct FitResult {
  PreferenceVector beta;  // carries l1_bound = B
  double final_objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
};

// The probit log-likelihood sum_j ln Phi(beta . V_j) of one voter, with the
// difference vectors precomputed.
class VoterLikelihood {
 public:
  static absl::StatusOr<VoterLikelihood> Create(const VoterDataset& dataset);

  int dimension() const { return dimension_; }
  int num_records() const { return num_records_; }

  double Value(std::span<const double> beta) const;
  void Gradient(std::span<const double> beta, std::span<double> out) const;

 private:
  VoterLikelihood(int dimension, int num_records, Vector differences)
      : dimension_(dimension),
        num_records_(num_records),
        differences_(std::move(differences)) {}

  std::span<const double> Row(int j) const {
    return std::span<const double>(differences_).subspan(
        static_cast<size_t>(j) * dimension_, dimension_);
  }

  int dimension_;
  int num_records_;
  Vector differences_;  // row-major n x d
};

// L(beta, D) = sum_j ln Phi(beta . (X_j - Z_j)).
absl::StatusOr<double> LogLikelihood(const PreferenceVector& beta,
                                     const VoterDataset& dataset);

// sum_j [phi(beta . V_j) / Phi(beta . V_j)] V_j.
absl::StatusOr<Vector> LogLikelihoodGradient(const PreferenceVector& beta,
                                             const VoterDataset& dataset);

// argmax of L(., D) over ||beta||_1 <= bound, by projected gradient ascent
// from zero. Non-convergence is reported through FitResult::converged.
absl::StatusOr<FitResult> FitVoter(const VoterDataset& dataset, double bound,
                                   const SolverConfig& config = {});

// Componentwise mean. The result keeps the largest input bound, since the
// mean of vectors in a ball stays in it.
absl::StatusOr<PreferenceVector> AggregateMean(
    std::span<const PreferenceVector> betas);

}  // namespace dppref

#endif  // DPPREF_INFERENCE_H_
