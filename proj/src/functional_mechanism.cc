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

#include "dppref/functional_mechanism.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "Eigen/Dense"
#include "absl/strings/str_cat.h"
#include "dppref/laplace.h"

namespace dppref {
namespace {

// Headroom on ||V||_2 <= 1 for values clipped to exactly 1/2 per alternative.
constexpr double kNormSlack = 1e-12;

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> AsMatrix(const NoisyObjective& f) {
  return Eigen::Map<const RowMajorMatrix>(f.quadratic.data(), f.dimension,
                                          f.dimension);
}

}  // namespace

double NoisyObjective::Evaluate(std::span<const double> beta) const {
  double value = constant + Dot(linear, beta);
  for (int k = 0; k < dimension; ++k) {
    double row = 0.0;
    for (int l = 0; l < dimension; ++l) row += Q(k, l) * beta[l];
    value += beta[k] * row;
  }
  return value;
}

void NoisyObjective::Gradient(std::span<const double> beta,
                              std::span<double> out) const {
  for (int k = 0; k < dimension; ++k) {
    double row = 0.0;
    for (int l = 0; l < dimension; ++l) row += Q(k, l) * beta[l];
    out[k] = linear[k] + 2.0 * row;
  }
}

Vector NoisyObjective::Coefficients(bool include_constant) const {
  Vector out;
  out.reserve(NumCoefficients());
  if (include_constant) out.push_back(constant);
  out.insert(out.end(), linear.begin(), linear.end());
  for (int k = 0; k < dimension; ++k) {
    for (int l = k; l < dimension; ++l) out.push_back(MonomialCoefficient(k, l));
  }
  return out;
}

absl::StatusOr<NoisyObjective> TaylorCoefficients(const VoterDataset& dataset) {
  if (dataset.records.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("voter ", dataset.voter_id, " has no records"));
  }
  const int d = static_cast<int>(dataset.records.front().chosen.size());
  if (absl::Status s = CheckVoterDataset(dataset, d); !s.ok()) return s;

  NoisyObjective f;
  f.dimension = d;
  f.constant = static_cast<double>(dataset.records.size()) * kLogPhiAtZero;
  f.linear.assign(d, 0.0);
  f.quadratic.assign(static_cast<size_t>(d) * d, 0.0);
  Vector v(d);
  for (size_t j = 0; j < dataset.records.size(); ++j) {
    const PairwiseComparison& r = dataset.records[j];
    for (int k = 0; k < d; ++k) v[k] = r.chosen[k] - r.rejected[k];
    if (L2Norm(v) > 1.0 + kNormSlack) {
      return absl::FailedPreconditionError(absl::StrCat(
          "voter ", dataset.voter_id, " record ", j,
          " has ||X - Z||_2 > 1; preprocess the corpus so every alternative "
          "has l2 norm <= 1/2"));
    }
    for (int k = 0; k < d; ++k) {
      f.linear[k] += kLogPhiSlopeAtZero * v[k];
      for (int l = 0; l < d; ++l) {
        f.quadratic[static_cast<size_t>(k) * d + l] +=
            0.5 * kLogPhiCurvatureAtZero * v[k] * v[l];
      }
    }
  }
  return f;
}

double FunctionalSensitivityBound(int dimension) {
  const double d = dimension;
  return 2.0 * (std::sqrt(2.0 * d / std::numbers::pi) + d / std::numbers::pi);
}

NoisyObjective PerturbCoefficients(const NoisyObjective& objective,
                                   double scale, RngStream& rng) {
  NoisyObjective noisy = objective;
  const int d = noisy.dimension;
  noisy.constant += SampleLaplace(scale, rng);
  for (int k = 0; k < d; ++k) noisy.linear[k] += SampleLaplace(scale, rng);
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      const double noise = SampleLaplace(scale, rng);
      if (k == l) {
        noisy.quadratic[static_cast<size_t>(k) * d + k] += noise;
      } else {
        // The monomial coefficient is 2 Q[k][l]; split the draw evenly.
        noisy.quadratic[static_cast<size_t>(k) * d + l] += 0.5 * noise;
        noisy.quadratic[static_cast<size_t>(l) * d + k] += 0.5 * noise;
      }
    }
  }
  return noisy;
}

NoisyObjective RepairConcavity(const NoisyObjective& objective) {
  NoisyObjective repaired = objective;
  const int d = objective.dimension;
  const RowMajorMatrix q = AsMatrix(objective);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q);
  Eigen::VectorXd eigenvalues = solver.eigenvalues().cwiseMin(0.0);
  const Eigen::MatrixXd& u = solver.eigenvectors();
  Eigen::MatrixXd clipped = u * eigenvalues.asDiagonal() * u.transpose();
  clipped = 0.5 * (clipped + clipped.transpose()).eval();
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      repaired.quadratic[static_cast<size_t>(k) * d + l] = clipped(k, l);
    }
  }
  return repaired;
}

double MaxEigenvalue(const NoisyObjective& objective) {
  const RowMajorMatrix q = AsMatrix(objective);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      q, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

FitResult MaximizeObjective(const NoisyObjective& objective, double bound,
                            const SolverConfig& config) {
  // Searching without the constant keeps the path independent of it.
  NoisyObjective shape = objective;
  shape.constant = 0.0;
  SmoothObjective smooth{
      [&shape](std::span<const double> b) { return shape.Evaluate(b); },
      [&shape](std::span<const double> b, std::span<double> g) {
        shape.Gradient(b, g);
      }};
  const Vector zero(objective.dimension, 0.0);
  AscentResult ascent = MaximizeOnL1Ball(smooth, zero, bound, config);

  FitResult result;
  result.beta.beta = std::move(ascent.point);
  result.beta.l1_bound = bound;
  result.final_objective = ascent.objective + objective.constant;
  result.iterations = ascent.iterations;
  result.converged = ascent.converged;
  result.objective_trace = std::move(ascent.objective_trace);
  for (double& v : result.objective_trace) v += objective.constant;
  return result;
}

absl::StatusOr<FitResult> RldpFunctionalFit(const VoterDataset& dataset,
                                            PrivacyBudget epsilon, double bound,
                                            const SolverConfig& config,
                                            RngStream& rng) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    return absl::InvalidArgumentError(
        absl::StrCat("norm bound must be positive and finite, got ", bound));
  }
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  absl::StatusOr<NoisyObjective> expansion = TaylorCoefficients(dataset);
  if (!expansion.ok()) return expansion.status();
  const double scale =
      FunctionalSensitivityBound(expansion->dimension) / epsilon.epsilon();
  const NoisyObjective noisy =
      RepairConcavity(PerturbCoefficients(*expansion, scale, rng));
  return MaximizeObjective(noisy, bound, config);
}

absl::StatusOr<DistributedRelease> RldpRelease(
    const Corpus& corpus, std::span<const PrivacyBudget> epsilons,
    double bound, const SolverConfig& config, uint64_t seed) {
  if (!corpus.preprocessed) {
    return absl::FailedPreconditionError(
        "the functional mechanism needs a preprocessed corpus (every "
        "alternative with l2 norm <= 1/2); run PreprocessScale first");
  }
  if (epsilons.size() != corpus.voters.size()) {
    return absl::InvalidArgumentError("need one epsilon per voter");
  }
  DistributedRelease release;
  for (size_t i = 0; i < corpus.voters.size(); ++i) {
    const VoterDataset& voter = corpus.voters[i];
    RngStream rng(seed, voter.voter_id, StreamPurpose::kObjectiveNoise);
    absl::StatusOr<FitResult> fit =
        RldpFunctionalFit(voter, epsilons[i], bound, config, rng);
    if (!fit.ok()) return fit.status();
    release.voter_ids.push_back(voter.voter_id);
    release.voter_outputs.push_back(std::move(fit->beta));
  }
  absl::StatusOr<PreferenceVector> mean = AggregateMean(release.voter_outputs);
  if (!mean.ok()) return mean.status();
  release.mean = *std::move(mean);
  return release;
}

}  // namespace dppref
