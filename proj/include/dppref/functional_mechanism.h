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

#ifndef DPPREF_FUNCTIONAL_MECHANISM_H_
#define DPPREF_FUNCTIONAL_MECHANISM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dppref/inference.h"
#include "dppref/mechanisms.h"
#include "dppref/rng.h"
#include "dppref/types.h"

namespace dppref {

// Taylor coefficients of ln Phi at 0 up to second order.
inline constexpr double kLogPhiAtZero = -0.69314718055994530942;  // ln(1/2)
inline constexpr double kLogPhiSlopeAtZero = 0.79788456080286535588;  // sqrt(2/pi)
inline constexpr double kLogPhiCurvatureAtZero = -0.63661977236758134308;  // -2/pi

// A degree-2 polynomial in beta:
//   f(beta) = constant + linear . beta + beta' Q beta,
// with Q symmetric, stored row-major. In monomial terms the coefficient of
// beta[k]^2 is Q[k][k] and the coefficient of beta[k] beta[l] (k < l) is
// 2 Q[k][l].
struct NoisyObjective {
  int dimension = 0;
  double constant = 0.0;
  Vector linear;
  Vector quadratic;

  double Q(int k, int l) const {
    return quadratic[static_cast<size_t>(k) * dimension + l];
  }
  double MonomialCoefficient(int k, int l) const {
    return k == l ? Q(k, k) : 2.0 * Q(k, l);
  }
  double Evaluate(std::span<const double> beta) const;
  // linear + 2 Q beta.
  void Gradient(std::span<const double> beta, std::span<double> out) const;

  // Coefficients in the perturbation order: constant, linear by index, then
  // the upper-triangle monomials row by row. With include_constant = false
  // the first entry is dropped.
  Vector Coefficients(bool include_constant = true) const;

  // Number of perturbed coefficients: 1 + d + d(d+1)/2.
  int NumCoefficients() const {
    return 1 + dimension + dimension * (dimension + 1) / 2;
  }
};

// Second-order expansion at 0 of sum_j ln Phi(beta . V_j):
//   n ln(1/2) + sqrt(2/pi) sum_j beta.V_j - (1/pi) sum_j (beta.V_j)^2.
// Requires every ||V_j||_2 <= 1, which PreprocessScale guarantees.
absl::StatusOr<NoisyObjective> TaylorCoefficients(const VoterDataset& dataset);

// Upper bound 2 (sqrt(2d/pi) + d/pi) on the l1 change of the coefficients
// when one record of a preprocessed dataset is replaced.
double FunctionalSensitivityBound(int dimension);

// Adds one Lap(scale) draw per monomial in the order of Coefficients().
NoisyObjective PerturbCoefficients(const NoisyObjective& objective,
                                   double scale, RngStream& rng);

// Clips the positive eigenvalues of Q to zero so the polynomial is concave.
NoisyObjective RepairConcavity(const NoisyObjective& objective);

// Largest eigenvalue of Q.
double MaxEigenvalue(const NoisyObjective& objective);

// argmax of a concave objective over ||beta||_1 <= bound. The constant term
// does not enter the search.
FitResult MaximizeObjective(const NoisyObjective& objective, double bound,
                            const SolverConfig& config);

// Functional mechanism for one voter: expand, perturb every coefficient with
// Lap(FunctionalSensitivityBound(d) / epsilon), repair concavity, maximize
// over the l1 ball.
absl::StatusOr<FitResult> RldpFunctionalFit(const VoterDataset& dataset,
                                            PrivacyBudget epsilon, double bound,
                                            const SolverConfig& config,
                                            RngStream& rng);

// RldpFunctionalFit for every voter of a preprocessed corpus, with per-voter
// epsilons and (seed, voter id) noise streams, then the plain mean.
absl::StatusOr<DistributedRelease> RldpRelease(
    const Corpus& corpus, std::span<const PrivacyBudget> epsilons,
    double bound, const SolverConfig& config, uint64_t seed);

}  // namespace dppref

#endif  // DPPREF_FUNCTIONAL_MECHANISM_H_
