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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppref/datagen.h"
#include "dppref/evaluation.h"
#include "dppref/experiment.h"
#include "dppref/functional_mechanism.h"
#include "dppref/inference.h"
#include "dppref/laplace.h"
#include "dppref/l1_ascent.h"
#include "dppref/mechanisms.h"
#include "dppref/normal.h"
#include "dppref/rng.h"

namespace py = pybind11;

namespace dppref {
namespace {

using Matrix = std::vector<Vector>;

// InvalidArgument and FailedPrecondition become ValueError, I/O failures
// OSError, anything else RuntimeError.
void ThrowIfError(const absl::Status& status) {
  if (status.ok()) return;
  const std::string message(status.message());
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      throw py::value_error(message);
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kNotFound:
      PyErr_SetString(PyExc_OSError, message.c_str());
      throw py::error_already_set();
    default:
      throw std::runtime_error(message);
  }
}

template <typename T>
T Unwrap(absl::StatusOr<T> value) {
  ThrowIfError(value.status());
  return *std::move(value);
}

VoterDataset MakeVoter(const Matrix& chosen, const Matrix& rejected,
                       int64_t voter_id = 0) {
  if (chosen.size() != rejected.size()) {
    throw py::value_error("chosen and rejected need the same number of rows");
  }
  VoterDataset voter;
  voter.voter_id = voter_id;
  for (size_t j = 0; j < chosen.size(); ++j) {
    voter.records.push_back({chosen[j], rejected[j]});
  }
  return voter;
}

std::vector<PreferenceVector> MakeBetas(const Matrix& betas,
                                        std::optional<double> bound) {
  std::vector<PreferenceVector> out;
  for (const Vector& b : betas) out.push_back({b, bound});
  return out;
}

SolverConfig MakeSolver(int max_iters, double tol_step) {
  SolverConfig config;
  config.max_iters = max_iters;
  config.tol_step = tol_step;
  return config;
}

py::dict FitToDict(const FitResult& fit) {
  py::dict d;
  d["beta"] = fit.beta.beta;
  d["objective"] = fit.final_objective;
  d["iterations"] = fit.iterations;
  d["converged"] = fit.converged;
  return d;
}

py::list CorpusToList(const Corpus& corpus) {
  py::list voters;
  for (const VoterDataset& v : corpus.voters) {
    Matrix chosen, rejected;
    for (const PairwiseComparison& r : v.records) {
      chosen.push_back(r.chosen);
      rejected.push_back(r.rejected);
    }
    py::dict d;
    d["voter_id"] = v.voter_id;
    d["chosen"] = chosen;
    d["rejected"] = rejected;
    voters.append(d);
  }
  return voters;
}

Corpus ListToCorpus(const py::list& voters) {
  Corpus corpus;
  for (const py::handle& item : voters) {
    const py::dict d = py::reinterpret_borrow<py::dict>(item);
    corpus.voters.push_back(MakeVoter(d["chosen"].cast<Matrix>(),
                                      d["rejected"].cast<Matrix>(),
                                      d["voter_id"].cast<int64_t>()));
  }
  if (!corpus.voters.empty() && !corpus.voters.front().records.empty()) {
    corpus.dimension =
        static_cast<int>(corpus.voters.front().records.front().chosen.size());
  }
  ThrowIfError(CheckCorpus(corpus));
  corpus.preprocessed = IsWithinPreprocessBound(corpus);
  return corpus;
}

std::vector<PrivacyBudget> Budgets(const std::vector<double>& epsilons) {
  std::vector<PrivacyBudget> out;
  for (double e : epsilons) out.push_back(Unwrap(PrivacyBudget::Create(e)));
  return out;
}

py::dict ReleaseToDict(const DistributedRelease& release) {
  Matrix outputs;
  for (const PreferenceVector& p : release.voter_outputs) outputs.push_back(p.beta);
  py::dict d;
  d["voter_ids"] = release.voter_ids;
  d["voter_outputs"] = outputs;
  d["mean"] = release.mean.beta;
  return d;
}

}  // namespace
}  // namespace dppref

PYBIND11_MODULE(_dppref, m) {
  using namespace dppref;
  m.doc() = "Differentially private aggregation of pairwise-choice preferences";

  m.def("std_normal_cdf", &StdNormalCdf, py::arg("z"));
  m.def("log_std_normal_cdf", &LogStdNormalCdf, py::arg("z"));

  m.def(
      "project_l1_ball",
      [](const Vector& v, double bound) { return Unwrap(ProjectL1Ball(v, bound)); },
      py::arg("v"), py::arg("bound"), "Euclidean projection onto the l1 ball.");

  m.def(
      "log_likelihood",
      [](const Vector& beta, const Matrix& chosen, const Matrix& rejected) {
        return Unwrap(LogLikelihood({beta, std::nullopt}, MakeVoter(chosen, rejected)));
      },
      py::arg("beta"), py::arg("chosen"), py::arg("rejected"));

  m.def(
      "log_likelihood_gradient",
      [](const Vector& beta, const Matrix& chosen, const Matrix& rejected) {
        return Unwrap(
            LogLikelihoodGradient({beta, std::nullopt}, MakeVoter(chosen, rejected)));
      },
      py::arg("beta"), py::arg("chosen"), py::arg("rejected"));

  m.def(
      "fit_voter",
      [](const Matrix& chosen, const Matrix& rejected, double bound,
         int max_iters, double tol_step) {
        return FitToDict(Unwrap(FitVoter(MakeVoter(chosen, rejected), bound,
                                         MakeSolver(max_iters, tol_step))));
      },
      py::arg("chosen"), py::arg("rejected"), py::arg("bound") = 2.0,
      py::arg("max_iters") = 5000, py::arg("tol_step") = 1e-8,
      "l1-constrained maximum likelihood fit of one voter.");

  m.def(
      "aggregate_mean",
      [](const Matrix& betas) {
        return Unwrap(AggregateMean(MakeBetas(betas, std::nullopt))).beta;
      },
      py::arg("betas"));

  m.def(
      "sample_laplace",
      [](double scale, int count, uint64_t seed) {
        RngStream rng(seed, -1, StreamPurpose::kCentralNoise);
        Vector out(count);
        for (double& x : out) x = SampleLaplace(scale, rng);
        return out;
      },
      py::arg("scale"), py::arg("count"), py::arg("seed"));

  m.def("centralized_sensitivity", &CentralizedSensitivity, py::arg("bound"),
        py::arg("num_voters"));
  m.def("voter_sensitivity", &VoterSensitivity, py::arg("bound"));
  m.def("functional_sensitivity_bound", &FunctionalSensitivityBound,
        py::arg("dimension"));
  m.def(
      "utility_bound_alpha",
      [](double bound, int num_voters, double epsilon, int dimension, double gamma) {
        return Unwrap(UtilityBoundAlpha(bound, num_voters, epsilon, dimension, gamma));
      },
      py::arg("bound"), py::arg("num_voters"), py::arg("epsilon"),
      py::arg("dimension"), py::arg("gamma"));

  m.def(
      "vlcp_release",
      [](const Matrix& betas, double epsilon, double bound, uint64_t seed) {
        RngStream rng(seed, -1, StreamPurpose::kCentralNoise);
        return Unwrap(VlcpRelease(MakeBetas(betas, bound),
                                  Unwrap(PrivacyBudget::Create(epsilon)), bound, rng))
            .beta;
      },
      py::arg("betas"), py::arg("epsilon"), py::arg("bound"), py::arg("seed"),
      "Centralized Laplace release of the mean of fitted parameters.");

  m.def(
      "vldp_release",
      [](const Matrix& betas, const std::vector<double>& epsilons, double bound,
         uint64_t seed) {
        std::vector<int64_t> ids(betas.size());
        for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int64_t>(i);
        return ReleaseToDict(Unwrap(VldpRelease(MakeBetas(betas, bound), ids,
                                                Budgets(epsilons), bound, seed)));
      },
      py::arg("betas"), py::arg("epsilons"), py::arg("bound"), py::arg("seed"),
      "Per-voter Laplace perturbation followed by averaging.");

  m.def(
      "taylor_coefficients",
      [](const Matrix& chosen, const Matrix& rejected) {
        const NoisyObjective o =
            Unwrap(TaylorCoefficients(MakeVoter(chosen, rejected)));
        py::dict d;
        d["constant"] = o.constant;
        d["linear"] = o.linear;
        Matrix q(o.dimension, Vector(o.dimension));
        for (int k = 0; k < o.dimension; ++k) {
          for (int l = 0; l < o.dimension; ++l) q[k][l] = o.Q(k, l);
        }
        d["quadratic"] = q;
        return d;
      },
      py::arg("chosen"), py::arg("rejected"),
      "Second-order expansion of the log-likelihood at zero.");

  m.def(
      "rldp_release",
      [](const py::list& voters, const std::vector<double>& epsilons,
         double bound, uint64_t seed) {
        return ReleaseToDict(Unwrap(RldpRelease(ListToCorpus(voters),
                                                Budgets(epsilons), bound,
                                                SolverConfig{}, seed)));
      },
      py::arg("voters"), py::arg("epsilons"), py::arg("bound"), py::arg("seed"),
      "Functional-mechanism release; needs preprocessed voters.");

  m.def(
      "generate_corpus",
      [](int num_voters, int num_records, int dimension, uint64_t seed) {
        SocietySpec spec;
        spec.num_voters = num_voters;
        spec.num_records = num_records;
        spec.dimension = dimension;
        spec.seed = seed;
        const Society society = Unwrap(GenerateSociety(spec));
        const Corpus corpus = Unwrap(GenerateCorpus(spec, society));
        Matrix betas;
        for (const PreferenceVector& b : society.betas) betas.push_back(b.beta);
        py::dict d;
        d["voters"] = CorpusToList(corpus);
        d["betas"] = betas;
        d["mean"] = society.mean;
        return d;
      },
      py::arg("num_voters"), py::arg("num_records"), py::arg("dimension"),
      py::arg("seed"));

  m.def(
      "preprocess",
      [](const py::list& voters) {
        return CorpusToList(PreprocessScale(ListToCorpus(voters)));
      },
      py::arg("voters"), "Clip every alternative to l2 norm 1/2.");

  m.def(
      "assign_privacy_groups",
      [](const std::vector<int64_t>& voter_ids, double f_c, double f_m,
         double eps_c, double eps_m, double eps_l, uint64_t seed) {
        PersonalizedSpec spec{f_c, f_m, eps_c, eps_m, eps_l};
        RngStream rng(seed, -1, StreamPurpose::kPrivacyGroups);
        py::list out;
        for (const PrivacyAssignment& a :
             Unwrap(AssignPrivacyGroups(voter_ids, spec, rng))) {
          out.append(py::make_tuple(a.voter_id, PrivacyGroupName(a.group), a.epsilon));
        }
        return out;
      },
      py::arg("voter_ids"), py::arg("f_c") = 0.54, py::arg("f_m") = 0.36,
      py::arg("eps_c") = 0.01, py::arg("eps_m") = 0.2, py::arg("eps_l") = 1.0,
      py::arg("seed") = 0);

  m.def(
      "accuracy",
      [](const Vector& reference, const Vector& noisy, int num_scenarios,
         uint64_t seed) {
        const TestScenarioSet set = Unwrap(GenerateTestScenarios(
            static_cast<int>(reference.size()), num_scenarios, seed));
        return Unwrap(Accuracy({reference, std::nullopt}, {noisy, std::nullopt}, set));
      },
      py::arg("reference"), py::arg("noisy"), py::arg("num_scenarios") = 10000,
      py::arg("seed") = 0,
      "Fraction of random scenario pairs on which both parameters agree.");

  m.def(
      "run_sweep",
      [](const std::string& config_json, int jobs) {
        const ExperimentConfig config = Unwrap(ParseExperimentConfig(config_json));
        absl::StatusOr<std::vector<SweepRow>> result;
        {
          py::gil_scoped_release release;
          result = RunSweep(config, {.jobs = jobs, .timing = false});
        }
        const std::vector<SweepRow> rows = Unwrap(std::move(result));
        py::list out;
        for (const SweepRow& r : rows) {
          py::dict d;
          d["mechanism"] = MechanismName(r.mechanism);
          d["epsilon_spec"] = r.epsilon_spec;
          d["N"] = r.num_voters;
          d["n"] = r.num_records;
          d["d"] = r.dimension;
          d["B"] = r.bound;
          d["trial"] = r.trial;
          d["accuracy"] = r.accuracy;
          d["accuracy_ratio"] = r.accuracy_ratio;
          d["linf_error"] = r.linf_error;
          out.append(d);
        }
        return out;
      },
      py::arg("config_json"), py::arg("jobs") = 1,
      "Runs an experiment sweep from a JSON config string.");
}
