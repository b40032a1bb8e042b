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

// Command-line front end: generate, fit, preprocess, release, experiment and
// plotdata. Exit codes: 0 ok, 2 invalid input, 3 I/O failure, 4 numerical
// failure.

#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppref/csv_io.h"
#include "dppref/datagen.h"
#include "dppref/experiment.h"
#include "dppref/functional_mechanism.h"
#include "dppref/inference.h"
#include "dppref/mechanisms.h"
#include "dppref/rng.h"

namespace dppref {
namespace {

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      return 2;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kPermissionDenied:
      return 3;
    default:
      return 4;
  }
}

int Report(const absl::Status& status) {
  if (!status.ok()) std::cerr << "dppref: " << status.message() << "\n";
  return ExitCode(status);
}

struct SolverFlags {
  SolverConfig config;

  void Register(CLI::App* app) {
    app->add_option("--max-iters", config.max_iters, "Solver iteration cap");
    app->add_option("--step-init", config.step_init, "Initial ascent step");
    app->add_option("--armijo-c", config.armijo_c, "Armijo sufficient-increase constant");
    app->add_option("--armijo-shrink", config.armijo_shrink, "Backtracking factor");
    app->add_option("--tol-step", config.tol_step, "Step-size convergence tolerance");
  }
};

absl::StatusOr<int> SingleValue(const std::vector<int>& values, const char* key) {
  if (values.size() != 1) {
    return absl::InvalidArgumentError(
        std::string("generate needs a single value for '") + key + "'");
  }
  return values.front();
}

std::string DefaultTruthPath(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return out.substr(0, out.size() - suffix.size()) + ".truth.csv";
  }
  return out + ".truth.csv";
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string config;
  std::string out;
  std::string truth;
  std::optional<uint64_t> seed;
};

absl::Status RunGenerate(const GenerateArgs& args) {
  absl::StatusOr<ExperimentConfig> config = ReadExperimentConfig(args.config);
  if (!config.ok()) return config.status();
  SocietySpec spec;
  absl::StatusOr<int> N = SingleValue(config->num_voters, "N");
  if (!N.ok()) return N.status();
  absl::StatusOr<int> n = SingleValue(config->num_records, "n");
  if (!n.ok()) return n.status();
  absl::StatusOr<int> d = SingleValue(config->dimensions, "d");
  if (!d.ok()) return d.status();
  spec.num_voters = *N;
  spec.num_records = *n;
  spec.dimension = *d;
  spec.seed = args.seed.value_or(config->seed);

  absl::StatusOr<Society> society = GenerateSociety(spec);
  if (!society.ok()) return society.status();
  absl::StatusOr<Corpus> corpus = GenerateCorpus(spec, *society);
  if (!corpus.ok()) return corpus.status();

  std::ostringstream corpus_text, truth_text;
  WriteCorpusCsv(corpus_text, *corpus);
  WriteTruthCsv(truth_text, *society);
  if (absl::Status s = WriteTextFile(args.out, corpus_text.str()); !s.ok()) return s;
  return WriteTextFile(args.truth.empty() ? DefaultTruthPath(args.out) : args.truth,
                       truth_text.str());
}

// --- fit -------------------------------------------------------------------

struct FitArgs {
  std::string corpus;
  std::string out;
  double bound = 2.0;
  SolverFlags solver;
};

absl::Status RunFit(const FitArgs& args) {
  absl::StatusOr<Corpus> corpus = ReadCorpusCsv(args.corpus);
  if (!corpus.ok()) return corpus.status();
  std::vector<BetaRow> rows;
  int unconverged = 0;
  for (const VoterDataset& voter : corpus->voters) {
    absl::StatusOr<FitResult> fit = FitVoter(voter, args.bound, args.solver.config);
    if (!fit.ok()) return fit.status();
    if (!AllFinite(fit->beta.beta)) {
      return absl::InternalError("fit produced a non-finite parameter");
    }
    unconverged += fit->converged ? 0 : 1;
    rows.push_back({voter.voter_id, fit->converged, fit->final_objective,
                    std::move(fit->beta.beta)});
  }
  if (unconverged > 0) {
    std::cerr << "dppref: warning: " << unconverged
              << " voter fit(s) hit the iteration cap\n";
  }
  std::ostringstream text;
  WriteBetasCsv(text, rows);
  return WriteTextFile(args.out, text.str());
}

// --- preprocess ------------------------------------------------------------

struct PreprocessArgs {
  std::string corpus;
  std::string out;
};

absl::Status RunPreprocess(const PreprocessArgs& args) {
  absl::StatusOr<Corpus> corpus = ReadCorpusCsv(args.corpus);
  if (!corpus.ok()) return corpus.status();
  std::ostringstream text;
  WriteCorpusCsv(text, PreprocessScale(*corpus));
  return WriteTextFile(args.out, text.str());
}

// --- release ---------------------------------------------------------------

struct ReleaseArgs {
  std::string mechanism;
  std::string betas;
  std::string corpus;
  std::optional<double> epsilon;
  std::string personalized;
  uint64_t seed = 0;
  double bound = 2.0;
  bool no_noise = false;
  std::string out;
  SolverFlags solver;
};

struct ReleaseOutput {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::pair<std::string, Vector>> rows;
};

std::string FormatRelease(const ReleaseOutput& output, int dimension) {
  std::ostringstream out;
  for (const auto& [key, value] : output.metadata) {
    out << "# " << key << '=' << value << '\n';
  }
  out << "row";
  for (int k = 0; k < dimension; ++k) out << ",beta_" << k;
  out << '\n';
  for (const auto& [label, beta] : output.rows) {
    out << label;
    for (double v : beta) out << ',' << FormatDouble(v);
    out << '\n';
  }
  return out.str();
}

absl::StatusOr<std::vector<PrivacyBudget>> ReleaseBudgets(
    const ReleaseArgs& args, const std::vector<int64_t>& ids,
    std::string& label) {
  std::vector<PrivacyBudget> budgets;
  if (args.epsilon.has_value()) {
    absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Create(*args.epsilon);
    if (!b.ok()) return b.status();
    budgets.assign(ids.size(), *b);
    label = FormatShortest(*args.epsilon);
    return budgets;
  }
  absl::StatusOr<PersonalizedSpec> spec = ReadPersonalizedSpec(args.personalized);
  if (!spec.ok()) return spec.status();
  label = PersonalizedLabel(*spec);
  RngStream rng(args.seed, -1, StreamPurpose::kPrivacyGroups);
  absl::StatusOr<std::vector<PrivacyAssignment>> groups =
      AssignPrivacyGroups(ids, *spec, rng);
  if (!groups.ok()) return groups.status();
  for (const PrivacyAssignment& a : *groups) {
    absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Create(a.epsilon);
    if (!b.ok()) return b.status();
    budgets.push_back(*b);
  }
  return budgets;
}

absl::Status RunRelease(const ReleaseArgs& args) {
  absl::StatusOr<Mechanism> mechanism = ParseMechanism(args.mechanism);
  if (!mechanism.ok()) return mechanism.status();
  if (args.epsilon.has_value() == !args.personalized.empty()) {
    return absl::InvalidArgumentError(
        "give exactly one of --epsilon or --personalized");
  }
  if (*mechanism == Mechanism::kVlcp && !args.personalized.empty()) {
    return absl::InvalidArgumentError(
        "vlcp uses one universal epsilon; personalized budgets need vldp or "
        "rldp-fm");
  }
  const bool needs_corpus = *mechanism == Mechanism::kRldpFm;
  if (needs_corpus && args.corpus.empty()) {
    return absl::InvalidArgumentError(
        "rldp-fm perturbs each voter's objective and needs the records: pass "
        "--corpus, not --betas");
  }
  if (!needs_corpus && args.betas.empty()) {
    return absl::InvalidArgumentError(
        args.mechanism + " perturbs fitted parameters: pass --betas from "
                         "'dppref fit'");
  }

  ReleaseOutput output;
  output.metadata.push_back({"mechanism", MechanismName(*mechanism)});
  int dimension = 0;
  std::vector<int64_t> ids;
  std::vector<PreferenceVector> betas;
  Corpus corpus;
  if (needs_corpus) {
    absl::StatusOr<Corpus> read = ReadCorpusCsv(args.corpus);
    if (!read.ok()) return read.status();
    corpus = *std::move(read);
    corpus.preprocessed = IsWithinPreprocessBound(corpus);
    if (!corpus.preprocessed) {
      return absl::FailedPreconditionError(
          "rldp-fm needs every alternative to have l2 norm <= 1/2; run "
          "'dppref preprocess --corpus IN --out OUT' first");
    }
    dimension = corpus.dimension;
    for (const VoterDataset& v : corpus.voters) ids.push_back(v.voter_id);
  } else {
    absl::StatusOr<std::vector<BetaRow>> rows = ReadBetasCsv(args.betas);
    if (!rows.ok()) return rows.status();
    for (BetaRow& r : *rows) {
      ids.push_back(r.voter_id);
      betas.push_back({std::move(r.beta), args.bound});
    }
    dimension = betas.front().dimension();
  }

  std::string label;
  absl::StatusOr<std::vector<PrivacyBudget>> budgets =
      ReleaseBudgets(args, ids, label);
  if (!budgets.ok()) return budgets.status();
  output.metadata.push_back({"epsilon_spec", label});
  output.metadata.push_back({"seed", std::to_string(args.seed)});
  output.metadata.push_back({"bound", FormatDouble(args.bound)});

  switch (*mechanism) {
    case Mechanism::kVlcp: {
      const double sensitivity =
          CentralizedSensitivity(args.bound, static_cast<int>(betas.size()));
      output.metadata.push_back({"sensitivity", FormatDouble(sensitivity)});
      PreferenceVector released;
      if (args.no_noise) {
        for (const PreferenceVector& b : betas) {
          if (absl::Status s = CheckPreferenceVector(b); !s.ok()) return s;
        }
        absl::StatusOr<PreferenceVector> mean = AggregateMean(betas);
        if (!mean.ok()) return mean.status();
        released = *std::move(mean);
        output.metadata.push_back({"noise_scale", "0"});
      } else {
        RngStream rng(args.seed, -1, StreamPurpose::kCentralNoise);
        absl::StatusOr<PreferenceVector> out =
            VlcpRelease(betas, budgets->front(), args.bound, rng);
        if (!out.ok()) return out.status();
        released = *std::move(out);
        output.metadata.push_back(
            {"noise_scale", FormatDouble(sensitivity / budgets->front().epsilon())});
      }
      output.rows.push_back({"mean", std::move(released.beta)});
      break;
    }
    case Mechanism::kVldp:
    case Mechanism::kRldpFm: {
      const bool vldp = *mechanism == Mechanism::kVldp;
      const double sensitivity = vldp ? VoterSensitivity(args.bound)
                                      : FunctionalSensitivityBound(dimension);
      output.metadata.push_back({"sensitivity", FormatDouble(sensitivity)});
      output.metadata.push_back(
          {"noise_scale", args.no_noise ? "0" : "sensitivity/epsilon_i"});
      DistributedRelease release;
      if (args.no_noise) {
        release.voter_ids = ids;
        for (size_t i = 0; i < ids.size(); ++i) {
          if (vldp) {
            if (absl::Status s = CheckPreferenceVector(betas[i]); !s.ok()) return s;
            release.voter_outputs.push_back(betas[i]);
          } else {
            absl::StatusOr<NoisyObjective> objective =
                TaylorCoefficients(corpus.voters[i]);
            if (!objective.ok()) return objective.status();
            release.voter_outputs.push_back(
                MaximizeObjective(RepairConcavity(*objective), args.bound,
                                  args.solver.config)
                    .beta);
          }
        }
        absl::StatusOr<PreferenceVector> mean = AggregateMean(release.voter_outputs);
        if (!mean.ok()) return mean.status();
        release.mean = *std::move(mean);
      } else {
        absl::StatusOr<DistributedRelease> out =
            vldp ? VldpRelease(betas, ids, *budgets, args.bound, args.seed)
                 : RldpRelease(corpus, *budgets, args.bound, args.solver.config,
                               args.seed);
        if (!out.ok()) return out.status();
        release = *std::move(out);
      }
      for (size_t i = 0; i < release.voter_ids.size(); ++i) {
        output.rows.push_back({std::to_string(release.voter_ids[i]),
                               std::move(release.voter_outputs[i].beta)});
      }
      output.rows.push_back({"mean", std::move(release.mean.beta)});
      break;
    }
  }
  output.metadata.push_back({"private", args.no_noise ? "false" : "true"});
  for (const auto& [label_text, beta] : output.rows) {
    if (!AllFinite(beta)) return absl::InternalError("release is not finite");
  }
  return WriteTextFile(args.out, FormatRelease(output, dimension));
}

// --- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::optional<uint64_t> seed;
  int jobs = 1;
  bool timing = false;
};

absl::Status RunExperiment(const ExperimentArgs& args) {
  absl::StatusOr<ExperimentConfig> config = ReadExperimentConfig(args.config);
  if (!config.ok()) return config.status();
  if (args.seed.has_value()) config->seed = *args.seed;
  absl::StatusOr<std::vector<SweepRow>> rows =
      RunSweep(*config, {.jobs = args.jobs, .timing = args.timing});
  if (!rows.ok()) return rows.status();
  std::ostringstream text;
  WriteResultsCsv(text, *rows);
  return WriteTextFile(args.out, text.str());
}

// --- plotdata --------------------------------------------------------------

struct PlotArgs {
  std::string results;
  std::string figure;
  std::string out;
};

absl::Status RunPlot(const PlotArgs& args) {
  absl::StatusOr<std::vector<SweepRow>> rows = ReadResultsCsv(args.results);
  if (!rows.ok()) return rows.status();
  absl::StatusOr<std::vector<PlotPoint>> points = PlotData(*rows, args.figure);
  if (!points.ok()) return points.status();
  std::ostringstream text;
  WritePlotCsv(text, *points);
  return WriteTextFile(args.out, text.str());
}

}  // namespace
}  // namespace dppref

int main(int argc, char** argv) {
  using namespace dppref;
  CLI::App app{"Differentially private preference aggregation"};
  app.require_subcommand(1);

  GenerateArgs generate;
  CLI::App* gen = app.add_subcommand("generate", "Write a synthetic corpus and its truth file");
  gen->add_option("--config", generate.config, "Experiment config (JSON)")->required();
  gen->add_option("--out", generate.out, "Corpus CSV path")->required();
  gen->add_option("--truth", generate.truth, "Truth CSV path (default: <out>.truth.csv)");
  gen->add_option("--seed", generate.seed, "Override the config seed");

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit each voter's preference vector");
  fit_cmd->add_option("--corpus", fit.corpus, "Corpus CSV")->required();
  fit_cmd->add_option("--out", fit.out, "Betas CSV path")->required();
  fit_cmd->add_option("--bound", fit.bound, "l1 norm bound B")->capture_default_str();
  fit.solver.Register(fit_cmd);

  PreprocessArgs preprocess;
  CLI::App* pre = app.add_subcommand(
      "preprocess", "Clip every alternative to l2 norm 1/2 (needed by rldp-fm)");
  pre->add_option("--corpus", preprocess.corpus, "Corpus CSV")->required();
  pre->add_option("--out", preprocess.out, "Output corpus CSV")->required();

  ReleaseArgs release;
  CLI::App* rel = app.add_subcommand("release", "Release a private society parameter");
  rel->add_option("--mechanism", release.mechanism, "vlcp, vldp or rldp-fm")->required();
  rel->add_option("--betas", release.betas, "Betas CSV (vlcp, vldp)");
  rel->add_option("--corpus", release.corpus, "Preprocessed corpus CSV (rldp-fm)");
  rel->add_option("--epsilon", release.epsilon, "Universal privacy parameter");
  rel->add_option("--personalized", release.personalized, "Personalized group spec (JSON)");
  rel->add_option("--seed", release.seed, "Noise seed")->required();
  rel->add_option("--bound", release.bound, "l1 norm bound B")->capture_default_str();
  rel->add_option("--out", release.out, "Release CSV path")->required();
  rel->add_flag("--no-noise", release.no_noise,
                "Testing only: skip the noise and mark the output private=false");
  release.solver.Register(rel);

  ExperimentArgs experiment;
  CLI::App* exp = app.add_subcommand("experiment", "Run a sweep and write results CSV");
  exp->add_option("--config", experiment.config, "Experiment config (JSON)")->required();
  exp->add_option("--out", experiment.out, "Results CSV path")->required();
  exp->add_option("--seed", experiment.seed, "Override the config seed");
  exp->add_option("--jobs", experiment.jobs, "Worker threads")->check(CLI::PositiveNumber);
  exp->add_flag("--timing", experiment.timing,
                "Fill runtime_ms (makes output run-dependent)");

  PlotArgs plot;
  CLI::App* plot_cmd = app.add_subcommand("plotdata", "Aggregate results for one figure");
  plot_cmd->add_option("--results", plot.results, "Results CSV")->required();
  plot_cmd->add_option("--figure", plot.figure, "Figure id, e.g. fig1a")->required();
  plot_cmd->add_option("--out", plot.out, "Plot CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  absl::Status status;
  if (*gen) status = RunGenerate(generate);
  else if (*fit_cmd) status = RunFit(fit);
  else if (*pre) status = RunPreprocess(preprocess);
  else if (*rel) status = RunRelease(release);
  else if (*exp) status = RunExperiment(experiment);
  else if (*plot_cmd) status = RunPlot(plot);
  return Report(status);
}
