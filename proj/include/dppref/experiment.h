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

#ifndef DPPREF_EXPERIMENT_H_
#define DPPREF_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppref/datagen.h"
#include "dppref/l1_ascent.h"

namespace dppref {

enum class Mechanism { kVlcp, kVldp, kRldpFm };

std::string MechanismName(Mechanism mechanism);
absl::StatusOr<Mechanism> ParseMechanism(std::string_view name);

// Shortest decimal text that parses back to the same double.
std::string FormatShortest(double x);

// Label written to the epsilon_spec column: the number itself for a
// universal epsilon, "pers:fc=..;fm=..;ec=..;em=..;el=.." for a group spec.
std::string PersonalizedLabel(const PersonalizedSpec& spec);

struct ExperimentConfig {
  uint64_t seed = 0;
  // Grid axes. Each accepts a scalar or a list in the JSON form.
  std::vector<int> num_voters = {100};
  std::vector<int> num_records = {50};
  std::vector<int> dimensions = {10};
  std::vector<double> bounds = {2.0};
  std::vector<Mechanism> mechanisms;
  std::vector<double> epsilons;
  std::vector<PersonalizedSpec> personalized;
  int trials = 20;
  int test_scenarios = 10000;
  SolverConfig solver;
  // When set, every trial uses this ingested corpus instead of synthetic data;
  // N, n and d then come from the file and the ratio column is NaN.
  std::optional<std::string> corpus_path;

  // Checks grid values and the personalized specs.
  absl::Status Validate() const;
  // Validate() plus the requirements of a sweep: a mechanism and a privacy
  // setting usable by each mechanism.
  absl::Status ValidateForSweep() const;
};

// Strict JSON parsing: unknown keys and wrongly typed values are errors.
// `seed` is mandatory.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view json);
absl::StatusOr<ExperimentConfig> ReadExperimentConfig(const std::string& path);

// JSON object with optional keys f_c, f_m, eps_c, eps_m, eps_l.
absl::StatusOr<PersonalizedSpec> ParsePersonalizedSpec(std::string_view json);
absl::StatusOr<PersonalizedSpec> ReadPersonalizedSpec(const std::string& path);

struct SweepRow {
  Mechanism mechanism = Mechanism::kVlcp;
  std::string epsilon_spec;
  int num_voters = 0;
  int num_records = 0;
  int dimension = 0;
  double bound = 0.0;
  int trial = 0;
  // Agreement with the non-private mean of the fitted parameters.
  double accuracy = 0.0;
  // Agreement with the generating mean, relative to the non-private mean's.
  double accuracy_ratio = 0.0;
  double linf_error = 0.0;
  double runtime_ms = 0.0;
};

struct SweepOptions {
  int jobs = 1;
  // Records wall-clock time per row. Off by default so that output files are
  // byte-identical across runs.
  bool timing = false;
};

// Rows ordered by (cell index, trial), independent of `jobs`.
absl::StatusOr<std::vector<SweepRow>> RunSweep(const ExperimentConfig& config,
                                               const SweepOptions& options);

void WriteResultsCsv(std::ostream& out, const std::vector<SweepRow>& rows);
absl::StatusOr<std::vector<SweepRow>> ParseResultsCsv(std::istream& in);
absl::StatusOr<std::vector<SweepRow>> ReadResultsCsv(const std::string& path);

struct PlotPoint {
  double x = 0.0;
  std::string series;
  double mean = 0.0;
  double stderr = 0.0;
};

std::vector<std::string> FigureIds();

// Aggregates rows to (x, series, mean, stderr) for one figure layout. Points
// are sorted by series then x.
absl::StatusOr<std::vector<PlotPoint>> PlotData(
    const std::vector<SweepRow>& rows, std::string_view figure_id);

void WritePlotCsv(std::ostream& out, const std::vector<PlotPoint>& points);

}  // namespace dppref

#endif  // DPPREF_EXPERIMENT_H_
