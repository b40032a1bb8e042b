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

#include "dppref/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dppref/csv_io.h"
#include "dppref/evaluation.h"
#include "dppref/functional_mechanism.h"
#include "dppref/inference.h"
#include "dppref/mechanisms.h"
#include "dppref/rng.h"
#include "nlohmann/json.hpp"
#include "string_compat.h"

namespace dppref {
namespace {

using Json = nlohmann::json;

constexpr char kResultsHeader[] =
    "mechanism,epsilon_spec,N,n,d,B,trial,accuracy,accuracy_ratio,linf_error,"
    "runtime_ms";
constexpr char kPersonalizedPrefix[] = "pers:";

// Tags keeping the per-trial seeds of different consumers apart.
enum SeedTag : uint64_t {
  kDataTag = 1,
  kScenarioTag = 2,
  kNoiseTag = 3,
  kGroupTag = 4,
};

absl::Status KeyError(std::string_view key, std::string_view expected) {
  return absl::InvalidArgumentError(
      absl::StrCat("config key '", Av(key), "' must be ", Av(expected)));
}

absl::Status CheckKeys(const Json& object, const std::set<std::string>& allowed,
                       std::string_view where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown key '", key, "' in ", Av(where), "; allowed: ",
          absl::StrJoin(allowed, ", ")));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<int> GetInt(const Json& value, std::string_view key) {
  if (!value.is_number_integer()) return KeyError(key, "an integer");
  const int64_t v = value.get<int64_t>();
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    return KeyError(key, "an integer in int range");
  }
  return static_cast<int>(v);
}

absl::StatusOr<double> GetDouble(const Json& value, std::string_view key) {
  if (!value.is_number()) return KeyError(key, "a number");
  return value.get<double>();
}

absl::StatusOr<std::vector<int>> GetIntList(const Json& value,
                                            std::string_view key) {
  std::vector<int> out;
  if (value.is_array()) {
    for (const Json& item : value) {
      absl::StatusOr<int> v = GetInt(item, key);
      if (!v.ok()) return KeyError(key, "an integer or a list of integers");
      out.push_back(*v);
    }
  } else {
    absl::StatusOr<int> v = GetInt(value, key);
    if (!v.ok()) return KeyError(key, "an integer or a list of integers");
    out.push_back(*v);
  }
  return out;
}

absl::StatusOr<std::vector<double>> GetDoubleList(const Json& value,
                                                  std::string_view key) {
  std::vector<double> out;
  if (value.is_array()) {
    for (const Json& item : value) {
      if (!item.is_number()) return KeyError(key, "a number or a list of numbers");
      out.push_back(item.get<double>());
    }
  } else {
    if (!value.is_number()) return KeyError(key, "a number or a list of numbers");
    out.push_back(value.get<double>());
  }
  return out;
}

absl::StatusOr<PersonalizedSpec> PersonalizedFromJson(const Json& object) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError("personalized spec must be a JSON object");
  }
  absl::Status keys = CheckKeys(
      object, {"f_c", "f_m", "eps_c", "eps_m", "eps_l"}, "personalized spec");
  if (!keys.ok()) return keys;
  PersonalizedSpec spec;
  const std::pair<const char*, double*> fields[] = {
      {"f_c", &spec.f_conservative},   {"f_m", &spec.f_moderate},
      {"eps_c", &spec.eps_conservative}, {"eps_m", &spec.eps_moderate},
      {"eps_l", &spec.eps_liberal}};
  for (const auto& [key, target] : fields) {
    if (!object.contains(key)) continue;
    absl::StatusOr<double> v = GetDouble(object.at(key), key);
    if (!v.ok()) return v.status();
    *target = *v;
  }
  absl::Status valid = spec.Validate();
  if (!valid.ok()) return valid;
  return spec;
}

absl::StatusOr<Json> ParseJson(std::string_view text) {
  Json j = Json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) return absl::InvalidArgumentError("malformed JSON");
  return j;
}

absl::Status SolverFromJson(const Json& object, SolverConfig& solver) {
  if (!object.is_object()) return KeyError("solver", "an object");
  absl::Status keys = CheckKeys(
      object, {"max_iters", "step_init", "armijo_c", "armijo_shrink", "tol_step"},
      "solver");
  if (!keys.ok()) return keys;
  if (object.contains("max_iters")) {
    absl::StatusOr<int> v = GetInt(object.at("max_iters"), "max_iters");
    if (!v.ok()) return v.status();
    solver.max_iters = *v;
  }
  const std::pair<const char*, double*> fields[] = {
      {"step_init", &solver.step_init},
      {"armijo_c", &solver.armijo_c},
      {"armijo_shrink", &solver.armijo_shrink},
      {"tol_step", &solver.tol_step}};
  for (const auto& [key, target] : fields) {
    if (!object.contains(key)) continue;
    absl::StatusOr<double> v = GetDouble(object.at(key), key);
    if (!v.ok()) return v.status();
    *target = *v;
  }
  return solver.Validate();
}

std::optional<PersonalizedSpec> ParsePersonalizedLabel(std::string_view label) {
  if (label.substr(0, sizeof(kPersonalizedPrefix) - 1) != kPersonalizedPrefix) {
    return std::nullopt;
  }
  label.remove_prefix(sizeof(kPersonalizedPrefix) - 1);
  PersonalizedSpec spec;
  for (absl::string_view piece : absl::StrSplit(Av(label), ';')) {
    const std::string_view part = Sv(piece);
    const size_t eq = part.find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    const std::string_view key = part.substr(0, eq);
    const std::string value(part.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') return std::nullopt;
    if (key == "fc") spec.f_conservative = v;
    else if (key == "fm") spec.f_moderate = v;
    else if (key == "ec") spec.eps_conservative = v;
    else if (key == "em") spec.eps_moderate = v;
    else if (key == "el") spec.eps_liberal = v;
    else return std::nullopt;
  }
  return spec;
}

std::optional<double> ParseUniformLabel(const std::string& label) {
  char* end = nullptr;
  const double v = std::strtod(label.c_str(), &end);
  if (label.empty() || end == label.c_str() || *end != '\0') return std::nullopt;
  return v;
}

// One privacy column entry of the grid.
struct PrivacySetting {
  std::optional<double> epsilon;
  std::optional<PersonalizedSpec> personalized;
  std::string label;
};

struct Cell {
  Mechanism mechanism;
  const PrivacySetting* privacy;
  int num_voters;
  int num_records;
  int dimension;
  double bound;
};

// Everything shared by the cells of one (N, n, d, B, trial) unit.
struct UnitData {
  Corpus corpus;
  std::optional<Corpus> preprocessed;
  std::vector<int64_t> voter_ids;
  std::vector<PreferenceVector> fits;
  PreferenceVector nonprivate;
  std::optional<PreferenceVector> ground;
  TestScenarioSet scenarios;
};

struct Unit {
  int num_voters;
  int num_records;
  int dimension;
  double bound;
  int trial;
  std::vector<size_t> cells;
};

absl::StatusOr<std::vector<PrivacyBudget>> VoterBudgets(
    const PrivacySetting& privacy, const std::vector<int64_t>& ids,
    uint64_t seed, int trial) {
  std::vector<PrivacyBudget> budgets;
  if (privacy.epsilon.has_value()) {
    absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Create(*privacy.epsilon);
    if (!b.ok()) return b.status();
    budgets.assign(ids.size(), *b);
    return budgets;
  }
  // The same group draw is reused by every spec in the trial.
  RngStream rng(DeriveSeed(seed, {kGroupTag, static_cast<uint64_t>(trial)}), -1,
                StreamPurpose::kPrivacyGroups);
  absl::StatusOr<std::vector<PrivacyAssignment>> groups =
      AssignPrivacyGroups(ids, *privacy.personalized, rng);
  if (!groups.ok()) return groups.status();
  for (const PrivacyAssignment& a : *groups) {
    absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Create(a.epsilon);
    if (!b.ok()) return b.status();
    budgets.push_back(*b);
  }
  return budgets;
}

absl::StatusOr<UnitData> PrepareUnit(const ExperimentConfig& config,
                                     const Unit& unit,
                                     const std::optional<Corpus>& ingested,
                                     bool needs_preprocessed) {
  UnitData data;
  if (ingested.has_value()) {
    data.corpus = *ingested;
  } else {
    SocietySpec spec;
    spec.num_voters = unit.num_voters;
    spec.num_records = unit.num_records;
    spec.dimension = unit.dimension;
    spec.seed = DeriveSeed(config.seed,
                           {kDataTag, static_cast<uint64_t>(unit.trial),
                            static_cast<uint64_t>(unit.num_voters),
                            static_cast<uint64_t>(unit.num_records),
                            static_cast<uint64_t>(unit.dimension)});
    absl::StatusOr<Society> society = GenerateSociety(spec);
    if (!society.ok()) return society.status();
    absl::StatusOr<Corpus> corpus = GenerateCorpus(spec, *society);
    if (!corpus.ok()) return corpus.status();
    data.corpus = *std::move(corpus);
    absl::StatusOr<PreferenceVector> ground = AggregateMean(society->betas);
    if (!ground.ok()) return ground.status();
    data.ground = *std::move(ground);
  }
  if (needs_preprocessed) data.preprocessed = PreprocessScale(data.corpus);

  for (const VoterDataset& voter : data.corpus.voters) {
    data.voter_ids.push_back(voter.voter_id);
    absl::StatusOr<FitResult> fit = FitVoter(voter, unit.bound, config.solver);
    if (!fit.ok()) return fit.status();
    data.fits.push_back(std::move(fit->beta));
  }
  absl::StatusOr<PreferenceVector> mean = AggregateMean(data.fits);
  if (!mean.ok()) return mean.status();
  data.nonprivate = *std::move(mean);

  absl::StatusOr<TestScenarioSet> scenarios = GenerateTestScenarios(
      unit.dimension, config.test_scenarios,
      DeriveSeed(config.seed, {kScenarioTag, static_cast<uint64_t>(unit.trial),
                               static_cast<uint64_t>(unit.dimension)}));
  if (!scenarios.ok()) return scenarios.status();
  data.scenarios = *std::move(scenarios);
  return data;
}

absl::StatusOr<SweepRow> RunCell(const ExperimentConfig& config,
                                 const Cell& cell, const Unit& unit,
                                 const UnitData& data, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<std::vector<PrivacyBudget>> budgets =
      VoterBudgets(*cell.privacy, data.voter_ids, config.seed, unit.trial);
  if (!budgets.ok()) return budgets.status();
  // Noise is shared across privacy settings of a trial (common random
  // numbers), which keeps curves over epsilon smooth.
  const uint64_t noise_seed =
      DeriveSeed(config.seed, {kNoiseTag, static_cast<uint64_t>(unit.trial),
                               static_cast<uint64_t>(cell.mechanism)});

  PreferenceVector released;
  switch (cell.mechanism) {
    case Mechanism::kVlcp: {
      RngStream rng(noise_seed, -1, StreamPurpose::kCentralNoise);
      absl::StatusOr<PreferenceVector> out =
          VlcpRelease(data.fits, budgets->front(), cell.bound, rng);
      if (!out.ok()) return out.status();
      released = *std::move(out);
      break;
    }
    case Mechanism::kVldp: {
      absl::StatusOr<DistributedRelease> out = VldpRelease(
          data.fits, data.voter_ids, *budgets, cell.bound, noise_seed);
      if (!out.ok()) return out.status();
      released = std::move(out->mean);
      break;
    }
    case Mechanism::kRldpFm: {
      absl::StatusOr<DistributedRelease> out =
          RldpRelease(*data.preprocessed, *budgets, cell.bound, config.solver,
                      noise_seed);
      if (!out.ok()) return out.status();
      released = std::move(out->mean);
      break;
    }
  }

  SweepRow row;
  row.mechanism = cell.mechanism;
  row.epsilon_spec = cell.privacy->label;
  row.num_voters = cell.num_voters;
  row.num_records = cell.num_records;
  row.dimension = cell.dimension;
  row.bound = cell.bound;
  row.trial = unit.trial;
  absl::StatusOr<double> accuracy =
      Accuracy(data.nonprivate, released, data.scenarios);
  if (!accuracy.ok()) return accuracy.status();
  row.accuracy = *accuracy;
  row.accuracy_ratio = std::numeric_limits<double>::quiet_NaN();
  if (data.ground.has_value()) {
    absl::StatusOr<double> ratio =
        AccuracyRatio(*data.ground, data.nonprivate, released, data.scenarios);
    if (ratio.ok()) row.accuracy_ratio = *ratio;
  }
  row.linf_error = LInfDistance(released.beta, data.nonprivate.beta);
  if (!std::isfinite(row.linf_error)) {
    return absl::InternalError("released parameter is not finite");
  }
  if (timing) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return row;
}

int MaxRecords(const Corpus& corpus) {
  size_t n = 0;
  for (const VoterDataset& v : corpus.voters) n = std::max(n, v.records.size());
  return static_cast<int>(n);
}

}  // namespace

std::string MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kVlcp:
      return "vlcp";
    case Mechanism::kVldp:
      return "vldp";
    case Mechanism::kRldpFm:
      return "rldp-fm";
  }
  return "unknown";
}

absl::StatusOr<Mechanism> ParseMechanism(std::string_view name) {
  if (name == "vlcp") return Mechanism::kVlcp;
  if (name == "vldp") return Mechanism::kVldp;
  if (name == "rldp-fm") return Mechanism::kRldpFm;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", Av(name), "'; expected vlcp, vldp or rldp-fm"));
}

std::string FormatShortest(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

std::string PersonalizedLabel(const PersonalizedSpec& spec) {
  return absl::StrCat(kPersonalizedPrefix, "fc=", FormatShortest(spec.f_conservative),
                      ";fm=", FormatShortest(spec.f_moderate),
                      ";ec=", FormatShortest(spec.eps_conservative),
                      ";em=", FormatShortest(spec.eps_moderate),
                      ";el=", FormatShortest(spec.eps_liberal));
}

absl::Status ExperimentConfig::Validate() const {
  if (num_voters.empty() || num_records.empty() || dimensions.empty() ||
      bounds.empty()) {
    return absl::InvalidArgumentError("grid lists N, n, d and B must be non-empty");
  }
  for (int v : num_voters) {
    if (v < 1) return absl::InvalidArgumentError(absl::StrCat("N must be >= 1, got ", v));
  }
  for (int v : num_records) {
    if (v < 1) return absl::InvalidArgumentError(absl::StrCat("n must be >= 1, got ", v));
  }
  for (int v : dimensions) {
    if (v < 1 || v > kMaxDimension) {
      return absl::InvalidArgumentError(
          absl::StrCat("d must be in [1, ", kMaxDimension, "], got ", v));
    }
  }
  for (double b : bounds) {
    if (!std::isfinite(b) || b <= 0.0) {
      return absl::InvalidArgumentError(absl::StrCat("B must be positive, got ", b));
    }
  }
  for (double e : epsilons) {
    if (!PrivacyBudget::Create(e).ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("epsilons must be positive and finite, got ", e));
    }
  }
  for (const PersonalizedSpec& p : personalized) {
    absl::Status s = p.Validate();
    if (!s.ok()) return s;
  }
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (test_scenarios < 1) {
    return absl::InvalidArgumentError("test_scenarios must be >= 1");
  }
  return solver.Validate();
}

absl::Status ExperimentConfig::ValidateForSweep() const {
  absl::Status s = Validate();
  if (!s.ok()) return s;
  if (mechanisms.empty()) {
    return absl::InvalidArgumentError("config needs a 'mechanism'");
  }
  if (epsilons.empty() && personalized.empty()) {
    return absl::InvalidArgumentError(
        "config needs 'epsilons' or 'personalized'");
  }
  for (Mechanism m : mechanisms) {
    if (m == Mechanism::kVlcp && epsilons.empty()) {
      return absl::InvalidArgumentError(
          "vlcp uses one universal epsilon; add 'epsilons' to the config");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view text) {
  absl::StatusOr<Json> parsed = ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const Json& j = *parsed;
  if (!j.is_object()) return absl::InvalidArgumentError("config must be a JSON object");
  absl::Status keys =
      CheckKeys(j,
                {"seed", "d", "n", "N", "B", "mechanism", "epsilons", "trials",
                 "test_scenarios", "personalized", "solver", "corpus"},
                "config");
  if (!keys.ok()) return keys;

  ExperimentConfig config;
  if (!j.contains("seed")) return absl::InvalidArgumentError("config key 'seed' is mandatory");
  const Json& seed = j.at("seed");
  if (seed.is_number_unsigned()) {
    config.seed = seed.get<uint64_t>();
  } else {
    return KeyError("seed", "a non-negative integer");
  }

  const std::pair<const char*, std::vector<int>*> int_lists[] = {
      {"N", &config.num_voters}, {"n", &config.num_records}, {"d", &config.dimensions}};
  for (const auto& [key, target] : int_lists) {
    if (!j.contains(key)) continue;
    absl::StatusOr<std::vector<int>> v = GetIntList(j.at(key), key);
    if (!v.ok()) return v.status();
    *target = *std::move(v);
  }
  if (j.contains("B")) {
    absl::StatusOr<std::vector<double>> v = GetDoubleList(j.at("B"), "B");
    if (!v.ok()) return v.status();
    config.bounds = *std::move(v);
  }
  if (j.contains("epsilons")) {
    absl::StatusOr<std::vector<double>> v = GetDoubleList(j.at("epsilons"), "epsilons");
    if (!v.ok()) return v.status();
    config.epsilons = *std::move(v);
  }
  if (j.contains("mechanism")) {
    const Json& m = j.at("mechanism");
    std::vector<std::string> names;
    if (m.is_string()) {
      names.push_back(m.get<std::string>());
    } else if (m.is_array()) {
      for (const Json& item : m) {
        if (!item.is_string()) return KeyError("mechanism", "a name or a list of names");
        names.push_back(item.get<std::string>());
      }
    } else {
      return KeyError("mechanism", "a name or a list of names");
    }
    for (const std::string& name : names) {
      absl::StatusOr<Mechanism> mech = ParseMechanism(name);
      if (!mech.ok()) return mech.status();
      config.mechanisms.push_back(*mech);
    }
  }
  if (j.contains("personalized")) {
    const Json& p = j.at("personalized");
    if (p.is_array()) {
      for (const Json& item : p) {
        absl::StatusOr<PersonalizedSpec> spec = PersonalizedFromJson(item);
        if (!spec.ok()) return spec.status();
        config.personalized.push_back(*spec);
      }
    } else {
      absl::StatusOr<PersonalizedSpec> spec = PersonalizedFromJson(p);
      if (!spec.ok()) return spec.status();
      config.personalized.push_back(*spec);
    }
  }
  if (j.contains("trials")) {
    absl::StatusOr<int> v = GetInt(j.at("trials"), "trials");
    if (!v.ok()) return v.status();
    config.trials = *v;
  }
  if (j.contains("test_scenarios")) {
    absl::StatusOr<int> v = GetInt(j.at("test_scenarios"), "test_scenarios");
    if (!v.ok()) return v.status();
    config.test_scenarios = *v;
  }
  if (j.contains("solver")) {
    absl::Status s = SolverFromJson(j.at("solver"), config.solver);
    if (!s.ok()) return s;
  }
  if (j.contains("corpus")) {
    if (!j.at("corpus").is_string()) return KeyError("corpus", "a file path");
    if (j.contains("N") || j.contains("n") || j.contains("d")) {
      return absl::InvalidArgumentError(
          "'corpus' fixes N, n and d; remove those keys");
    }
    config.corpus_path = j.at("corpus").get<std::string>();
  }
  absl::Status valid = config.Validate();
  if (!valid.ok()) return valid;
  return config;
}

absl::StatusOr<ExperimentConfig> ReadExperimentConfig(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<ExperimentConfig> config = ParseExperimentConfig(*text);
  if (!config.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", config.status().message()));
  }
  return config;
}

absl::StatusOr<PersonalizedSpec> ParsePersonalizedSpec(std::string_view text) {
  absl::StatusOr<Json> parsed = ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  return PersonalizedFromJson(*parsed);
}

absl::StatusOr<PersonalizedSpec> ReadPersonalizedSpec(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<PersonalizedSpec> spec = ParsePersonalizedSpec(*text);
  if (!spec.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", spec.status().message()));
  }
  return spec;
}

absl::StatusOr<std::vector<SweepRow>> RunSweep(const ExperimentConfig& config,
                                               const SweepOptions& options) {
  absl::Status valid = config.ValidateForSweep();
  if (!valid.ok()) return valid;
  if (options.jobs < 1) return absl::InvalidArgumentError("jobs must be >= 1");

  std::optional<Corpus> ingested;
  std::vector<int> voters = config.num_voters;
  std::vector<int> records = config.num_records;
  std::vector<int> dims = config.dimensions;
  if (config.corpus_path.has_value()) {
    absl::StatusOr<Corpus> corpus = ReadCorpusCsv(*config.corpus_path);
    if (!corpus.ok()) return corpus.status();
    voters = {static_cast<int>(corpus->voters.size())};
    records = {MaxRecords(*corpus)};
    dims = {corpus->dimension};
    ingested = *std::move(corpus);
  }

  std::vector<PrivacySetting> settings;
  for (double e : config.epsilons) settings.push_back({e, std::nullopt, FormatShortest(e)});
  for (const PersonalizedSpec& p : config.personalized) {
    settings.push_back({std::nullopt, p, PersonalizedLabel(p)});
  }

  std::vector<Cell> cells;
  for (Mechanism m : config.mechanisms) {
    for (const PrivacySetting& s : settings) {
      if (m == Mechanism::kVlcp && !s.epsilon.has_value()) continue;
      for (int N : voters) {
        for (int n : records) {
          for (int d : dims) {
            for (double B : config.bounds) cells.push_back({m, &s, N, n, d, B});
          }
        }
      }
    }
  }

  // Units share generated data and fits across mechanisms and privacy settings.
  std::vector<Unit> units;
  std::map<std::tuple<int, int, int, double>, std::vector<size_t>> by_data;
  for (size_t c = 0; c < cells.size(); ++c) {
    by_data[{cells[c].num_voters, cells[c].num_records, cells[c].dimension,
             cells[c].bound}]
        .push_back(c);
  }
  for (const auto& [key, members] : by_data) {
    for (int t = 0; t < config.trials; ++t) {
      units.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                       std::get<3>(key), t, members});
    }
  }

  std::vector<absl::StatusOr<std::vector<std::pair<size_t, SweepRow>>>> results(
      units.size(), std::vector<std::pair<size_t, SweepRow>>{});
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t u = next++; u < units.size(); u = next++) {
      const Unit& unit = units[u];
      bool needs_preprocessed = false;
      for (size_t c : unit.cells) {
        needs_preprocessed |= cells[c].mechanism == Mechanism::kRldpFm;
      }
      absl::StatusOr<UnitData> data =
          PrepareUnit(config, unit, ingested, needs_preprocessed);
      if (!data.ok()) {
        results[u] = data.status();
        continue;
      }
      std::vector<std::pair<size_t, SweepRow>> rows;
      for (size_t c : unit.cells) {
        absl::StatusOr<SweepRow> row =
            RunCell(config, cells[c], unit, *data, options.timing);
        if (!row.ok()) {
          results[u] = row.status();
          break;
        }
        rows.emplace_back(c, *std::move(row));
      }
      if (results[u].ok()) results[u] = std::move(rows);
    }
  };
  const int jobs = std::min<int>(options.jobs, static_cast<int>(units.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<std::pair<size_t, SweepRow>> gathered;
  for (auto& r : results) {
    if (!r.ok()) return r.status();
    for (auto& entry : *r) gathered.push_back(std::move(entry));
  }
  std::sort(gathered.begin(), gathered.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second.trial) < std::tie(b.first, b.second.trial);
  });
  std::vector<SweepRow> rows;
  rows.reserve(gathered.size());
  for (auto& entry : gathered) rows.push_back(std::move(entry.second));
  return rows;
}

void WriteResultsCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kResultsHeader << '\n';
  for (const SweepRow& r : rows) {
    out << MechanismName(r.mechanism) << ',' << r.epsilon_spec << ','
        << r.num_voters << ',' << r.num_records << ',' << r.dimension << ','
        << FormatDouble(r.bound) << ',' << r.trial << ','
        << FormatDouble(r.accuracy) << ',' << FormatDouble(r.accuracy_ratio)
        << ',' << FormatDouble(r.linf_error) << ','
        << FormatDouble(r.runtime_ms) << '\n';
  }
}

absl::StatusOr<std::vector<SweepRow>> ParseResultsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("results file is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) {
    return absl::InvalidArgumentError(
        absl::StrCat("line 1: expected header '", kResultsHeader, "'"));
  }
  std::vector<SweepRow> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string_view> f = SplitCsvLine(line);
    if (f.size() != 11) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected 11 fields, got ", f.size()));
    }
    SweepRow r;
    absl::StatusOr<Mechanism> m = ParseMechanism(f[0]);
    if (!m.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": ", m.status().message()));
    }
    r.mechanism = *m;
    r.epsilon_spec = std::string(f[1]);
    auto parse_int = [&](std::string_view s, int& out) {
      const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
      return res.ec == std::errc() && res.ptr == s.data() + s.size();
    };
    auto parse_double = [&](std::string_view s, double& out) {
      const std::string copy(s);
      char* end = nullptr;
      out = std::strtod(copy.c_str(), &end);
      return !copy.empty() && *end == '\0';
    };
    if (!parse_int(f[2], r.num_voters) || !parse_int(f[3], r.num_records) ||
        !parse_int(f[4], r.dimension) || !parse_double(f[5], r.bound) ||
        !parse_int(f[6], r.trial) || !parse_double(f[7], r.accuracy) ||
        !parse_double(f[8], r.accuracy_ratio) ||
        !parse_double(f[9], r.linf_error) || !parse_double(f[10], r.runtime_ms)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": malformed numeric field"));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

absl::StatusOr<std::vector<SweepRow>> ReadResultsCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  absl::StatusOr<std::vector<SweepRow>> rows = ParseResultsCsv(in);
  if (!rows.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", rows.status().message()));
  }
  return rows;
}

namespace {

enum class XAxis { kEpsilon, kDimension, kBound, kFc, kEc, kEm };
enum class SeriesKey { kRecords, kVoters, kMechanism, kEpsilon };

struct FigureLayout {
  const char* id;
  std::optional<Mechanism> mechanism;
  std::optional<int> num_voters;
  XAxis x;
  SeriesKey series;
  bool ratio;
};

const std::vector<FigureLayout>& Layouts() {
  static const std::vector<FigureLayout> kLayouts = {
      {"fig1a", Mechanism::kVlcp, 50, XAxis::kEpsilon, SeriesKey::kRecords, false},
      {"fig1b", Mechanism::kVlcp, 100, XAxis::kEpsilon, SeriesKey::kRecords, false},
      {"fig2a", Mechanism::kVldp, 50, XAxis::kEpsilon, SeriesKey::kRecords, false},
      {"fig2b", Mechanism::kVldp, 100, XAxis::kEpsilon, SeriesKey::kRecords, false},
      {"fig3a", Mechanism::kRldpFm, 50, XAxis::kEpsilon, SeriesKey::kRecords, false},
      {"fig3b", Mechanism::kRldpFm, 100, XAxis::kEpsilon, SeriesKey::kRecords, false},
      {"fig4a", std::nullopt, 50, XAxis::kEpsilon, SeriesKey::kMechanism, false},
      {"fig4b", std::nullopt, 100, XAxis::kEpsilon, SeriesKey::kMechanism, false},
      {"fig5a", Mechanism::kVlcp, std::nullopt, XAxis::kDimension, SeriesKey::kEpsilon, false},
      {"fig5b", Mechanism::kRldpFm, std::nullopt, XAxis::kDimension, SeriesKey::kEpsilon, false},
      {"fig6a", Mechanism::kRldpFm, std::nullopt, XAxis::kFc, SeriesKey::kVoters, false},
      {"fig6b", Mechanism::kRldpFm, std::nullopt, XAxis::kEc, SeriesKey::kVoters, false},
      {"fig6c", Mechanism::kRldpFm, std::nullopt, XAxis::kEm, SeriesKey::kVoters, false},
      {"fig8", std::nullopt, std::nullopt, XAxis::kBound, SeriesKey::kMechanism, false},
      {"fig9a", Mechanism::kRldpFm, std::nullopt, XAxis::kEc, SeriesKey::kVoters, false},
      {"fig9b", Mechanism::kRldpFm, std::nullopt, XAxis::kEm, SeriesKey::kVoters, false},
      {"fig10a", std::nullopt, std::nullopt, XAxis::kEpsilon, SeriesKey::kMechanism, true},
      {"fig10b", std::nullopt, std::nullopt, XAxis::kEpsilon, SeriesKey::kMechanism, true},
  };
  return kLayouts;
}

bool UsesPersonalized(XAxis x) {
  return x == XAxis::kFc || x == XAxis::kEc || x == XAxis::kEm;
}

}  // namespace

std::vector<std::string> FigureIds() {
  std::vector<std::string> ids;
  for (const FigureLayout& l : Layouts()) ids.push_back(l.id);
  return ids;
}

absl::StatusOr<std::vector<PlotPoint>> PlotData(
    const std::vector<SweepRow>& rows, std::string_view figure_id) {
  const FigureLayout* layout = nullptr;
  for (const FigureLayout& l : Layouts()) {
    if (figure_id == l.id) layout = &l;
  }
  if (layout == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown figure id '", Av(figure_id),
                     "'; valid ids: ", absl::StrJoin(FigureIds(), ", ")));
  }

  // (series order, series label, x) -> values
  std::map<std::tuple<double, std::string, double>, std::vector<double>> groups;
  for (const SweepRow& r : rows) {
    if (layout->mechanism.has_value() && r.mechanism != *layout->mechanism) continue;
    if (layout->num_voters.has_value() && r.num_voters != *layout->num_voters) continue;
    const std::optional<double> eps = ParseUniformLabel(r.epsilon_spec);
    const std::optional<PersonalizedSpec> pers =
        ParsePersonalizedLabel(r.epsilon_spec);
    if (UsesPersonalized(layout->x) ? !pers.has_value() : !eps.has_value()) continue;

    double x = 0.0;
    switch (layout->x) {
      case XAxis::kEpsilon: x = *eps; break;
      case XAxis::kDimension: x = r.dimension; break;
      case XAxis::kBound: x = r.bound; break;
      case XAxis::kFc: x = pers->f_conservative; break;
      case XAxis::kEc: x = pers->eps_conservative; break;
      case XAxis::kEm: x = pers->eps_moderate; break;
    }
    double order = 0.0;
    std::string label;
    switch (layout->series) {
      case SeriesKey::kRecords:
        order = r.num_records;
        label = absl::StrCat("n=", r.num_records);
        break;
      case SeriesKey::kVoters:
        order = r.num_voters;
        label = absl::StrCat("N=", r.num_voters);
        break;
      case SeriesKey::kMechanism:
        order = static_cast<double>(r.mechanism);
        label = MechanismName(r.mechanism);
        break;
      case SeriesKey::kEpsilon:
        order = eps.value_or(0.0);
        label = absl::StrCat("eps=", r.epsilon_spec);
        break;
    }
    const double value = layout->ratio ? r.accuracy_ratio : r.accuracy;
    if (std::isnan(value)) continue;
    groups[{order, label, x}].push_back(value);
  }

  std::vector<PlotPoint> points;
  for (const auto& [key, values] : groups) {
    const Summary s = Summarize(values);
    points.push_back({std::get<2>(key), std::get<1>(key), s.mean, s.stderr});
  }
  return points;
}

void WritePlotCsv(std::ostream& out, const std::vector<PlotPoint>& points) {
  out << "x,series,mean,stderr\n";
  for (const PlotPoint& p : points) {
    out << FormatDouble(p.x) << ',' << p.series << ',' << FormatDouble(p.mean)
        << ',' << FormatDouble(p.stderr) << '\n';
  }
}

}  // namespace dppref
