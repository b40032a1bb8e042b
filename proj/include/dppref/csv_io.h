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

#ifndef DPPREF_CSV_IO_H_
#define DPPREF_CSV_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dppref/datagen.h"
#include "dppref/types.h"

namespace dppref {

// 17 significant digits, so parsing the text recovers the same double.
std::string FormatDouble(double x);

// Splits one CSV line on commas. Quoting is not supported.
std::vector<std::string_view> SplitCsvLine(std::string_view line);

// Corpus CSV:
//   voter_id,record_id,x_0,...,x_{d-1},z_0,...,z_{d-1}
// Each row says the voter chose X over Z. Voters keep the order of their
// first row, records keep file order. Errors cite line numbers.
absl::StatusOr<Corpus> ParseCorpusCsv(std::istream& in);
absl::StatusOr<Corpus> ReadCorpusCsv(const std::string& path);
void WriteCorpusCsv(std::ostream& out, const Corpus& corpus);

// One fitted voter in the betas CSV:
//   voter_id,converged,objective,beta_0,...,beta_{d-1}
struct BetaRow {
  int64_t voter_id = 0;
  bool converged = false;
  double objective = 0.0;
  Vector beta;
};

absl::StatusOr<std::vector<BetaRow>> ParseBetasCsv(std::istream& in);
absl::StatusOr<std::vector<BetaRow>> ReadBetasCsv(const std::string& path);
void WriteBetasCsv(std::ostream& out, const std::vector<BetaRow>& rows);

// Generating parameters: voter_id,beta_0,...,beta_{d-1}, then a row whose
// voter_id is "m" holding the society mean.
void WriteTruthCsv(std::ostream& out, const Society& society);

// File helpers that map open failures to absl::UnavailableError.
absl::Status WriteTextFile(const std::string& path, const std::string& text);
absl::StatusOr<std::string> ReadTextFile(const std::string& path);

}  // namespace dppref

#endif  // DPPREF_CSV_IO_H_
