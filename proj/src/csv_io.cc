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

#include "dppref/csv_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "string_compat.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace dppref {
namespace {

absl::Status LineError(int line, std::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", Av(message)));
}

bool NextLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

absl::StatusOr<double> ParseReal(std::string_view cell, std::string_view column,
                                 int line) {
  double value = 0.0;
  if (!absl::SimpleAtod(Av(TrimAscii(cell)), &value) ||
      !std::isfinite(value)) {
    return LineError(line, absl::StrCat("column '", Av(column),
                                        "' is not a finite number: '", Av(cell),
                                        "'"));
  }
  return value;
}

absl::StatusOr<int64_t> ParseId(std::string_view cell, std::string_view column,
                                int line) {
  int64_t value = 0;
  if (!absl::SimpleAtoi(Av(TrimAscii(cell)), &value) ||
      value < 0) {
    return LineError(line, absl::StrCat("column '", Av(column),
                                        "' is not a non-negative integer: '",
                                        Av(cell), "'"));
  }
  return value;
}

std::string ColumnName(std::string_view prefix, int k) {
  return absl::StrCat(Av(prefix), "_", k);
}

}  // namespace

std::string FormatDouble(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

absl::StatusOr<Corpus> ParseCorpusCsv(std::istream& in) {
  std::string line;
  if (!NextLine(in, line)) {
    return absl::InvalidArgumentError("empty corpus file: missing header");
  }
  const std::vector<std::string_view> header = SplitCsvLine(line);
  if (header.size() < 4 || header.size() % 2 != 0) {
    return LineError(1, "header must be voter_id,record_id,x_0..x_{d-1},"
                        "z_0..z_{d-1}");
  }
  const int d = static_cast<int>(header.size() - 2) / 2;
  if (d > kMaxDimension) {
    return LineError(1, absl::StrCat("dimension ", d, " exceeds ",
                                     kMaxDimension));
  }
  auto expect = [&](size_t index, const std::string& name) -> absl::Status {
    if (TrimAscii(header[index]) != name) {
      return LineError(1, absl::StrCat("expected column '", name, "', found '",
                                       Av(header[index]), "'"));
    }
    return absl::OkStatus();
  };
  if (absl::Status s = expect(0, "voter_id"); !s.ok()) return s;
  if (absl::Status s = expect(1, "record_id"); !s.ok()) return s;
  for (int k = 0; k < d; ++k) {
    if (absl::Status s = expect(2 + k, ColumnName("x", k)); !s.ok()) return s;
    if (absl::Status s = expect(2 + d + k, ColumnName("z", k)); !s.ok()) {
      return s;
    }
  }

  Corpus corpus;
  corpus.dimension = d;
  std::map<int64_t, size_t> voter_index;
  std::set<std::pair<int64_t, int64_t>> seen;
  int line_number = 1;
  while (NextLine(in, line)) {
    ++line_number;
    if (TrimAscii(line).empty()) continue;
    const std::vector<std::string_view> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      return LineError(line_number,
                       absl::StrCat("expected ", header.size(),
                                    " fields for d=", d, ", found ",
                                    cells.size()));
    }
    absl::StatusOr<int64_t> voter = ParseId(cells[0], "voter_id", line_number);
    if (!voter.ok()) return voter.status();
    absl::StatusOr<int64_t> record =
        ParseId(cells[1], "record_id", line_number);
    if (!record.ok()) return record.status();
    if (!seen.insert({*voter, *record}).second) {
      return LineError(line_number,
                       absl::StrCat("duplicate record ", *record,
                                    " for voter ", *voter));
    }
    PairwiseComparison comparison;
    comparison.chosen.resize(d);
    comparison.rejected.resize(d);
    for (int k = 0; k < d; ++k) {
      absl::StatusOr<double> x =
          ParseReal(cells[2 + k], header[2 + k], line_number);
      if (!x.ok()) return x.status();
      absl::StatusOr<double> z =
          ParseReal(cells[2 + d + k], header[2 + d + k], line_number);
      if (!z.ok()) return z.status();
      comparison.chosen[k] = *x;
      comparison.rejected[k] = *z;
    }
    auto [it, inserted] = voter_index.try_emplace(*voter, corpus.voters.size());
    if (inserted) {
      corpus.voters.push_back(VoterDataset{*voter, {}});
    }
    corpus.voters[it->second].records.push_back(std::move(comparison));
  }
  if (corpus.voters.empty()) {
    return absl::InvalidArgumentError("corpus file has a header but no rows");
  }
  return corpus;
}

absl::StatusOr<Corpus> ReadCorpusCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  absl::StatusOr<Corpus> corpus = ParseCorpusCsv(in);
  if (!corpus.ok()) {
    return absl::Status(corpus.status().code(),
                        absl::StrCat(path, ": ", corpus.status().message()));
  }
  return corpus;
}

void WriteCorpusCsv(std::ostream& out, const Corpus& corpus) {
  const int d = corpus.dimension;
  out << "voter_id,record_id";
  for (int k = 0; k < d; ++k) out << ",x_" << k;
  for (int k = 0; k < d; ++k) out << ",z_" << k;
  out << "\n";
  for (const VoterDataset& voter : corpus.voters) {
    for (size_t j = 0; j < voter.records.size(); ++j) {
      const PairwiseComparison& r = voter.records[j];
      out << voter.voter_id << "," << j;
      for (double x : r.chosen) out << "," << FormatDouble(x);
      for (double z : r.rejected) out << "," << FormatDouble(z);
      out << "\n";
    }
  }
}

absl::StatusOr<std::vector<BetaRow>> ParseBetasCsv(std::istream& in) {
  std::string line;
  if (!NextLine(in, line)) {
    return absl::InvalidArgumentError("empty betas file: missing header");
  }
  const std::vector<std::string_view> header = SplitCsvLine(line);
  if (header.size() < 4 || header[0] != "voter_id" ||
      header[1] != "converged" || header[2] != "objective") {
    return LineError(1, "header must be voter_id,converged,objective,"
                        "beta_0..beta_{d-1}");
  }
  const int d = static_cast<int>(header.size()) - 3;
  for (int k = 0; k < d; ++k) {
    if (header[3 + k] != ColumnName("beta", k)) {
      return LineError(1, absl::StrCat("expected column 'beta_", k, "'"));
    }
  }
  std::vector<BetaRow> rows;
  int line_number = 1;
  while (NextLine(in, line)) {
    ++line_number;
    if (TrimAscii(line).empty()) continue;
    const std::vector<std::string_view> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      return LineError(line_number, absl::StrCat("expected ", header.size(),
                                                 " fields, found ",
                                                 cells.size()));
    }
    BetaRow row;
    absl::StatusOr<int64_t> id = ParseId(cells[0], "voter_id", line_number);
    if (!id.ok()) return id.status();
    row.voter_id = *id;
    const std::string_view flag = TrimAscii(cells[1]);
    if (flag == "true" || flag == "1") {
      row.converged = true;
    } else if (flag == "false" || flag == "0") {
      row.converged = false;
    } else {
      return LineError(line_number, "column 'converged' must be true/false");
    }
    absl::StatusOr<double> objective =
        ParseReal(cells[2], "objective", line_number);
    if (!objective.ok()) return objective.status();
    row.objective = *objective;
    row.beta.resize(d);
    for (int k = 0; k < d; ++k) {
      absl::StatusOr<double> b = ParseReal(cells[3 + k], header[3 + k],
                                           line_number);
      if (!b.ok()) return b.status();
      row.beta[k] = *b;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    return absl::InvalidArgumentError("betas file has a header but no rows");
  }
  return rows;
}

absl::StatusOr<std::vector<BetaRow>> ReadBetasCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  absl::StatusOr<std::vector<BetaRow>> rows = ParseBetasCsv(in);
  if (!rows.ok()) {
    return absl::Status(rows.status().code(),
                        absl::StrCat(path, ": ", rows.status().message()));
  }
  return rows;
}

void WriteBetasCsv(std::ostream& out, const std::vector<BetaRow>& rows) {
  const size_t d = rows.empty() ? 0 : rows.front().beta.size();
  out << "voter_id,converged,objective";
  for (size_t k = 0; k < d; ++k) out << ",beta_" << k;
  out << "\n";
  for (const BetaRow& row : rows) {
    out << row.voter_id << "," << (row.converged ? "true" : "false") << ","
        << FormatDouble(row.objective);
    for (double b : row.beta) out << "," << FormatDouble(b);
    out << "\n";
  }
}

void WriteTruthCsv(std::ostream& out, const Society& society) {
  const size_t d = society.mean.size();
  out << "voter_id";
  for (size_t k = 0; k < d; ++k) out << ",beta_" << k;
  out << "\n";
  for (size_t i = 0; i < society.betas.size(); ++i) {
    out << i;
    for (double b : society.betas[i].beta) out << "," << FormatDouble(b);
    out << "\n";
  }
  out << "m";
  for (double m : society.mean) out << "," << FormatDouble(m);
  out << "\n";
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << text;
  out.flush();
  if (!out) return absl::UnavailableError(absl::StrCat("failed writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace dppref
