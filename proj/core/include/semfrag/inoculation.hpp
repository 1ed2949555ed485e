// Copyright 2026 The Semfrag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEMFRAG_INOCULATION_HPP_
#define SEMFRAG_INOCULATION_HPP_

#include <functional>
#include <string>
#include <vector>

namespace semfrag {

// One externally measured model variant: architecture `arch`, fine-tuned on
// k challenge examples, hyperparameter variation j, scored on the fragment
// and on the original benchmark.
struct ScoreRecord {
  std::string arch;
  int k = 0;
  int j = 0;
  std::string hyperparams;
  double s_frag = 0.0;
  double s_orig = 0.0;

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

// Aggregation hook. Selection fixes the arithmetic mean by default but any
// monotone substitute can be plugged in.
using AggregateFn = std::function<double(const ScoreRecord&)>;
double mean_aggregate(const ScoreRecord& record);

// CSV with the exact header `arch,k,j,hyperparams,s_frag,s_orig`; no quoting,
// so fields must not contain commas. Scores print in shortest round-trip
// form, making write/parse an identity. Throws DataError with line context
// on malformed rows, out-of-range scores, or duplicate (arch, k, j) keys.
std::vector<ScoreRecord> load_scores(const std::string& path);
std::vector<ScoreRecord> parse_scores(const std::string& content,
                                      const std::string& origin);
std::string write_scores_csv(const std::vector<ScoreRecord>& records);

// The record of group (arch, k) maximizing the aggregate; ties broken by
// smallest j. Throws DataError when the group is empty.
ScoreRecord select_best(const std::vector<ScoreRecord>& records,
                        const std::string& arch, int k,
                        const AggregateFn& aggregate = mean_aggregate);

struct CurvePoint {
  int k = 0;
  ScoreRecord chosen;
  double aggregate = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Plot-ready selection curve: one chosen record per k, ascending k.
struct SelectionResult {
  std::string arch;
  std::vector<CurvePoint> points;

  friend bool operator==(const SelectionResult&, const SelectionResult&) =
      default;
};

// Throws DataError when the architecture has no records.
SelectionResult curve(const std::vector<ScoreRecord>& records,
                      const std::string& arch,
                      const AggregateFn& aggregate = mean_aggregate);

// A curve serializes as a score CSV of its chosen records (so the same
// parser reads it back); curve_from_csv re-derives the per-point aggregates.
std::string write_curve_csv(const SelectionResult& result);
SelectionResult curve_from_csv(const std::string& content,
                               const std::string& origin,
                               const AggregateFn& aggregate = mean_aggregate);

}  // namespace semfrag

#endif  // SEMFRAG_INOCULATION_HPP_
