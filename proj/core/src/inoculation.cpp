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

#include "semfrag/inoculation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

namespace {

constexpr const char* kHeader = "arch,k,j,hyperparams,s_frag,s_orig";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

int parse_int(const std::string& s, const std::string& where,
              const std::string& what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(where + ": " + what + " is not an integer: '" + s + "'");
  }
  return value;
}

double parse_score(const std::string& s, const std::string& where,
                   const std::string& what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(where + ": " + what + " is not a number: '" + s + "'");
  }
  if (value < 0.0 || value > 1.0) {
    throw DataError(where + ": " + what + " must lie in [0, 1], got '" + s +
                    "'");
  }
  return value;
}

// Shortest decimal form that parses back to the same double.
std::string format_score(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw DataError("cannot format score");
  return std::string(buf, ptr);
}

void check_field_text(const std::string& s, const std::string& where,
                      const std::string& what) {
  if (s.empty()) throw DataError(where + ": " + what + " is empty");
  if (s.find(',') != std::string::npos ||
      s.find('\n') != std::string::npos) {
    throw DataError(where + ": " + what + " must not contain commas");
  }
}

}  // namespace

double mean_aggregate(const ScoreRecord& record) {
  return (record.s_frag + record.s_orig) / 2.0;
}

std::vector<ScoreRecord> load_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open score table: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scores(buffer.str(), path);
}

std::vector<ScoreRecord> parse_scores(const std::string& content,
                                      const std::string& origin) {
  std::vector<ScoreRecord> records;
  std::set<std::tuple<std::string, int, int>> keys;
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string where = origin + ":" + std::to_string(line_no);
    line = strip(line);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kHeader) {
        throw DataError(where + ": expected header '" + kHeader + "'");
      }
      saw_header = true;
      continue;
    }
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 6) {
      throw DataError(where + ": expected 6 fields, got " +
                      std::to_string(fields.size()));
    }
    ScoreRecord r;
    r.arch = strip(fields[0]);
    check_field_text(r.arch, where, "arch");
    r.k = parse_int(strip(fields[1]), where, "k");
    if (r.k < 0) throw DataError(where + ": k must be non-negative");
    r.j = parse_int(strip(fields[2]), where, "j");
    if (r.j < 1) throw DataError(where + ": j must be >= 1");
    r.hyperparams = strip(fields[3]);
    check_field_text(r.hyperparams, where, "hyperparams");
    r.s_frag = parse_score(strip(fields[4]), where, "s_frag");
    r.s_orig = parse_score(strip(fields[5]), where, "s_orig");
    if (!keys.insert({r.arch, r.k, r.j}).second) {
      throw DataError(where + ": duplicate (arch, k, j) = (" + r.arch + ", " +
                      std::to_string(r.k) + ", " + std::to_string(r.j) + ")");
    }
    records.push_back(std::move(r));
  }
  if (!saw_header) {
    throw DataError(origin + ": empty score table (missing header)");
  }
  return records;
}

std::string write_scores_csv(const std::vector<ScoreRecord>& records) {
  std::string out = kHeader;
  out += '\n';
  for (const ScoreRecord& r : records) {
    out += r.arch;
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.j);
    out += ',';
    out += r.hyperparams;
    out += ',';
    out += format_score(r.s_frag);
    out += ',';
    out += format_score(r.s_orig);
    out += '\n';
  }
  return out;
}

ScoreRecord select_best(const std::vector<ScoreRecord>& records,
                        const std::string& arch, int k,
                        const AggregateFn& aggregate) {
  const ScoreRecord* best = nullptr;
  double best_score = 0.0;
  for (const ScoreRecord& r : records) {
    if (r.arch != arch || r.k != k) continue;
    double score = aggregate(r);
    if (best == nullptr || score > best_score ||
        (score == best_score && r.j < best->j)) {
      best = &r;
      best_score = score;
    }
  }
  if (best == nullptr) {
    throw DataError("no records for (arch, k) = (" + arch + ", " +
                    std::to_string(k) + ")");
  }
  return *best;
}

SelectionResult curve(const std::vector<ScoreRecord>& records,
                      const std::string& arch, const AggregateFn& aggregate) {
  std::set<int> ks;
  for (const ScoreRecord& r : records) {
    if (r.arch == arch) ks.insert(r.k);
  }
  if (ks.empty()) {
    throw DataError("no records for architecture '" + arch + "'");
  }
  SelectionResult result;
  result.arch = arch;
  for (int k : ks) {
    CurvePoint point;
    point.k = k;
    point.chosen = select_best(records, arch, k, aggregate);
    point.aggregate = aggregate(point.chosen);
    result.points.push_back(std::move(point));
  }
  return result;
}

std::string write_curve_csv(const SelectionResult& result) {
  std::vector<ScoreRecord> chosen;
  chosen.reserve(result.points.size());
  for (const CurvePoint& p : result.points) chosen.push_back(p.chosen);
  return write_scores_csv(chosen);
}

SelectionResult curve_from_csv(const std::string& content,
                               const std::string& origin,
                               const AggregateFn& aggregate) {
  std::vector<ScoreRecord> records = parse_scores(content, origin);
  if (records.empty()) {
    throw DataError(origin + ": curve table has no rows");
  }
  return curve(records, records.front().arch, aggregate);
}

}  // namespace semfrag
