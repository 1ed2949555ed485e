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

#include "semfrag/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

using nlohmann::json;

FileFormat format_from_string(std::string_view s) {
  if (s == "jsonl") return FileFormat::kJsonl;
  if (s == "tsv") return FileFormat::kTsv;
  throw ConfigError("bad format: '" + std::string(s) + "' (want jsonl|tsv)");
}

std::string to_string(FileFormat format) {
  return format == FileFormat::kJsonl ? "jsonl" : "tsv";
}

std::string encode_jsonl(const NLIPair& pair) {
  json meta = json::object();
  for (const auto& [k, v] : pair.meta) meta[k] = v;
  json row = {
      {"premise", pair.premise},
      {"hypothesis", pair.hypothesis},
      {"label", to_string(pair.label)},
      {"fragment", to_string(pair.fragment)},
      {"split", to_string(pair.split)},
      {"meta", meta},
  };
  // nlohmann::json orders object keys; dump() is deterministic.
  return row.dump();
}

NLIPair decode_jsonl(std::string_view line) {
  json row;
  try {
    row = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("bad JSON row: ") + e.what());
  }
  if (!row.is_object()) throw DataError("JSONL row is not an object");
  NLIPair pair;
  auto need_string = [&](const char* key) -> std::string {
    auto it = row.find(key);
    if (it == row.end())
      throw DataError(std::string("missing field '") + key + "'");
    if (!it->is_string())
      throw DataError(std::string("field '") + key + "' is not a string");
    return it->get<std::string>();
  };
  pair.premise = need_string("premise");
  pair.hypothesis = need_string("hypothesis");
  pair.label = label_from_string(need_string("label"));
  pair.fragment = fragment_from_string(need_string("fragment"));
  pair.split = split_from_string(need_string("split"));
  if (auto it = row.find("meta"); it != row.end()) {
    if (!it->is_object()) throw DataError("field 'meta' is not an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string())
        throw DataError("meta value for '" + k + "' is not a string");
      pair.meta[k] = v.get<std::string>();
    }
  }
  return pair;
}

std::string encode_tsv(const NLIPair& pair) {
  for (const std::string* s : {&pair.premise, &pair.hypothesis}) {
    if (s->find('\t') != std::string::npos) {
      throw DataError("TSV cannot carry text containing tabs: '" + *s + "'");
    }
  }
  return pair.premise + "\t" + pair.hypothesis + "\t" + to_string(pair.label) +
         "\t" + to_string(pair.fragment);
}

NLIPair decode_tsv(std::string_view line) {
  std::vector<std::string> fields = split_on(line, '\t');
  if (fields.size() != 4) {
    throw DataError("TSV row needs 4 tab-separated fields, got " +
                    std::to_string(fields.size()));
  }
  NLIPair pair;
  pair.premise = fields[0];
  pair.hypothesis = fields[1];
  pair.label = label_from_string(fields[2]);
  pair.fragment = fragment_from_string(fields[3]);
  return pair;
}

std::vector<NLIPair> read_pairs_file(const std::string& path,
                                     FileFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<NLIPair> pairs;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      pairs.push_back(format == FileFormat::kJsonl ? decode_jsonl(line)
                                                   : decode_tsv(line));
    } catch (const Error& e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return pairs;
}

std::vector<NLIPair> read_pairs_file(const std::string& path) {
  FileFormat format =
      ends_with(path, ".tsv") ? FileFormat::kTsv : FileFormat::kJsonl;
  return read_pairs_file(path, format);
}

void write_pairs_file(const std::string& path,
                      const std::vector<NLIPair>& pairs, FileFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (const NLIPair& pair : pairs) {
    out << (format == FileFormat::kJsonl ? encode_jsonl(pair)
                                         : encode_tsv(pair))
        << '\n';
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace semfrag
