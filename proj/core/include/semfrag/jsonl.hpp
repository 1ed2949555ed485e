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

#ifndef SEMFRAG_JSONL_HPP_
#define SEMFRAG_JSONL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "semfrag/types.hpp"

namespace semfrag {

enum class FileFormat { kJsonl, kTsv };

FileFormat format_from_string(std::string_view s);
std::string to_string(FileFormat format);

// One-line JSON object: {"premise":..., "hypothesis":..., "label":...,
// "fragment":..., "split":..., "meta":{...}}. Keys are emitted in sorted
// order; output is byte-deterministic for a given pair.
std::string encode_jsonl(const NLIPair& pair);

// Parses one JSONL row. Throws DataError with a reason on malformed input
// (bad JSON, missing/mistyped fields, unknown label).
NLIPair decode_jsonl(std::string_view line);

// TSV alternative: premise<TAB>hypothesis<TAB>label<TAB>fragment. No header.
// Tabs are not escaped, so text containing tabs is rejected. Split and meta
// are not carried by this format; decode fills split=train and empty meta.
std::string encode_tsv(const NLIPair& pair);
NLIPair decode_tsv(std::string_view line);

// Whole-file helpers. Errors mention 1-based line numbers.
std::vector<NLIPair> read_pairs_file(const std::string& path,
                                     FileFormat format);
// Infers format from the extension (.jsonl / .tsv); defaults to JSONL.
std::vector<NLIPair> read_pairs_file(const std::string& path);
void write_pairs_file(const std::string& path, const std::vector<NLIPair>& pairs,
                      FileFormat format);

}  // namespace semfrag

#endif  // SEMFRAG_JSONL_HPP_
