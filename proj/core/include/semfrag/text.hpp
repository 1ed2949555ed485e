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

#ifndef SEMFRAG_TEXT_HPP_
#define SEMFRAG_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace semfrag {

// Canonical form used for dedup keys and token statistics: ASCII
// case-folded, runs of whitespace collapsed to single spaces, ends trimmed.
// The generated vocabulary is pure ASCII; non-ASCII bytes pass through
// unchanged.
std::string canonicalize(std::string_view s);

// Whitespace tokenizer (no canonicalization).
std::vector<std::string> tokenize(std::string_view s);

// Joins tokens with single spaces.
std::string join(const std::vector<std::string>& tokens,
                 std::string_view sep = " ");

// Renders a name list in surface form: "A", "A and B", "A, B and C".
std::string render_name_list(const std::vector<std::string>& names);

std::string to_lower(std::string_view s);

// Uppercases the first byte (sentence capitalization).
std::string capitalize(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Strips leading/trailing ASCII whitespace.
std::string strip(std::string_view s);

// Splits on a single character, keeping empty fields.
std::vector<std::string> split_on(std::string_view s, char sep);

}  // namespace semfrag

#endif  // SEMFRAG_TEXT_HPP_
