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

#ifndef SEMFRAG_TYPES_HPP_
#define SEMFRAG_TYPES_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace semfrag {

enum class Label { kEntailment, kNeutral, kContradiction };

enum class FragmentId {
  kNegation,
  kBoolean,
  kQuantifier,
  kCounting,
  kConditional,
  kComparative,
  kMonotonicitySimple,
  kMonotonicityHard,
};

enum class Split { kTrain, kDev, kTest };

std::string to_string(Label label);
std::string to_string(FragmentId fragment);
std::string to_string(Split split);

Label label_from_string(std::string_view s);
FragmentId fragment_from_string(std::string_view s);
Split split_from_string(std::string_view s);

// The six template-based logic fragments, in canonical order.
const std::vector<FragmentId>& logic_fragments();
// Both monotonicity variants, in canonical order.
const std::vector<FragmentId>& monotonicity_fragments();
// All eight, logic first.
const std::vector<FragmentId>& all_fragments();

bool is_monotonicity(FragmentId fragment);

// One labeled premise/hypothesis example. `meta` carries provenance
// (template id, slot bindings, logical forms, substitution traces) as
// string-valued entries; std::map keeps serialization order deterministic.
struct NLIPair {
  std::string premise;
  std::string hypothesis;
  Label label = Label::kNeutral;
  FragmentId fragment = FragmentId::kNegation;
  Split split = Split::kTrain;
  std::map<std::string, std::string> meta;

  friend bool operator==(const NLIPair&, const NLIPair&) = default;
};

// Dedup key: canonicalized premise and hypothesis joined by the unit
// separator (0x1f), which cannot occur in canonicalized text.
std::string canonical_key(std::string_view premise, std::string_view hypothesis);
std::string canonical_key(const NLIPair& pair);

}  // namespace semfrag

#endif  // SEMFRAG_TYPES_HPP_
