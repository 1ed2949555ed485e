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

#include "semfrag/types.hpp"

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

std::string to_string(Label label) {
  switch (label) {
    case Label::kEntailment: return "ENTAILMENT";
    case Label::kNeutral: return "NEUTRAL";
    case Label::kContradiction: return "CONTRADICTION";
  }
  throw Error("unknown label");
}

std::string to_string(FragmentId fragment) {
  switch (fragment) {
    case FragmentId::kNegation: return "negation";
    case FragmentId::kBoolean: return "boolean";
    case FragmentId::kQuantifier: return "quantifier";
    case FragmentId::kCounting: return "counting";
    case FragmentId::kConditional: return "conditional";
    case FragmentId::kComparative: return "comparative";
    case FragmentId::kMonotonicitySimple: return "monotonicity_simple";
    case FragmentId::kMonotonicityHard: return "monotonicity_hard";
  }
  throw Error("unknown fragment");
}

std::string to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  throw Error("unknown split");
}

Label label_from_string(std::string_view s) {
  if (s == "ENTAILMENT") return Label::kEntailment;
  if (s == "NEUTRAL") return Label::kNeutral;
  if (s == "CONTRADICTION") return Label::kContradiction;
  throw DataError("bad label: '" + std::string(s) + "'");
}

FragmentId fragment_from_string(std::string_view s) {
  for (FragmentId f : all_fragments()) {
    if (to_string(f) == s) return f;
  }
  throw DataError("bad fragment id: '" + std::string(s) + "'");
}

Split split_from_string(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "dev") return Split::kDev;
  if (s == "test") return Split::kTest;
  throw DataError("bad split: '" + std::string(s) + "'");
}

const std::vector<FragmentId>& logic_fragments() {
  static const std::vector<FragmentId> kFragments = {
      FragmentId::kNegation,    FragmentId::kBoolean,
      FragmentId::kQuantifier,  FragmentId::kCounting,
      FragmentId::kConditional, FragmentId::kComparative,
  };
  return kFragments;
}

const std::vector<FragmentId>& monotonicity_fragments() {
  static const std::vector<FragmentId> kFragments = {
      FragmentId::kMonotonicitySimple,
      FragmentId::kMonotonicityHard,
  };
  return kFragments;
}

const std::vector<FragmentId>& all_fragments() {
  static const std::vector<FragmentId> kFragments = [] {
    std::vector<FragmentId> all = logic_fragments();
    for (FragmentId f : monotonicity_fragments()) all.push_back(f);
    return all;
  }();
  return kFragments;
}

bool is_monotonicity(FragmentId fragment) {
  return fragment == FragmentId::kMonotonicitySimple ||
         fragment == FragmentId::kMonotonicityHard;
}

std::string canonical_key(std::string_view premise,
                          std::string_view hypothesis) {
  std::string key = canonicalize(premise);
  key.push_back('\x1f');
  key += canonicalize(hypothesis);
  return key;
}

std::string canonical_key(const NLIPair& pair) {
  return canonical_key(pair.premise, pair.hypothesis);
}

}  // namespace semfrag
