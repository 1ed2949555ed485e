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

#ifndef SEMFRAG_SUBSTITUTION_HPP_
#define SEMFRAG_SUBSTITUTION_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "semfrag/grammar.hpp"
#include "semfrag/knowledge_base.hpp"
#include "semfrag/lexicon.hpp"
#include "semfrag/polarity.hpp"

namespace semfrag {

// How a single substitution step relates the new constituent to the old one.
enum class SubDirection {
  kGeneralize,  // replacement is strictly more general (old <= new)
  kSpecialize,  // replacement is strictly more specific (new <= old)
  kEquivalent,  // mutual leq
  kNegate,      // declared incompatible / negation rule
};

std::string to_string(SubDirection direction);

// One applied substitution, for provenance traces.
struct SubstitutionStep {
  std::string span;         // replaced surface text, lowercase
  std::string replacement;  // new surface text, lowercase
  SubDirection direction = SubDirection::kGeneralize;
  Mark mark = Mark::kUp;  // polarity at the span when the step applied
};

std::string to_string(const SubstitutionStep& step);
// "; "-joined steps.
std::string trace_to_string(const std::vector<SubstitutionStep>& trace);

// A sentence derived from a premise by `trace`, already re-polarized.
struct DerivedSentence {
  ParseTree tree;
  std::string sentence;  // render_sentence(tree)
  std::vector<SubstitutionStep> trace;
  int depth = 0;  // substitution steps from the premise
};

struct SubstitutionSets {
  std::vector<DerivedSentence> infer;  // entailed by the source
  std::vector<DerivedSentence> neutr;  // neither entailed nor incompatible
  std::vector<DerivedSentence> contr;  // incompatible with the source
  bool truncated = false;  // search hit its expansion safety valve
};

struct SearchConfig {
  int depth = 2;                    // chained substitution bound
  int max_pairs_per_premise = 6;    // dataset sampling cap (0 = unlimited)
  std::size_t max_expansions = 200000;  // safety valve for search()
};

// One-step expansion of a polarized sentence:
//   - at an ↑ constituent, KB greater-replacements are inferences and
//     less-replacements neutral candidates; at ↓ the directions swap; at =
//     only equivalence replacements apply (as inferences);
//   - structural moves: dropping an adjective or a relative clause / PP
//     generalizes the noun complex, adding an adjective specializes it;
//   - contradiction rules (position-gated for soundness): replacing a
//     subject determiner in {some, many, every, all, each, a} by "no";
//     subject-determiner antonym swaps; main-verb antonym swaps when the
//     subject determiner is universal-like (and, for transitive verbs, the
//     object determiner too); toggling "do not" / predicate "not" on the
//     main verb phrase under the same subject gate.
// Every output is re-polarized. Outputs are deduplicated by rendered
// sentence and never equal the input sentence. Neutral generation can be
// disabled (neutral candidates are only sound when expanding the premise
// itself; derived sentences only contribute inferences/contradictions).
SubstitutionSets substitute(const ParseTree& polarized, const Lexicon& lexicon,
                            const KnowledgeBase& kb, bool want_neutrals = true);

// Depth-bounded LIFO worklist search: expands the premise (depth 0) and
// every derived inference whose depth is below cfg.depth, accumulating all
// three sets. Neutrals come only from the premise's own expansion;
// contradictions of any derived inference also contradict the premise and
// are kept with their full traces. Deterministic: leftmost constituent
// first, KB replacements in lexicographic order, duplicates dropped on
// first sight.
SubstitutionSets search(const ParseTree& polarized_premise,
                        const Lexicon& lexicon, const KnowledgeBase& kb,
                        const SearchConfig& cfg);

}  // namespace semfrag

#endif  // SEMFRAG_SUBSTITUTION_HPP_
