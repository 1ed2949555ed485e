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

#ifndef SEMFRAG_MONO_FOL_HPP_
#define SEMFRAG_MONO_FOL_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semfrag/formula.hpp"
#include "semfrag/grammar.hpp"
#include "semfrag/knowledge_base.hpp"
#include "semfrag/lexicon.hpp"
#include "semfrag/types.hpp"

namespace semfrag {

// First-order reading of a monotonicity-fragment sentence, for checking
// substitution verdicts against the model-counting oracle.
//
// The determiners every/all/each, a/some, no, and the numeric families are
// first-order definable and covered here; most, many, several, few, the, and
// "some but not all" have no agreed first-order reading, so sentences using
// them are reported untranslatable rather than approximated.
struct MonoFolTranslation {
  Formula formula;
  // One closed existential per noun phrase, asserting its full restrictor is
  // inhabited. Natural-language determiners carry existential import ("every
  // dog ..." presupposes dogs); these axioms state that convention, and they
  // are what licenses every -> some weakening.
  std::vector<Formula> np_imports;
  // Unary literals appearing inside restrictors: (lexicon phrase, negated).
  // Cross products of these (filtered for consistency) extend the import
  // convention to kinds that only arise mid-derivation, e.g. a pair may
  // relate "black mammals" to "brown or black poodles" and need
  // "black poodles" inhabited for the step between them to verify.
  std::vector<std::pair<std::string, bool>> restrictor_literals;
  // Lexicon phrases used as predicates, by arity (for hierarchy axioms).
  std::set<std::string> unary_phrases;
  std::set<std::string> binary_phrases;
  // Numeric determiner thresholds, for sizing the entity carrier.
  std::vector<int> count_thresholds;
};

// Predicate identifier for a lexicon phrase ("stared at" -> "stared_at").
std::string predicate_name(const std::string& phrase);

// Translates a parsed sentence; nullopt when a determiner falls outside the
// first-order subset. Throws SentenceError on malformed trees.
std::optional<MonoFolTranslation> translate_sentence(const ParseTree& tree,
                                                     const Lexicon& lexicon);

// Background theory for one premise/hypothesis pair: knowledge-base
// hierarchy and incompatibility axioms restricted to the pair's predicates,
// plus the existential-import axioms described above. Import conjunctions
// that the knowledge base itself refutes (antonymous members, or a member
// entailing one that appears negated) are skipped so the theory stays
// satisfiable.
std::vector<Formula> mono_theory(const MonoFolTranslation& premise,
                                 const MonoFolTranslation& hypothesis,
                                 const KnowledgeBase& kb);

// Entity-carrier floor for the pair: the summed numeric thresholds plus
// slack, clamped to what the oracle can ground comfortably.
int mono_entity_floor(const MonoFolTranslation& premise,
                      const MonoFolTranslation& hypothesis);

// End-to-end verdict: translate both sides, assemble the theory, and ask the
// oracle. nullopt when either sentence is untranslatable.
std::optional<Label> mono_fol_label(const ParseTree& premise,
                                    const ParseTree& hypothesis,
                                    const Lexicon& lexicon,
                                    const KnowledgeBase& kb);

}  // namespace semfrag

#endif  // SEMFRAG_MONO_FOL_HPP_
