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

#ifndef SEMFRAG_GRAMMAR_HPP_
#define SEMFRAG_GRAMMAR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semfrag/lexicon.hpp"
#include "semfrag/rng.hpp"

namespace semfrag {

enum class MonoVariant { kSimple, kHard };

std::string to_string(MonoVariant variant);
MonoVariant mono_variant_from_string(const std::string& s);

// Generation parameters for the monotonicity grammar. Probabilities are
// per-mille integers (no floats anywhere in the generation path, keeping
// output bit-deterministic across platforms). The factory presets encode the
// two published variants; every field can be overridden via config files.
struct MonoConfig {
  MonoVariant variant = MonoVariant::kSimple;
  // Determiner families eligible for generation ("at least n" counts as one
  // family; its instances share the numeric range below).
  std::vector<std::string> quantifier_inventory;
  // Total SRC+ORC budget per sentence (simple: 1, hard: 3).
  int max_relative_clauses = 1;
  int numeric_min = 1;
  int numeric_max = 5;
  std::uint64_t seed = 2026;

  // Per-mille probabilities of the grammar's free choices.
  std::uint32_t p_transitive = 650;      // VPbar -> Vt NP (else Vi)
  std::uint32_t p_vp_neg = 80;           // VP -> do not VPbar
  std::uint32_t p_copula = 70;           // VP -> be (not) Adj_pred
  std::uint32_t p_pred_not = 300;        // the copula's optional "not"
  std::uint32_t p_adj = 500;             // optional prenominal adjective
  std::uint32_t p_modifier = 650;        // animate Nbar takes SRC/ORC/PP
  std::uint32_t w_src = 45;              // modifier choice weights
  std::uint32_t w_orc = 30;
  std::uint32_t w_pp = 25;
  std::uint32_t p_object_animate = 500;  // object NP animate (else inanimate)

  static MonoConfig simple();
  static MonoConfig hard();
  static MonoConfig for_variant(MonoVariant variant);
};

// Parse-tree node labels. kLeaf nodes carry the lexical payload; internal
// nodes mirror the grammar's nonterminals. kRestr groups the optional
// adjective with the noun complex so determiner restrictors are a single
// constituent; kOrcBody/kPpBody group the relativizer-free remainder.
enum class NodeKind {
  kS,        // [NP VP]
  kNp,       // [Det Restr]
  kRestr,    // [Adj Nbar] | [Nbar]
  kNbar,     // [N] | [N (Src|Orc|Pp)]
  kSrc,      // [who Vp]
  kOrc,      // [who OrcBody]
  kOrcBody,  // [Np Vt]
  kPp,       // [P PpBody]
  kPpBody,   // [AdjSmell NSmell]
  kVp,       // [Vpbar] | [Neg Vpbar] | [be Pred]
  kVpbar,    // [Vi] | [Vt Np]
  kPred,     // [AdjPred] | [not AdjPred]
  kLeaf,
};

std::string to_string(NodeKind kind);

// A value-semantic derivation tree. Leaves hold one lexical unit each
// (multiword units like "at least 3" stay one leaf; rendering splits them).
// `mark` is the ambient polarity at the node, assigned by the polarity
// module; trees come out of generation/parsing with every mark = kUp.
struct ParseTree {
  NodeKind kind = NodeKind::kLeaf;
  Mark mark = Mark::kUp;
  bool animate = true;  // nominal sort; meaningful on NP/Restr/Nbar/N/Adj

  // Leaf payload (kind == kLeaf only).
  std::string surface;  // as written, words space-separated
  std::string lemma;    // lowercase lemma: singular for nouns, else surface
  LexCategory category = LexCategory::kRel;
  bool is_lex = true;  // false only for the structural copula "be"
  std::optional<DetSignature> signature;            // determiners
  DetNumber number = DetNumber::kSingular;          // determiners and nouns
  std::string det_family;                           // determiners
  int numeric_n = 0;                                // numeric determiners

  std::vector<ParseTree> children;

  bool is_leaf() const { return kind == NodeKind::kLeaf; }
};

// Leaf node for a lexicon entry (nouns come out in their singular surface;
// use Lexicon::inflect plus the number field for plural positions).
ParseTree leaf_from_entry(const LexEntry& entry);

// Random sentence generation per the grammar. Pure in (config, rng); every
// determiner comes from config.quantifier_inventory and the SRC+ORC count
// never exceeds config.max_relative_clauses.
ParseTree generate_premise(const Lexicon& lexicon, const MonoConfig& config,
                           RandomSource& rng);

// Deterministic recursive-descent parse (modifiers attach to the noun they
// follow, which is the only grammatical attachment in this grammar). Case
// of the input is preserved in leaf surfaces. Throws SentenceError on any
// token outside the grammar.
ParseTree parse_sentence(const Lexicon& lexicon, const std::string& text);

// Canonical dataset rendering: lowercase surfaces joined by single spaces,
// first character capitalized.
std::string render_sentence(const ParseTree& tree);

// Lowercase word tokens in surface order (multiword leaves split).
std::vector<std::string> sentence_tokens(const ParseTree& tree);

// Number of SRC/ORC nodes in the tree.
int count_relative_clauses(const ParseTree& tree);

}  // namespace semfrag

#endif  // SEMFRAG_GRAMMAR_HPP_
