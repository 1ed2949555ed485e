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

#ifndef SEMFRAG_DATASET_HPP_
#define SEMFRAG_DATASET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "semfrag/grammar.hpp"
#include "semfrag/inventory.hpp"
#include "semfrag/knowledge_base.hpp"
#include "semfrag/lexicon.hpp"
#include "semfrag/logic_fragments.hpp"
#include "semfrag/rng.hpp"
#include "semfrag/substitution.hpp"
#include "semfrag/types.hpp"

namespace semfrag {

// Assembly policy for one monotonicity variant. The per-premise pair cap for
// generated premises comes from SearchConfig::max_pairs_per_premise.
struct MonoBuildConfig {
  int n_train = 8000;
  int n_dev = 1000;
  int n_test = 1000;
  // Hand-picked premises searched first, at their own depth, with no cap
  // (0 = keep everything); they land in the train split.
  std::vector<std::string> seed_premises;
  int seed_depth = 3;
  int seed_cap = 0;
  // Generation gives up (with achieved counts) after this many premises.
  uint64_t max_premises = 500000;
};

// Generates one monotonicity variant end to end: premises from the grammar,
// polarization, substitution search, then label-deficit-greedy sampling of
// at most max_pairs_per_premise pairs per premise. Splits are premise-disjoint:
// train fills first (seed premises, then generated ones), then dev, then
// test, and a premise's pairs never straddle a split boundary. meta carries
// the substitution trace and depth for every pair. workers > 1 fans the
// per-premise searches out across threads; selection stays sequential, so
// output is deterministic for a given rng and identical for any worker
// count. Throws GenerationError when max_premises is hit first.
std::vector<NLIPair> generate_pairs(const MonoConfig& config,
                                    const SearchConfig& search_cfg,
                                    const MonoBuildConfig& build,
                                    const Lexicon& lexicon,
                                    const KnowledgeBase& kb,
                                    const RandomSource& rng,
                                    int workers = 1);

// Logic-fragment assembly: partitions the name inventory into disjoint
// train/test pools (70/30) and generates the configured splits.
std::vector<NLIPair> build_logic_fragment(const GeneratorConfig& cfg,
                                          const NameInventory& inventory,
                                          const RandomSource& rng);

// Fig.-2-style dataset statistics, recomputable from the rows alone.
// A token is a whitespace-delimited unit after canonicalization.
struct DatasetStats {
  FragmentId fragment = FragmentId::kNegation;
  std::size_t n_pairs = 0;
  std::size_t vocab_size = 0;
  double avg_sentence_len = 0.0;  // mean tokens over premises and hypotheses
  std::map<Label, std::size_t> label_histogram;
  std::map<Split, std::size_t> split_histogram;
};

// Throws DataError on an empty dataset or rows from mixed fragments.
DatasetStats compute_stats(const std::vector<NLIPair>& pairs);

std::string format_stats(const DatasetStats& stats);

// Injective token mapping used to paraphrase evaluation data away from the
// training lexicon. Keys and values are lowercase surface phrases; nouns
// appear in both number forms.
struct ParaphraseTable {
  std::map<std::string, std::string> mapping;

  // One "from<TAB>to" entry per line, '#' comments. Throws DataError on
  // malformed lines or a non-injective mapping.
  static ParaphraseTable load(const std::string& path);
  static ParaphraseTable parse(const std::string& content,
                               const std::string& origin);
};

// Every paraphrase target must be absent from the lexicon (else the rewrite
// would leak training vocabulary back in). Throws DataError on violation.
void validate_paraphrase_table(const ParaphraseTable& table,
                               const Lexicon& lexicon);

// Rewrites every noun and verb occurrence (matched longest-first, so
// multiword verbs map as units) through the table, preserving labels and
// capitalization. Throws DataError when a noun/verb in the data has no
// mapping.
std::vector<NLIPair> paraphrase_dev(const std::vector<NLIPair>& dataset,
                                    const ParaphraseTable& table,
                                    const Lexicon& lexicon);

}  // namespace semfrag

#endif  // SEMFRAG_DATASET_HPP_
