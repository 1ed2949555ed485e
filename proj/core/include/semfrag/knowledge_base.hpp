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

#ifndef SEMFRAG_KNOWLEDGE_BASE_HPP_
#define SEMFRAG_KNOWLEDGE_BASE_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semfrag/errors.hpp"
#include "semfrag/lexicon.hpp"

namespace semfrag {

// Direction of a lexical-substitution query against the knowledge base.
// kGreater asks for strictly more general phrases (x <= y, y != x up to
// equivalence), kLess for strictly more specific ones, kNegate for phrases
// declared incompatible with x.
enum class KbDirection { kGreater, kLess, kNegate };

std::string to_string(KbDirection dir);

// Background knowledge: a preorder over lexical phrases ("steel <= metal",
// "every = all") plus an incompatibility relation ("hit ~ missed" style
// antonyms). Phrases are stored as-is (lowercase, singular lemma forms,
// possibly multiword). The relation is closed under reflexivity and
// transitivity by close(); queries are only valid on a closed base.
//
// File format, one declaration per line ('#' starts a comment):
//   a <= b     a entails b (a is at most as general as b)
//   a = b      a and b are equivalent (leq both ways)
//   a ~ b      a and b are incompatible (mutually exclusive)
// Operands may contain spaces ("at least 2 <= some").
class KnowledgeBase {
 public:
  void add_leq(const std::string& lo, const std::string& hi);
  void add_eq(const std::string& a, const std::string& b);
  void add_antonym(const std::string& a, const std::string& b);

  // Materializes the restriction rule "adj noun <= noun" for every
  // intersective adjective/noun pair of matching sort in the lexicon.
  // Subsective adjectives (whose combination with a noun does not entail the
  // bare noun's extension in a substitutable way for both directions we use)
  // are skipped; they participate only via explicitly declared edges.
  void add_adjective_rules(const Lexicon& lexicon);

  // Computes the reflexive-transitive closure and checks consistency: no
  // declared antonym pair may become leq-comparable. On violation throws
  // KbError naming the offending chain.
  void close();
  bool closed() const { return closed_; }

  // Queries; require close() to have run.
  bool leq(const std::string& lo, const std::string& hi) const;
  bool eq(const std::string& a, const std::string& b) const;
  bool antonym(const std::string& a, const std::string& b) const;
  bool known(const std::string& phrase) const;

  // All phrases mentioned by any declaration.
  const std::set<std::string>& phrases() const { return phrases_; }

  // Direct (pre-closure) edges, for exporting the base as oracle axioms.
  const std::vector<std::pair<std::string, std::string>>& leq_edges() const {
    return leq_edges_;
  }
  const std::vector<std::pair<std::string, std::string>>& antonym_pairs()
      const {
    return antonym_pairs_;
  }

  static KnowledgeBase load(const std::string& path);
  static KnowledgeBase parse(std::string_view content,
                             const std::string& origin);

 private:
  std::vector<std::pair<std::string, std::string>> leq_edges_;
  std::vector<std::pair<std::string, std::string>> antonym_pairs_;
  std::set<std::string> phrases_;
  // Closure: phrase -> set of phrases it is <= to (including itself).
  std::map<std::string, std::set<std::string>> up_;
  std::map<std::string, std::set<std::string>> down_;
  std::map<std::string, std::set<std::string>> incompatible_;
  bool closed_ = false;
};

// Substitution candidates for `phrase` in the given direction, sorted
// lexicographically for determinism. kGreater excludes phrases equivalent to
// the input (equivalents are handled by the flat-context rules, not the
// monotone ones); kLess likewise. kNegate returns declared-incompatible
// phrases (closure-extended: anything leq an incompatible phrase).
std::vector<std::string> kb_lookup(const KnowledgeBase& kb,
                                   const std::string& phrase,
                                   KbDirection direction);

// Phrases equivalent to `phrase` (excluding itself), sorted.
std::vector<std::string> kb_equivalents(const KnowledgeBase& kb,
                                        const std::string& phrase);

}  // namespace semfrag

#endif  // SEMFRAG_KNOWLEDGE_BASE_HPP_
