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

#ifndef SEMFRAG_POLARITY_HPP_
#define SEMFRAG_POLARITY_HPP_

#include <string>
#include <vector>

#include "semfrag/grammar.hpp"
#include "semfrag/lexicon.hpp"

namespace semfrag {

// One surface word with its polarity mark. Multiword lexical units ("at
// least 3") contribute one token per word, all carrying the unit's mark.
struct PolarizedToken {
  std::string surface;
  Mark mark = Mark::kUp;

  friend bool operator==(const PolarizedToken&, const PolarizedToken&) =
      default;
};

// Assigns a polarity mark to every node of the tree in place, composing
// monotonicity signatures from the root (ambient ↑) downward:
//   - a determiner's restrictor mark composes onto its Restr subtree and its
//     scope mark onto the clause VP (subject position) or the embedding
//     verb (ORC position); determiners whose signature is (=,=) mark their
//     own tokens =, all others carry the ambient mark;
//   - "do not", predicate "not", and "without" compose ↓ onto their
//     complement;
//   - "who" and the copula are transparent.
// Throws ConfigError if a determiner leaf lacks a signature.
void polarize(ParseTree& tree);

// Copying convenience.
ParseTree polarized_copy(const ParseTree& tree);

// Word-level marks of a polarized tree, in surface order.
std::vector<PolarizedToken> polarized_tokens(const ParseTree& tree);

// "every↑ dog↓ slept↑"; with ascii=true the arrows render as "^"/"v"/"=".
// Surface case is preserved from the tree.
std::string render_polarized(const ParseTree& tree, bool ascii = false);

}  // namespace semfrag

#endif  // SEMFRAG_POLARITY_HPP_
