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

#ifndef SEMFRAG_ORACLE_HPP_
#define SEMFRAG_ORACLE_HPP_

#include <map>
#include <string>
#include <vector>

#include "semfrag/formula.hpp"
#include "semfrag/types.hpp"
#include "semfrag/world.hpp"

namespace semfrag {

struct OracleOptions {
  DomainBounds bounds;
  // Sort of every constant mentioned in the formulas. Required: the oracle
  // refuses to guess whether "Jordan" is a person or a place.
  std::map<std::string, Sort> constant_sorts;
  // Background constraints conjoined to the premise in every query
  // (used for lexical subset/disjointness axioms).
  std::vector<Formula> theory;
  // Carrier size for the generic entity sort (0 = derive from padding).
  int entity_carrier = 0;
};

struct OracleResult {
  Label label = Label::kNeutral;
  // Anonymous padding added per sort — part of the closed-world convention
  // every verdict depends on, so verify reports surface it.
  int padding_persons = 0;
  int padding_places = 0;
  int padding_entities = 0;
  int atom_count = 0;           // grounded atoms (SAT paths)
  uint64_t worlds_checked = 0;  // enumerated order types (capped rank path)
};

// Decides ENTAILMENT / NEUTRAL / CONTRADICTION over bounded closed-world
// models: the label is ENTAILMENT iff no premise-satisfying world falsifies
// the hypothesis, CONTRADICTION iff none satisfies it, NEUTRAL otherwise.
// Implemented as three bounded satisfiability queries — SAT(P),
// SAT(P and not H), SAT(P and H) — over the grounded propositional skeleton
// (identical verdicts to literal world enumeration, which stays feasible
// only for tiny domains). Formulas containing height comparisons instead
// enumerate rank order types, to which order atoms are invariant.
//
// The carrier of each sort is: mentioned constants + anonymous padding.
// Padding is adaptive: a count threshold n forces at least n + 2 - mentioned
// entities so a bounded domain cannot fake a cardinality verdict.
// Throws OracleError if the premise (plus theory) is unsatisfiable within
// bounds, and FormulaError on open formulas or missing constant sorts.
OracleResult oracle_label_ex(const Formula& premise, const Formula& hypothesis,
                             const OracleOptions& opts);

Label oracle_label(const Formula& premise, const Formula& hypothesis,
                   const DomainBounds& bounds,
                   const std::map<std::string, Sort>& constant_sorts);

}  // namespace semfrag

#endif  // SEMFRAG_ORACLE_HPP_
