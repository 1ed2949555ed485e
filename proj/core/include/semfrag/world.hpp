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

#ifndef SEMFRAG_WORLD_HPP_
#define SEMFRAG_WORLD_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semfrag/formula.hpp"

namespace semfrag {

// Caps on finite-model construction. Mentioned constants always enter the
// carrier; the caps bound what the oracle will attempt to enumerate and how
// much anonymous padding it may add. Exceeding a cap raises OracleError
// rather than silently truncating the domain.
struct DomainBounds {
  int max_persons = 4;       // carrier cap for the person sort
  int max_places = 4;        // carrier cap for the place sort
  int max_rank = 0;          // height levels; 0 means |persons|
  int padding_per_sort = 1;  // anonymous entities added per mentioned sort
};

// A finite model. Carriers are ordered (deterministic enumeration);
// relations are closed-world: anything absent is false.
struct World {
  std::vector<std::string> persons;
  std::vector<std::string> places;
  std::vector<std::string> entities;

  // Named binary relations, e.g. "visited" or a transitive verb.
  std::map<std::string, std::set<std::pair<std::string, std::string>>> binary;
  // Named unary predicates (nouns, adjectives, intransitive verbs).
  std::map<std::string, std::set<std::string>> unary;
  // Height ranks; larger is taller. Only meaningful for comparatives.
  std::map<std::string, int> rank;

  const std::vector<std::string>& carrier(Sort sort) const;
  bool holds_binary(const std::string& pred, const std::string& a,
                    const std::string& b) const;
  bool holds_unary(const std::string& pred, const std::string& a) const;
};

// Evaluates a closed formula in a world. Handles the sugar nodes directly
// (kOnlyDid, kUniqueExists) so expansion equivalence is testable.
// Throws FormulaError on free variables.
bool eval(const Formula& f, const World& w);

struct EnumerateOptions {
  // Extend the visited-relation domain from persons x places to
  // persons x (places + persons). Needed when person-target atoms occur.
  bool person_targets = false;
  // Also enumerate height rank functions persons -> {1..max_rank}.
  bool heights = false;
  // Relation name being enumerated.
  std::string relation = "visited";
};

// Enumerates every world over the given carriers: all subsets of the
// relation domain, crossed with all rank functions when heights are on.
// Deterministic order. The visitor returns false to stop early; the
// function returns false iff the visitor stopped.
bool for_each_world(const std::vector<std::string>& persons,
                    const std::vector<std::string>& places,
                    const DomainBounds& bounds, const EnumerateOptions& opts,
                    const std::function<bool(const World&)>& visit);

// Materializing wrapper for small spaces; throws OracleError if the space
// exceeds `limit` worlds.
std::vector<World> enumerate_worlds(const std::vector<std::string>& persons,
                                    const std::vector<std::string>& places,
                                    const DomainBounds& bounds,
                                    const EnumerateOptions& opts,
                                    uint64_t limit = uint64_t{1} << 22);

// Number of worlds for_each_world would visit (throws OracleError on
// overflow past 2^62).
uint64_t count_worlds(const std::vector<std::string>& persons,
                      const std::vector<std::string>& places,
                      const DomainBounds& bounds,
                      const EnumerateOptions& opts);

}  // namespace semfrag

#endif  // SEMFRAG_WORLD_HPP_
