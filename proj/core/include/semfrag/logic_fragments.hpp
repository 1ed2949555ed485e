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

#ifndef SEMFRAG_LOGIC_FRAGMENTS_HPP_
#define SEMFRAG_LOGIC_FRAGMENTS_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semfrag/formula.hpp"
#include "semfrag/inventory.hpp"
#include "semfrag/rng.hpp"
#include "semfrag/types.hpp"
#include "semfrag/world.hpp"

namespace semfrag {

// Per-fragment generation knobs. list_len bounds govern the fragment's list
// slots (negation: clause count, boolean: name list, counting: visited list,
// comparative: than-list); 0 means the fragment default.
struct GeneratorConfig {
  FragmentId fragment = FragmentId::kNegation;
  int n_train = 3000;
  int n_dev = 1000;
  int n_test = 1000;
  int list_len_min = 0;
  int list_len_max = 0;
  int numeric_min = 2;
  int numeric_max = 15;
};

struct Template {
  std::string id;
  FragmentId fragment = FragmentId::kNegation;
  Label label = Label::kNeutral;
};

// Slot values for realize(). Which slots a template reads is part of its
// definition; realize validates presence and constraints.
struct Binding {
  std::map<std::string, std::string> names;
  std::map<std::string, std::vector<std::string>> lists;
  std::map<std::string, int> numbers;
};

// A realized pair plus its logical forms and the sorts of every mentioned
// constant (needed to rebuild oracle carriers).
struct RealizedPair {
  NLIPair pair;
  Formula premise_form;
  Formula hypothesis_form;
  std::map<std::string, Sort> constant_sorts;
};

const std::vector<Template>& templates_for(FragmentId fragment);
const Template& template_by_id(const std::string& id);

// Deterministic surface + formula realization. Throws GenerationError on
// missing slots or constraint violations (e.g. a boolean ENTAILMENT whose
// probe place equals the premise place, or a comparative binding whose
// closure label disagrees with the template's label).
RealizedPair realize(const Template& tmpl, const Binding& binding);

// Samples a full binding for the template from the inventory. May need a
// few attempts for templates with coupled constraints; throws
// GenerationError when the inventory is too small for the template.
Binding sample_binding(const Template& tmpl, const GeneratorConfig& cfg,
                       const NameInventory& inventory, RandomSource& rng);

// One split with exact label quotas (n/3 each, remainder in E,N,C order)
// and canonical-key dedup against `used_keys` (shared across splits).
std::vector<NLIPair> generate_logic_split(const GeneratorConfig& cfg,
                                          Split split, int count,
                                          const NameInventory& inventory,
                                          RandomSource rng,
                                          std::set<std::string>& used_keys);

// All three splits: train/dev bind from train_inv, test from test_inv.
std::vector<NLIPair> generate_logic(const GeneratorConfig& cfg,
                                    const NameInventory& train_inv,
                                    const NameInventory& test_inv,
                                    const RandomSource& rng);

// Default oracle bounds roomy enough to verify rows of each fragment.
DomainBounds verify_bounds(FragmentId fragment);

// Meta helpers shared with the verify path: serialize/parse the
// "constants" meta entry ("person:Dave place:Israel ...").
std::string encode_constant_sorts(const std::map<std::string, Sort>& sorts);
std::map<std::string, Sort> decode_constant_sorts(const std::string& s);

}  // namespace semfrag

#endif  // SEMFRAG_LOGIC_FRAGMENTS_HPP_
