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

#ifndef SEMFRAG_INVENTORY_HPP_
#define SEMFRAG_INVENTORY_HPP_

#include <string>
#include <vector>

#include "semfrag/rng.hpp"

namespace semfrag {

// Proper-name pools for the logic fragments.
struct NameInventory {
  std::vector<std::string> people;
  std::vector<std::string> places;
};

// File format: one name per line; a people section, then a single blank
// line, then a places section. '#' lines are comments. Validation errors
// (duplicates within a section, overlap across sections, empty section,
// missing separator) raise InventoryError.
NameInventory load_inventory(const std::string& path);
NameInventory parse_inventory(const std::string& content,
                              const std::string& origin);

// Disjoint train/test name pools: shuffles each sort with a stream split
// from `rng` and takes ratio_num/ratio_den (default 70%) for train.
// Both sorts need at least 20 names. Deterministic for a given seed.
struct InventoryPartition {
  NameInventory train;
  NameInventory test;
};

InventoryPartition partition_inventory(const NameInventory& inventory,
                                       const RandomSource& rng,
                                       uint64_t ratio_num = 7,
                                       uint64_t ratio_den = 10);

}  // namespace semfrag

#endif  // SEMFRAG_INVENTORY_HPP_
