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

#include "semfrag/inventory.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

NameInventory load_inventory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InventoryError("cannot open inventory '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_inventory(buffer.str(), path);
}

NameInventory parse_inventory(const std::string& content,
                              const std::string& origin) {
  NameInventory inv;
  bool in_places = false;
  bool saw_separator = false;
  size_t lineno = 0;
  std::set<std::string> seen_people, seen_places;

  for (const std::string& raw : split_on(content, '\n')) {
    ++lineno;
    std::string line = strip(raw);
    if (starts_with(line, "#")) continue;
    if (line.empty()) {
      // The first blank line separates people from places; later blanks
      // are ignored (trailing newline).
      if (!saw_separator && !inv.people.empty()) {
        saw_separator = true;
        in_places = true;
      }
      continue;
    }
    auto where = origin + ":" + std::to_string(lineno);
    if (!in_places) {
      if (!seen_people.insert(line).second) {
        throw InventoryError(where + ": duplicate person '" + line + "'");
      }
      inv.people.push_back(line);
    } else {
      if (!seen_places.insert(line).second) {
        throw InventoryError(where + ": duplicate place '" + line + "'");
      }
      if (seen_people.count(line)) {
        throw InventoryError(where + ": '" + line +
                             "' appears in both the people and places sections");
      }
      inv.places.push_back(line);
    }
  }

  if (inv.people.empty()) {
    throw InventoryError(origin + ": people section is empty");
  }
  if (inv.places.empty()) {
    throw InventoryError(origin +
                         ": places section is empty (missing blank-line "
                         "separator?)");
  }
  return inv;
}

InventoryPartition partition_inventory(const NameInventory& inventory,
                                       const RandomSource& rng,
                                       uint64_t ratio_num,
                                       uint64_t ratio_den) {
  if (inventory.people.size() < 20 || inventory.places.size() < 20) {
    throw InventoryError(
        "inventory too small to partition: need at least 20 people and 20 "
        "places, have " +
        std::to_string(inventory.people.size()) + "/" +
        std::to_string(inventory.places.size()));
  }
  if (ratio_num == 0 || ratio_num >= ratio_den) {
    throw InventoryError("partition ratio must be strictly between 0 and 1");
  }

  InventoryPartition out;
  auto split_sort = [&](const std::vector<std::string>& names,
                        std::string_view tag,
                        std::vector<std::string>* train,
                        std::vector<std::string>* test) {
    std::vector<std::string> shuffled = names;
    RandomSource stream = rng.split(tag);
    stream.shuffle(shuffled);
    size_t cut = static_cast<size_t>((shuffled.size() * ratio_num) / ratio_den);
    train->assign(shuffled.begin(), shuffled.begin() + cut);
    test->assign(shuffled.begin() + cut, shuffled.end());
  };
  split_sort(inventory.people, "partition/people", &out.train.people,
             &out.test.people);
  split_sort(inventory.places, "partition/places", &out.train.places,
             &out.test.places);
  return out;
}

}  // namespace semfrag
