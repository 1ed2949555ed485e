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

#ifndef SEMFRAG_CONFIG_HPP_
#define SEMFRAG_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semfrag/dataset.hpp"
#include "semfrag/grammar.hpp"
#include "semfrag/logic_fragments.hpp"
#include "semfrag/substitution.hpp"

namespace semfrag {

// Flat key=value configuration ('#' comments, blank lines ignored).
// Getters record which keys were read so callers can reject typos: after
// applying every relevant section, unconsumed() names the leftovers.
class ConfigMap {
 public:
  static ConfigMap load(const std::string& path);
  static ConfigMap parse(const std::string& content,
                         const std::string& origin);

  // Insert-or-override (used for command-line key=value overrides).
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma-separated list; empty value -> empty list.
  std::vector<std::string> get_list(
      const std::string& key, const std::vector<std::string>& fallback) const;

  std::vector<std::string> unconsumed() const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

// Section appliers: defaults come from the passed-in base; recognized keys
// override fields. Range violations raise ConfigError.
GeneratorConfig apply_generator_config(const ConfigMap& config,
                                       GeneratorConfig base);
MonoConfig apply_mono_config(const ConfigMap& config, MonoConfig base);
SearchConfig apply_search_config(const ConfigMap& config, SearchConfig base);
MonoBuildConfig apply_mono_build_config(const ConfigMap& config,
                                        MonoBuildConfig base);

}  // namespace semfrag

#endif  // SEMFRAG_CONFIG_HPP_
