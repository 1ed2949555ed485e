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

#include "semfrag/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

ConfigMap ConfigMap::parse(const std::string& content,
                           const std::string& origin) {
  ConfigMap map;
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string where = origin + ":" + std::to_string(line_no);
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected key=value");
    }
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!map.values_.emplace(key, value).second) {
      throw ConfigError(where + ": duplicate key '" + key + "'");
    }
  }
  return map;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool ConfigMap::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_.insert(key);
  return it->second;
}

int ConfigMap::get_int(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_.insert(key);
  const std::string& s = it->second;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config key '" + key + "' is not an integer: '" + s +
                      "'");
  }
  return value;
}

uint64_t ConfigMap::get_u64(const std::string& key, uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_.insert(key);
  const std::string& s = it->second;
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config key '" + key +
                      "' is not a non-negative integer: '" + s + "'");
  }
  return value;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_.insert(key);
  const std::string& s = it->second;
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("config key '" + key + "' is not a boolean: '" + s + "'");
}

std::vector<std::string> ConfigMap::get_list(
    const std::string& key, const std::vector<std::string>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_.insert(key);
  std::vector<std::string> out;
  for (const std::string& part : split_on(it->second, ',')) {
    std::string item = strip(part);
    if (!item.empty()) out.push_back(std::move(item));
  }
  return out;
}

std::vector<std::string> ConfigMap::unconsumed() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    if (consumed_.count(key) == 0) out.push_back(key);
  }
  return out;
}

namespace {

int bounded_int(const ConfigMap& config, const std::string& key, int fallback,
                int lo, int hi) {
  int value = config.get_int(key, fallback);
  if (value < lo || value > hi) {
    throw ConfigError("config key '" + key + "' must lie in [" +
                      std::to_string(lo) + ", " + std::to_string(hi) +
                      "], got " + std::to_string(value));
  }
  return value;
}

uint32_t per_mille(const ConfigMap& config, const std::string& key,
                   uint32_t fallback) {
  return static_cast<uint32_t>(
      bounded_int(config, key, static_cast<int>(fallback), 0, 1000));
}

}  // namespace

GeneratorConfig apply_generator_config(const ConfigMap& config,
                                       GeneratorConfig base) {
  base.n_train = bounded_int(config, "n_train", base.n_train, 0, 10000000);
  base.n_dev = bounded_int(config, "n_dev", base.n_dev, 0, 10000000);
  base.n_test = bounded_int(config, "n_test", base.n_test, 0, 10000000);
  base.list_len_min =
      bounded_int(config, "list_len_min", base.list_len_min, 0, 64);
  base.list_len_max =
      bounded_int(config, "list_len_max", base.list_len_max, 0, 64);
  base.numeric_min = bounded_int(config, "numeric_min", base.numeric_min, 0,
                                 1000000);
  base.numeric_max = bounded_int(config, "numeric_max", base.numeric_max, 0,
                                 1000000);
  return base;
}

MonoConfig apply_mono_config(const ConfigMap& config, MonoConfig base) {
  base.quantifier_inventory =
      config.get_list("quantifier_inventory", base.quantifier_inventory);
  base.max_relative_clauses = bounded_int(
      config, "max_relative_clauses", base.max_relative_clauses, 0, 8);
  base.numeric_min = bounded_int(config, "numeric_min", base.numeric_min, 1,
                                 100);
  base.numeric_max = bounded_int(config, "numeric_max", base.numeric_max, 1,
                                 100);
  base.seed = config.get_u64("seed", base.seed);
  base.p_transitive = per_mille(config, "p_transitive", base.p_transitive);
  base.p_vp_neg = per_mille(config, "p_vp_neg", base.p_vp_neg);
  base.p_copula = per_mille(config, "p_copula", base.p_copula);
  base.p_pred_not = per_mille(config, "p_pred_not", base.p_pred_not);
  base.p_adj = per_mille(config, "p_adj", base.p_adj);
  base.p_modifier = per_mille(config, "p_modifier", base.p_modifier);
  base.p_object_animate =
      per_mille(config, "p_object_animate", base.p_object_animate);
  base.w_src = static_cast<uint32_t>(
      bounded_int(config, "w_src", static_cast<int>(base.w_src), 0, 1000));
  base.w_orc = static_cast<uint32_t>(
      bounded_int(config, "w_orc", static_cast<int>(base.w_orc), 0, 1000));
  base.w_pp = static_cast<uint32_t>(
      bounded_int(config, "w_pp", static_cast<int>(base.w_pp), 0, 1000));
  return base;
}

SearchConfig apply_search_config(const ConfigMap& config, SearchConfig base) {
  base.depth = bounded_int(config, "depth", base.depth, 1, 8);
  base.max_pairs_per_premise =
      bounded_int(config, "max_pairs_per_premise", base.max_pairs_per_premise,
                  0, 1000000);
  base.max_expansions = config.get_u64("max_expansions", base.max_expansions);
  return base;
}

MonoBuildConfig apply_mono_build_config(const ConfigMap& config,
                                        MonoBuildConfig base) {
  base.n_train = bounded_int(config, "n_train", base.n_train, 0, 10000000);
  base.n_dev = bounded_int(config, "n_dev", base.n_dev, 0, 10000000);
  base.n_test = bounded_int(config, "n_test", base.n_test, 0, 10000000);
  base.seed_depth = bounded_int(config, "seed_depth", base.seed_depth, 1, 8);
  base.seed_cap = bounded_int(config, "seed_cap", base.seed_cap, 0, 1000000);
  base.max_premises = config.get_u64("max_premises", base.max_premises);
  return base;
}

}  // namespace semfrag
