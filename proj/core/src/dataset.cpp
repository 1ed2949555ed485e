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

#include "semfrag/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "semfrag/errors.hpp"
#include "semfrag/polarity.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

namespace {

struct SplitQuota {
  Split split;
  int want;
};

// Candidates of one label from one premise, consumed front to back.
struct Bucket {
  Label label;
  std::vector<const DerivedSentence*> items;
  size_t next = 0;

  bool exhausted() const { return next >= items.size(); }
};

NLIPair make_pair(const std::string& premise_text, const DerivedSentence& d,
                  Label label, FragmentId fragment) {
  NLIPair pair;
  pair.premise = premise_text;
  pair.hypothesis = d.sentence;
  pair.label = label;
  pair.fragment = fragment;
  pair.meta["trace"] = trace_to_string(d.trace);
  pair.meta["depth"] = std::to_string(d.depth);
  return pair;
}

}  // namespace

std::vector<NLIPair> generate_pairs(const MonoConfig& config,
                                    const SearchConfig& search_cfg,
                                    const MonoBuildConfig& build,
                                    const Lexicon& lexicon,
                                    const KnowledgeBase& kb,
                                    const RandomSource& rng, int workers) {
  FragmentId fragment = config.variant == MonoVariant::kSimple
                            ? FragmentId::kMonotonicitySimple
                            : FragmentId::kMonotonicityHard;
  std::array<SplitQuota, 3> quotas = {{{Split::kTrain, build.n_train},
                                       {Split::kDev, build.n_dev},
                                       {Split::kTest, build.n_test}}};

  std::vector<NLIPair> out;
  std::set<std::string> used_keys;
  std::set<std::string> used_premises;
  std::map<Label, size_t> label_counts;
  size_t quota_index = 0;
  int filled = 0;
  while (quota_index < quotas.size() && quotas[quota_index].want == 0) {
    ++quota_index;
  }

  RandomSource premise_rng = rng.split("mono-premise");
  RandomSource select_rng = rng.split("mono-select");

  // Appends one selected pair, stamping the split; trims by refusing pairs
  // once every quota is full.
  auto place = [&](NLIPair pair) {
    if (quota_index >= quotas.size()) return;
    pair.split = quotas[quota_index].split;
    out.push_back(std::move(pair));
    if (++filled >= quotas[quota_index].want) {
      filled = 0;
      do {
        ++quota_index;
      } while (quota_index < quotas.size() && quotas[quota_index].want == 0);
    }
  };

  // Consumes one searched premise, greedily keeping the pairs whose labels
  // the dataset is shortest on. The take is capped by what the current split
  // still needs, so a premise's pairs never straddle a split boundary.
  auto harvest = [&](const std::string& premise_text,
                     const SubstitutionSets& sets, int cap) {
    if (quota_index >= quotas.size()) return;
    std::array<Bucket, 3> buckets = {{{Label::kEntailment, {}, 0},
                                      {Label::kNeutral, {}, 0},
                                      {Label::kContradiction, {}, 0}}};
    for (const DerivedSentence& d : sets.infer) buckets[0].items.push_back(&d);
    for (const DerivedSentence& d : sets.neutr) buckets[1].items.push_back(&d);
    for (const DerivedSentence& d : sets.contr) buckets[2].items.push_back(&d);
    for (Bucket& b : buckets) select_rng.shuffle(b.items);

    int room = quotas[quota_index].want - filled;
    int limit = cap > 0 ? std::min(cap, room) : room;
    int taken = 0;
    while (taken < limit) {
      Bucket* pick = nullptr;
      for (Bucket& b : buckets) {
        if (b.exhausted()) continue;
        if (pick == nullptr ||
            label_counts[b.label] < label_counts[pick->label]) {
          pick = &b;
        }
      }
      if (pick == nullptr) break;
      const DerivedSentence& d = *pick->items[pick->next++];
      NLIPair pair = make_pair(premise_text, d, pick->label, fragment);
      if (!used_keys.insert(canonical_key(pair)).second) continue;
      ++label_counts[pair.label];
      place(std::move(pair));
      ++taken;
    }
  };

  // A premise queued for searching; search() is pure, so blocks of premises
  // fan out across workers while every rng draw and every selection step
  // stays on this thread, in premise order. Output is therefore identical
  // for any worker count.
  struct Job {
    ParseTree polarized;
    std::string text;
    int depth = 0;
    int cap = 0;
    SubstitutionSets sets;
  };

  auto run_block = [&](std::vector<Job>& block) {
    auto search_one = [&](Job& job) {
      SearchConfig sc = search_cfg;
      sc.depth = job.depth;
      job.sets = search(job.polarized, lexicon, kb, sc);
    };
    int n_workers = std::max(1, workers);
    if (n_workers == 1 || block.size() <= 1) {
      for (Job& job : block) search_one(job);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(n_workers);
      for (int t = 0; t < n_workers; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (size_t i = t; i < block.size(); i += n_workers) {
              search_one(block[i]);
            }
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (std::thread& th : pool) th.join();
      for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (Job& job : block) {
      if (quota_index >= quotas.size()) break;
      harvest(job.text, job.sets, job.cap);
    }
    block.clear();
  };

  // Polarizes and dedups a premise; queues a search job when it is new.
  auto enqueue = [&](ParseTree tree, int depth, int cap,
                     std::vector<Job>& block) {
    polarize(tree);
    std::string text = render_sentence(tree);
    if (!used_premises.insert(canonicalize(text)).second) return;
    block.push_back(Job{std::move(tree), std::move(text), depth, cap, {}});
  };

  std::vector<Job> block;
  for (const std::string& seed : build.seed_premises) {
    enqueue(parse_sentence(lexicon, seed), build.seed_depth, build.seed_cap,
            block);
  }
  run_block(block);

  constexpr size_t kBlockSize = 32;  // fixed: block boundaries must not
                                     // depend on the worker count
  uint64_t attempts = 0;
  bool budget_hit = false;
  while (quota_index < quotas.size() && !budget_hit) {
    while (block.size() < kBlockSize) {
      if (attempts >= build.max_premises) {
        budget_hit = true;
        break;
      }
      ++attempts;
      enqueue(generate_premise(lexicon, config, premise_rng),
              search_cfg.depth, search_cfg.max_pairs_per_premise, block);
    }
    run_block(block);
  }
  if (quota_index < quotas.size()) {
    int wanted = build.n_train + build.n_dev + build.n_test;
    throw GenerationError(
        "monotonicity generation exhausted after " +
        std::to_string(build.max_premises) + " premises: placed " +
        std::to_string(out.size()) + " of " + std::to_string(wanted) +
        " pairs");
  }
  return out;
}

std::vector<NLIPair> build_logic_fragment(const GeneratorConfig& cfg,
                                          const NameInventory& inventory,
                                          const RandomSource& rng) {
  InventoryPartition part = partition_inventory(inventory, rng);
  return generate_logic(cfg, part.train, part.test, rng);
}

DatasetStats compute_stats(const std::vector<NLIPair>& pairs) {
  if (pairs.empty()) throw DataError("stats: dataset is empty");
  DatasetStats stats;
  stats.fragment = pairs.front().fragment;
  std::set<std::string> vocab;
  uint64_t token_total = 0;
  for (const NLIPair& pair : pairs) {
    if (pair.fragment != stats.fragment) {
      throw DataError("stats: rows from mixed fragments");
    }
    ++stats.n_pairs;
    ++stats.label_histogram[pair.label];
    ++stats.split_histogram[pair.split];
    for (const std::string* text : {&pair.premise, &pair.hypothesis}) {
      std::vector<std::string> tokens = tokenize(canonicalize(*text));
      token_total += tokens.size();
      vocab.insert(tokens.begin(), tokens.end());
    }
  }
  stats.vocab_size = vocab.size();
  stats.avg_sentence_len =
      static_cast<double>(token_total) / (2.0 * static_cast<double>(stats.n_pairs));
  return stats;
}

std::string format_stats(const DatasetStats& stats) {
  std::ostringstream os;
  os << "fragment: " << to_string(stats.fragment) << "\n";
  os << "pairs: " << stats.n_pairs << "\n";
  os << "vocab size: " << stats.vocab_size << "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", stats.avg_sentence_len);
  os << "avg sentence length: " << buf << "\n";
  os << "labels:";
  for (const auto& [label, count] : stats.label_histogram) {
    std::snprintf(buf, sizeof(buf), "%.1f",
                  100.0 * static_cast<double>(count) /
                      static_cast<double>(stats.n_pairs));
    os << " " << to_string(label) << " " << count << " (" << buf << "%)";
  }
  os << "\n";
  os << "splits:";
  for (const auto& [split, count] : stats.split_histogram) {
    os << " " << to_string(split) << " " << count;
  }
  os << "\n";
  return os.str();
}

ParaphraseTable ParaphraseTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open paraphrase table: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

ParaphraseTable ParaphraseTable::parse(const std::string& content,
                                       const std::string& origin) {
  ParaphraseTable table;
  std::set<std::string> targets;
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto where = [&] { return origin + ":" + std::to_string(line_no); };
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(where() + ": expected 'from<TAB>to'");
    }
    std::string from = to_lower(strip(line.substr(0, tab)));
    std::string to = to_lower(strip(line.substr(tab + 1)));
    if (from.empty() || to.empty()) {
      throw DataError(where() + ": empty phrase");
    }
    if (!table.mapping.emplace(from, to).second) {
      throw DataError(where() + ": duplicate source phrase '" + from + "'");
    }
    if (!targets.insert(to).second) {
      throw DataError(where() + ": mapping is not injective ('" + to +
                      "' repeats)");
    }
  }
  return table;
}

namespace {

constexpr std::array<LexCategory, 14> kAllCategories = {
    LexCategory::kDet,         LexCategory::kAdjAnimate,
    LexCategory::kAdjInanimate, LexCategory::kAdjPred,
    LexCategory::kAdjSmell,    LexCategory::kAdjSubsective,
    LexCategory::kNAnimate,    LexCategory::kNInanimate,
    LexCategory::kNSmell,      LexCategory::kVt,
    LexCategory::kVi,          LexCategory::kP,
    LexCategory::kNeg,         LexCategory::kRel,
};

std::string naive_plural(const std::string& noun) {
  for (const char* suffix : {"s", "x", "z", "ch", "sh"}) {
    if (ends_with(noun, suffix)) return noun + "es";
  }
  return noun + "s";
}

}  // namespace

void validate_paraphrase_table(const ParaphraseTable& table,
                               const Lexicon& lexicon) {
  for (const auto& [from, to] : table.mapping) {
    for (LexCategory category : kAllCategories) {
      if (lexicon.find(category, to) != nullptr) {
        throw DataError("paraphrase target '" + to +
                        "' collides with the lexicon");
      }
    }
    if (lexicon.is_noun_surface(to)) {
      throw DataError("paraphrase target '" + to +
                      "' collides with the lexicon");
    }
  }
}

std::vector<NLIPair> paraphrase_dev(const std::vector<NLIPair>& dataset,
                                    const ParaphraseTable& table,
                                    const Lexicon& lexicon) {
  auto lookup_noun = [&](const std::string& token) -> std::string {
    auto exact = table.mapping.find(token);
    if (exact != table.mapping.end()) return exact->second;
    std::optional<NounForm> form = lexicon.noun_form(token);
    if (form.has_value()) {
      auto lemma = table.mapping.find(form->entry->surface);
      if (lemma != table.mapping.end()) {
        return form->number == DetNumber::kPlural ? naive_plural(lemma->second)
                                                  : lemma->second;
      }
    }
    throw DataError("paraphrase table does not cover '" + token + "'");
  };

  auto rewrite = [&](const std::string& text) {
    std::vector<std::string> tokens = tokenize(text);
    std::vector<std::string> lower;
    lower.reserve(tokens.size());
    for (const std::string& t : tokens) lower.push_back(to_lower(t));

    std::string out;
    size_t i = 0;
    while (i < tokens.size()) {
      if (!out.empty()) out += ' ';
      size_t start = out.size();

      size_t vt_words = 0;
      size_t vi_words = 0;
      const LexEntry* vt =
          lexicon.match_longest(lower, i, LexCategory::kVt, &vt_words);
      const LexEntry* vi =
          lexicon.match_longest(lower, i, LexCategory::kVi, &vi_words);
      const LexEntry* verb = vt;
      size_t verb_words = vt_words;
      if (vi != nullptr && (verb == nullptr || vi_words > vt_words)) {
        verb = vi;
        verb_words = vi_words;
      }
      if (verb != nullptr) {
        auto it = table.mapping.find(verb->surface);
        if (it == table.mapping.end()) {
          throw DataError("paraphrase table does not cover '" +
                          verb->surface + "'");
        }
        out += it->second;
        i += verb_words;
      } else if (lexicon.is_noun_surface(lower[i])) {
        out += lookup_noun(lower[i]);
        i += 1;
      } else {
        out += tokens[i];
        i += 1;
      }
      // The sentence-initial word keeps its capitalization through rewrites.
      if (start == 0 && !tokens.empty() && !out.empty() &&
          std::isupper(static_cast<unsigned char>(tokens[0][0]))) {
        out[0] = static_cast<char>(
            std::toupper(static_cast<unsigned char>(out[0])));
      }
    }
    return out;
  };

  std::vector<NLIPair> result;
  result.reserve(dataset.size());
  for (const NLIPair& pair : dataset) {
    NLIPair copy = pair;
    copy.premise = rewrite(pair.premise);
    copy.hypothesis = rewrite(pair.hypothesis);
    result.push_back(std::move(copy));
  }
  return result;
}

}  // namespace semfrag
