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

#include "semfrag/knowledge_base.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <utility>

#include "semfrag/text.hpp"

namespace semfrag {
namespace {

// Shortest chain of direct leq edges from `from` to `to`, inclusive, found by
// breadth-first search. Both endpoints are assumed connected.
std::vector<std::string> find_chain(
    const std::map<std::string, std::vector<std::string>>& adj,
    const std::string& from, const std::string& to) {
  std::map<std::string, std::string> parent;
  std::deque<std::string> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    if (cur == to) break;
    auto it = adj.find(cur);
    if (it == adj.end()) continue;
    for (const std::string& next : it->second) {
      if (parent.emplace(next, cur).second) queue.push_back(next);
    }
  }
  std::vector<std::string> chain;
  for (std::string cur = to; ; cur = parent.at(cur)) {
    chain.push_back(cur);
    if (cur == from) break;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::string format_chain(const std::vector<std::string>& chain) {
  std::string out;
  for (const std::string& link : chain) {
    if (!out.empty()) out += " <= ";
    out += "'" + link + "'";
  }
  return out;
}

}  // namespace

std::string to_string(KbDirection dir) {
  switch (dir) {
    case KbDirection::kGreater:
      return "greater";
    case KbDirection::kLess:
      return "less";
    case KbDirection::kNegate:
      return "negate";
  }
  return "greater";
}

void KnowledgeBase::add_leq(const std::string& lo, const std::string& hi) {
  if (lo.empty() || hi.empty()) {
    throw KbError("knowledge base phrases must be nonempty");
  }
  leq_edges_.emplace_back(lo, hi);
  phrases_.insert(lo);
  phrases_.insert(hi);
  closed_ = false;
}

void KnowledgeBase::add_eq(const std::string& a, const std::string& b) {
  add_leq(a, b);
  add_leq(b, a);
}

void KnowledgeBase::add_antonym(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty()) {
    throw KbError("knowledge base phrases must be nonempty");
  }
  if (a == b) {
    throw KbError("phrase '" + a + "' cannot be incompatible with itself");
  }
  antonym_pairs_.emplace_back(a, b);
  phrases_.insert(a);
  phrases_.insert(b);
  closed_ = false;
}

void KnowledgeBase::add_adjective_rules(const Lexicon& lexicon) {
  static constexpr std::pair<LexCategory, LexCategory> kSortPairs[] = {
      {LexCategory::kAdjAnimate, LexCategory::kNAnimate},
      {LexCategory::kAdjInanimate, LexCategory::kNInanimate},
  };
  for (const auto& [adj_cat, noun_cat] : kSortPairs) {
    for (const LexEntry* adj : lexicon.by_category(adj_cat)) {
      for (const LexEntry* noun : lexicon.by_category(noun_cat)) {
        add_leq(adj->surface + " " + noun->surface, noun->surface);
      }
    }
  }
}

void KnowledgeBase::close() {
  up_.clear();
  down_.clear();
  incompatible_.clear();

  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [lo, hi] : leq_edges_) adj[lo].push_back(hi);

  for (const std::string& start : phrases_) {
    std::set<std::string> seen{start};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      auto it = adj.find(cur);
      if (it == adj.end()) continue;
      for (const std::string& next : it->second) {
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    up_[start] = std::move(seen);
    for (const std::string& above : up_[start]) down_[above].insert(start);
  }

  for (const auto& [a, b] : antonym_pairs_) {
    // Consistency: nothing may entail both sides of an incompatibility.
    for (const std::string& x : down_[a]) {
      if (down_[b].count(x) != 0) {
        std::string msg = "inconsistent knowledge base: '" + a +
                          "' is declared incompatible with '" + b + "' but '" +
                          x + "' entails both";
        msg += " (" + format_chain(find_chain(adj, x, a)) + "; " +
               format_chain(find_chain(adj, x, b)) + ")";
        throw KbError(msg);
      }
    }
    for (const std::string& x : down_[a]) {
      for (const std::string& y : down_[b]) {
        incompatible_[x].insert(y);
        incompatible_[y].insert(x);
      }
    }
  }
  closed_ = true;
}

bool KnowledgeBase::leq(const std::string& lo, const std::string& hi) const {
  if (!closed_) throw KbError("knowledge base queried before close()");
  if (lo == hi) return true;
  auto it = up_.find(lo);
  return it != up_.end() && it->second.count(hi) != 0;
}

bool KnowledgeBase::eq(const std::string& a, const std::string& b) const {
  return leq(a, b) && leq(b, a);
}

bool KnowledgeBase::antonym(const std::string& a, const std::string& b) const {
  if (!closed_) throw KbError("knowledge base queried before close()");
  auto it = incompatible_.find(a);
  return it != incompatible_.end() && it->second.count(b) != 0;
}

bool KnowledgeBase::known(const std::string& phrase) const {
  return phrases_.count(phrase) != 0;
}

KnowledgeBase KnowledgeBase::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open knowledge base file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

KnowledgeBase KnowledgeBase::parse(std::string_view content,
                                   const std::string& origin) {
  KnowledgeBase kb;
  std::istringstream stream{std::string(content)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::string line = strip(raw);
    if (line.empty()) continue;

    const std::string where = origin + ":" + std::to_string(line_no);
    auto binary = [&](const std::string& op,
                      std::pair<std::string, std::string>* out) {
      auto pos = line.find(op);
      if (pos == std::string::npos) return false;
      out->first = strip(line.substr(0, pos));
      out->second = strip(line.substr(pos + op.size()));
      if (out->first.empty() || out->second.empty()) {
        throw KbError(where + ": missing operand in '" + line + "'");
      }
      return true;
    };

    std::pair<std::string, std::string> operands;
    if (binary(" <= ", &operands)) {
      kb.add_leq(operands.first, operands.second);
    } else if (binary(" = ", &operands)) {
      kb.add_eq(operands.first, operands.second);
    } else if (binary(" ~ ", &operands)) {
      kb.add_antonym(operands.first, operands.second);
    } else {
      throw KbError(where + ": expected 'a <= b', 'a = b', or 'a ~ b', got '" +
                    line + "'");
    }
  }
  return kb;
}

std::vector<std::string> kb_lookup(const KnowledgeBase& kb,
                                   const std::string& phrase,
                                   KbDirection direction) {
  std::vector<std::string> out;
  switch (direction) {
    case KbDirection::kGreater:
      for (const std::string& other : kb.phrases()) {
        if (other != phrase && kb.leq(phrase, other) &&
            !kb.leq(other, phrase)) {
          out.push_back(other);
        }
      }
      break;
    case KbDirection::kLess:
      for (const std::string& other : kb.phrases()) {
        if (other != phrase && kb.leq(other, phrase) &&
            !kb.leq(phrase, other)) {
          out.push_back(other);
        }
      }
      break;
    case KbDirection::kNegate:
      for (const std::string& other : kb.phrases()) {
        if (other != phrase && kb.antonym(phrase, other)) {
          out.push_back(other);
        }
      }
      break;
  }
  return out;  // std::set iteration order keeps this sorted.
}

std::vector<std::string> kb_equivalents(const KnowledgeBase& kb,
                                        const std::string& phrase) {
  std::vector<std::string> out;
  for (const std::string& other : kb.phrases()) {
    if (other != phrase && kb.leq(phrase, other) && kb.leq(other, phrase)) {
      out.push_back(other);
    }
  }
  return out;
}

}  // namespace semfrag
