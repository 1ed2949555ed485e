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

#include "semfrag/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

Mark compose(Mark outer, Mark inner) {
  if (outer == Mark::kFlat || inner == Mark::kFlat) return Mark::kFlat;
  if (outer == inner) return Mark::kUp;
  return Mark::kDown;
}

std::string mark_symbol(Mark mark, bool ascii) {
  switch (mark) {
    case Mark::kUp: return ascii ? "^" : "↑";
    case Mark::kDown: return ascii ? "v" : "↓";
    case Mark::kFlat: return "=";
  }
  throw LexiconError("unknown mark");
}

std::string to_string(Mark mark) {
  switch (mark) {
    case Mark::kUp: return "up";
    case Mark::kDown: return "down";
    case Mark::kFlat: return "eq";
  }
  throw LexiconError("unknown mark");
}

Mark mark_from_string(const std::string& s) {
  if (s == "up") return Mark::kUp;
  if (s == "down") return Mark::kDown;
  if (s == "eq") return Mark::kFlat;
  throw LexiconError("unknown mark '" + s + "' (expected up|down|eq)");
}

namespace {

const std::map<std::string, LexCategory>& category_names() {
  static const std::map<std::string, LexCategory> kNames = {
      {"Det", LexCategory::kDet},
      {"Adj_animate", LexCategory::kAdjAnimate},
      {"Adj_inanimate", LexCategory::kAdjInanimate},
      {"Adj_pred", LexCategory::kAdjPred},
      {"Adj_smell", LexCategory::kAdjSmell},
      {"Adj_subsective", LexCategory::kAdjSubsective},
      {"N_animate", LexCategory::kNAnimate},
      {"N_inanimate", LexCategory::kNInanimate},
      {"N_smell", LexCategory::kNSmell},
      {"Vt", LexCategory::kVt},
      {"Vi", LexCategory::kVi},
      {"P", LexCategory::kP},
      {"Neg", LexCategory::kNeg},
      {"Rel", LexCategory::kRel},
  };
  return kNames;
}

}  // namespace

std::string to_string(LexCategory category) {
  for (const auto& [name, cat] : category_names()) {
    if (cat == category) return name;
  }
  throw LexiconError("unknown lexical category");
}

LexCategory lex_category_from_string(const std::string& s) {
  auto it = category_names().find(s);
  if (it == category_names().end()) {
    throw LexiconError("unknown lexical category '" + s + "'");
  }
  return it->second;
}

Lexicon Lexicon::load(const std::string& path, int numeric_min,
                      int numeric_max) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path, numeric_min, numeric_max);
}

Lexicon Lexicon::parse(const std::string& content, const std::string& origin,
                       int numeric_min, int numeric_max) {
  if (numeric_min < 1 || numeric_min > numeric_max) {
    throw LexiconError("bad numeric determiner range");
  }
  Lexicon lex;
  lex.numeric_min_ = numeric_min;
  lex.numeric_max_ = numeric_max;

  std::set<std::pair<LexCategory, std::string>> seen;
  auto add = [&](LexEntry entry, int line_no) {
    if (!seen.insert({entry.category, entry.surface}).second) {
      throw LexiconError(origin + ":" + std::to_string(line_no) +
                         ": duplicate surface '" + entry.surface +
                         "' in category " + to_string(entry.category));
    }
    lex.entries_.push_back(std::move(entry));
  };

  int line_no = 0;
  std::istringstream stream(content);
  std::string raw;
  while (std::getline(stream, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> fields = split_on(line, '\t');
    if (fields.size() < 2) {
      throw LexiconError(origin + ":" + std::to_string(line_no) +
                         ": expected surface<TAB>category[<TAB>extra]");
    }
    LexEntry entry;
    entry.surface = canonicalize(fields[0]);
    if (entry.surface.empty()) {
      throw LexiconError(origin + ":" + std::to_string(line_no) +
                         ": empty surface");
    }
    entry.category = lex_category_from_string(strip(fields[1]));
    std::string extra = fields.size() > 2 ? strip(fields[2]) : "";

    if (entry.category == LexCategory::kDet) {
      std::vector<std::string> parts = split_on(extra, ',');
      if (parts.size() != 3) {
        throw LexiconError(origin + ":" + std::to_string(line_no) +
                           ": Det needs extra 'restrictor,scope,number'");
      }
      entry.signature = DetSignature{mark_from_string(strip(parts[0])),
                                     mark_from_string(strip(parts[1]))};
      std::string number = strip(parts[2]);
      entry.det_family = entry.surface;

      if (number == "n") {
        // Numeric family: expand "<words> n" over the configured range.
        if (!ends_with(entry.surface, " n")) {
          throw LexiconError(origin + ":" + std::to_string(line_no) +
                             ": numeric determiner surface must end in ' n'");
        }
        std::string stem = entry.surface.substr(0, entry.surface.size() - 2);
        for (int n = numeric_min; n <= numeric_max; ++n) {
          LexEntry inst = entry;
          inst.surface = stem + " " + std::to_string(n);
          inst.numeric_n = n;
          inst.det_number = n == 1 ? DetNumber::kSingular : DetNumber::kPlural;
          add(std::move(inst), line_no);
        }
        continue;
      }
      if (number == "sg") {
        entry.det_number = DetNumber::kSingular;
      } else if (number == "pl") {
        entry.det_number = DetNumber::kPlural;
      } else {
        throw LexiconError(origin + ":" + std::to_string(line_no) +
                           ": Det number must be sg|pl|n, got '" + number +
                           "'");
      }
      add(std::move(entry), line_no);
      continue;
    }

    if (!extra.empty() && !entry.is_noun()) {
      throw LexiconError(origin + ":" + std::to_string(line_no) + ": " +
                         to_string(entry.category) +
                         " entries take no extra field");
    }
    if (entry.is_noun()) {
      if (extra.empty()) {
        throw LexiconError(origin + ":" + std::to_string(line_no) +
                           ": noun needs its plural form in the extra field");
      }
      entry.plural = canonicalize(extra);
    }
    add(std::move(entry), line_no);
  }

  // Sanity: the grammar needs at least one entry in every category it uses.
  for (const auto& [name, cat] : category_names()) {
    bool found = false;
    for (const LexEntry& e : lex.entries_) {
      if (e.category == cat) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw LexiconError(origin + ": lexicon has no " + name + " entries");
    }
  }
  return lex;
}

std::vector<const LexEntry*> Lexicon::by_category(LexCategory category) const {
  std::vector<const LexEntry*> out;
  for (const LexEntry& e : entries_) {
    if (e.category == category) out.push_back(&e);
  }
  return out;
}

const LexEntry* Lexicon::find(LexCategory category,
                              const std::string& surface) const {
  for (const LexEntry& e : entries_) {
    if (e.category == category && e.surface == surface) return &e;
  }
  return nullptr;
}

const LexEntry* Lexicon::match_longest(const std::vector<std::string>& tokens,
                                       size_t pos, LexCategory category,
                                       size_t* matched_words) const {
  const LexEntry* best = nullptr;
  size_t best_len = 0;
  for (const LexEntry& e : entries_) {
    if (e.category != category) continue;
    std::vector<std::string> words = tokenize(e.surface);
    if (words.size() <= best_len || pos + words.size() > tokens.size()) {
      continue;
    }
    bool ok = true;
    for (size_t i = 0; i < words.size(); ++i) {
      if (to_lower(tokens[pos + i]) != words[i]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      best = &e;
      best_len = words.size();
    }
  }
  if (best && matched_words) *matched_words = best_len;
  return best;
}

std::optional<NounForm> Lexicon::noun_form(const std::string& surface) const {
  std::string s = to_lower(surface);
  for (const LexEntry& e : entries_) {
    if (!e.is_noun()) continue;
    if (e.surface == s) return NounForm{&e, DetNumber::kSingular};
    if (e.plural == s) return NounForm{&e, DetNumber::kPlural};
  }
  return std::nullopt;
}

std::string Lexicon::inflect(const LexEntry& noun, DetNumber number) const {
  if (!noun.is_noun()) {
    throw LexiconError("inflect called on non-noun '" + noun.surface + "'");
  }
  return number == DetNumber::kPlural ? noun.plural : noun.surface;
}

std::vector<std::string> Lexicon::det_families() const {
  std::vector<std::string> out;
  for (const LexEntry& e : entries_) {
    if (e.category != LexCategory::kDet) continue;
    if (std::find(out.begin(), out.end(), e.det_family) == out.end()) {
      out.push_back(e.det_family);
    }
  }
  return out;
}

std::vector<const LexEntry*> Lexicon::family_members(
    const std::string& family) const {
  std::vector<const LexEntry*> out;
  for (const LexEntry& e : entries_) {
    if (e.category == LexCategory::kDet && e.det_family == family) {
      out.push_back(&e);
    }
  }
  return out;
}

bool Lexicon::is_noun_surface(const std::string& surface) const {
  return noun_form(surface).has_value();
}

bool Lexicon::is_verb_surface(const std::string& surface) const {
  std::string s = to_lower(surface);
  return find(LexCategory::kVi, s) != nullptr ||
         find(LexCategory::kVt, s) != nullptr;
}

}  // namespace semfrag
