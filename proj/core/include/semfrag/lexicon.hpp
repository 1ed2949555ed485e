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

#ifndef SEMFRAG_LEXICON_HPP_
#define SEMFRAG_LEXICON_HPP_

#include <optional>
#include <string>
#include <vector>

namespace semfrag {

// Polarity mark on a token or constituent.
enum class Mark { kUp, kDown, kFlat };

// Composition of monotonicity contexts: flat absorbs everything, two downs
// cancel, a single down flips.
Mark compose(Mark outer, Mark inner);

// "↑" / "↓" / "=" (or "^" / "v" / "=" when ascii is set).
std::string mark_symbol(Mark mark, bool ascii = false);

std::string to_string(Mark mark);
Mark mark_from_string(const std::string& s);  // up|down|eq

enum class LexCategory {
  kDet,
  kAdjAnimate,
  kAdjInanimate,
  kAdjPred,
  kAdjSmell,
  kAdjSubsective,
  kNAnimate,
  kNInanimate,
  kNSmell,
  kVt,
  kVi,
  kP,
  kNeg,
  kRel,
};

std::string to_string(LexCategory category);
LexCategory lex_category_from_string(const std::string& s);

// Grammatical number a determiner imposes on its noun.
enum class DetNumber { kSingular, kPlural };

struct DetSignature {
  Mark restrictor;  // first argument (the Nbar)
  Mark scope;       // second argument (the VP / verb context)
};

struct LexEntry {
  std::string surface;  // lowercase, words space-separated ("at least 3")
  LexCategory category = LexCategory::kDet;
  std::optional<DetSignature> signature;  // determiners only
  std::string plural;                     // nouns only: plural surface form
  DetNumber det_number = DetNumber::kSingular;  // determiners only
  std::string det_family;  // "at least n" for numeric families, else surface
  int numeric_n = 0;       // instantiated n for numeric determiners, else 0

  bool is_noun() const {
    return category == LexCategory::kNAnimate ||
           category == LexCategory::kNInanimate ||
           category == LexCategory::kNSmell;
  }
  bool is_flat_det() const {
    return signature.has_value() && signature->restrictor == Mark::kFlat &&
           signature->scope == Mark::kFlat;
  }
};

// A noun surface resolved to its entry plus the number it was inflected in.
struct NounForm {
  const LexEntry* entry = nullptr;
  DetNumber number = DetNumber::kSingular;
};

// The controlled lexicon. Immutable after load; lookups are by lowercase
// surface. Numeric determiner families ("at least n") are expanded to
// concrete surfaces ("at least 1" ... ) over [numeric_min, numeric_max].
class Lexicon {
 public:
  // Parses the documented tab-separated format:
  //   surface<TAB>category<TAB>extra
  // where extra is "restrictor,scope,number" for Det (marks up|down|eq,
  // number sg|pl|n) and the plural form for noun categories. '#' starts a
  // comment. Throws LexiconError with file:line context.
  static Lexicon load(const std::string& path, int numeric_min = 1,
                      int numeric_max = 5);
  static Lexicon parse(const std::string& content, const std::string& origin,
                       int numeric_min = 1, int numeric_max = 5);

  const std::vector<LexEntry>& entries() const { return entries_; }
  std::vector<const LexEntry*> by_category(LexCategory category) const;

  // Exact-surface lookup within a category; nullptr when absent.
  const LexEntry* find(LexCategory category, const std::string& surface) const;

  // Longest multiword match of a category's surfaces against tokens[pos..];
  // on success *matched_words receives the token count.
  const LexEntry* match_longest(const std::vector<std::string>& tokens,
                                size_t pos, LexCategory category,
                                size_t* matched_words) const;

  // Resolves a noun surface in either number; nullopt when not a noun.
  std::optional<NounForm> noun_form(const std::string& surface) const;

  // Noun surface for the requested number.
  std::string inflect(const LexEntry& noun, DetNumber number) const;

  // Distinct determiner families (numeric families collapsed), in file order.
  std::vector<std::string> det_families() const;
  std::vector<const LexEntry*> family_members(const std::string& family) const;

  // True when the surface is any inflection of a noun / a verb (Vi or Vt).
  bool is_noun_surface(const std::string& surface) const;
  bool is_verb_surface(const std::string& surface) const;

  size_t surface_count() const { return entries_.size(); }

  int numeric_min() const { return numeric_min_; }
  int numeric_max() const { return numeric_max_; }

 private:
  std::vector<LexEntry> entries_;
  int numeric_min_ = 1;
  int numeric_max_ = 5;
};

}  // namespace semfrag

#endif  // SEMFRAG_LEXICON_HPP_
