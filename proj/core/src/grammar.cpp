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

#include "semfrag/grammar.hpp"

#include <utility>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

std::string to_string(MonoVariant variant) {
  return variant == MonoVariant::kSimple ? "simple" : "hard";
}

MonoVariant mono_variant_from_string(const std::string& s) {
  if (s == "simple") return MonoVariant::kSimple;
  if (s == "hard") return MonoVariant::kHard;
  throw ConfigError("unknown monotonicity variant: '" + s +
                    "' (expected simple or hard)");
}

MonoConfig MonoConfig::simple() {
  MonoConfig cfg;
  cfg.variant = MonoVariant::kSimple;
  cfg.quantifier_inventory = {"every", "some", "no", "most", "a"};
  cfg.max_relative_clauses = 1;
  return cfg;
}

MonoConfig MonoConfig::hard() {
  MonoConfig cfg;
  cfg.variant = MonoVariant::kHard;
  cfg.quantifier_inventory = {"every",     "all",  "each",
                              "a",         "some", "many",
                              "several",   "few",  "most",
                              "some but not all", "no",
                              "at least n", "at most n", "exactly n"};
  cfg.max_relative_clauses = 3;
  return cfg;
}

MonoConfig MonoConfig::for_variant(MonoVariant variant) {
  return variant == MonoVariant::kSimple ? simple() : hard();
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kS:
      return "S";
    case NodeKind::kNp:
      return "NP";
    case NodeKind::kRestr:
      return "Restr";
    case NodeKind::kNbar:
      return "Nbar";
    case NodeKind::kSrc:
      return "SRC";
    case NodeKind::kOrc:
      return "ORC";
    case NodeKind::kOrcBody:
      return "ORCBody";
    case NodeKind::kPp:
      return "PP";
    case NodeKind::kPpBody:
      return "PPBody";
    case NodeKind::kVp:
      return "VP";
    case NodeKind::kVpbar:
      return "VPbar";
    case NodeKind::kPred:
      return "Pred";
    case NodeKind::kLeaf:
      return "Leaf";
  }
  return "Leaf";
}

namespace {

ParseTree node(NodeKind kind, std::vector<ParseTree> children) {
  ParseTree t;
  t.kind = kind;
  t.children = std::move(children);
  return t;
}

ParseTree lex_leaf(const LexEntry& entry) { return leaf_from_entry(entry); }

ParseTree copula_leaf() {
  ParseTree leaf;
  leaf.kind = NodeKind::kLeaf;
  leaf.surface = "be";
  leaf.lemma = "be";
  leaf.category = LexCategory::kRel;
  leaf.is_lex = false;
  return leaf;
}

// Random derivation under a shared SRC+ORC budget.
class Generator {
 public:
  Generator(const Lexicon& lex, const MonoConfig& cfg, RandomSource& rng)
      : lex_(lex), cfg_(cfg), rng_(rng), rc_budget_(cfg.max_relative_clauses) {}

  ParseTree gen_s() {
    ParseTree subject = gen_np(/*require_animate=*/true);
    ParseTree vp = gen_vp();
    ParseTree s = node(NodeKind::kS, {std::move(subject), std::move(vp)});
    return s;
  }

 private:
  const LexEntry& pick_entry(LexCategory category) {
    std::vector<const LexEntry*> options = lex_.by_category(category);
    if (options.empty()) {
      throw ConfigError("lexicon has no entries of category " +
                        to_string(category));
    }
    return *options[rng_.below(options.size())];
  }

  ParseTree gen_det() {
    const std::string& family =
        cfg_.quantifier_inventory[rng_.below(cfg_.quantifier_inventory.size())];
    std::vector<const LexEntry*> members = lex_.family_members(family);
    if (members.empty()) {
      throw ConfigError("quantifier family not in lexicon: '" + family + "'");
    }
    const LexEntry* entry = members.front();
    if (members.size() > 1) {
      int n = static_cast<int>(rng_.range(cfg_.numeric_min, cfg_.numeric_max));
      entry = nullptr;
      for (const LexEntry* member : members) {
        if (member->numeric_n == n) entry = member;
      }
      if (entry == nullptr) {
        throw ConfigError("numeric range [" +
                          std::to_string(cfg_.numeric_min) + ", " +
                          std::to_string(cfg_.numeric_max) +
                          "] exceeds the lexicon instantiation of '" + family +
                          "'");
      }
    }
    return lex_leaf(*entry);
  }

  ParseTree gen_np(bool require_animate) {
    ParseTree det = gen_det();
    bool animate =
        require_animate || rng_.chance(cfg_.p_object_animate, 1000);

    std::vector<ParseTree> restr_children;
    if (rng_.chance(cfg_.p_adj, 1000)) {
      restr_children.push_back(lex_leaf(pick_entry(
          animate ? LexCategory::kAdjAnimate : LexCategory::kAdjInanimate)));
    }
    restr_children.push_back(gen_nbar(animate, det.number));

    ParseTree restr = node(NodeKind::kRestr, std::move(restr_children));
    restr.animate = animate;
    ParseTree np = node(NodeKind::kNp, {std::move(det), std::move(restr)});
    np.animate = animate;
    return np;
  }

  ParseTree gen_nbar(bool animate, DetNumber number) {
    const LexEntry& noun_entry = pick_entry(
        animate ? LexCategory::kNAnimate : LexCategory::kNInanimate);
    ParseTree noun = lex_leaf(noun_entry);
    noun.surface = lex_.inflect(noun_entry, number);
    noun.number = number;

    std::vector<ParseTree> children;
    children.push_back(std::move(noun));

    if (animate && rng_.chance(cfg_.p_modifier, 1000)) {
      bool rc_ok = rc_budget_ > 0;
      std::vector<std::uint32_t> weights = {rc_ok ? cfg_.w_src : 0,
                                            rc_ok ? cfg_.w_orc : 0, cfg_.w_pp};
      if (weights[0] + weights[1] + weights[2] > 0) {
        switch (rng_.pick_weighted(weights)) {
          case 0:
            --rc_budget_;
            children.push_back(gen_src());
            break;
          case 1:
            --rc_budget_;
            children.push_back(gen_orc());
            break;
          default:
            children.push_back(gen_pp());
            break;
        }
      }
    }
    ParseTree nbar = node(NodeKind::kNbar, std::move(children));
    nbar.animate = animate;
    return nbar;
  }

  ParseTree who_leaf() {
    const LexEntry* who = lex_.find(LexCategory::kRel, "who");
    if (who == nullptr) throw ConfigError("lexicon is missing 'who'");
    return lex_leaf(*who);
  }

  ParseTree gen_src() {
    return node(NodeKind::kSrc, {who_leaf(), gen_vp()});
  }

  ParseTree gen_orc() {
    ParseTree body = node(
        NodeKind::kOrcBody,
        {gen_np(/*require_animate=*/true), lex_leaf(pick_entry(LexCategory::kVt))});
    return node(NodeKind::kOrc, {who_leaf(), std::move(body)});
  }

  ParseTree gen_pp() {
    ParseTree body =
        node(NodeKind::kPpBody, {lex_leaf(pick_entry(LexCategory::kAdjSmell)),
                                 lex_leaf(pick_entry(LexCategory::kNSmell))});
    return node(NodeKind::kPp,
                {lex_leaf(pick_entry(LexCategory::kP)), std::move(body)});
  }

  ParseTree gen_vp() {
    std::uint64_t roll = rng_.below(1000);
    if (roll < cfg_.p_copula) {
      std::vector<ParseTree> pred_children;
      if (rng_.chance(cfg_.p_pred_not, 1000)) {
        const LexEntry* not_entry = lex_.find(LexCategory::kNeg, "not");
        if (not_entry == nullptr) throw ConfigError("lexicon is missing 'not'");
        pred_children.push_back(lex_leaf(*not_entry));
      }
      pred_children.push_back(lex_leaf(pick_entry(LexCategory::kAdjPred)));
      return node(NodeKind::kVp,
                  {copula_leaf(),
                   node(NodeKind::kPred, std::move(pred_children))});
    }
    if (roll < cfg_.p_copula + cfg_.p_vp_neg) {
      const LexEntry* neg = lex_.find(LexCategory::kNeg, "do not");
      if (neg == nullptr) throw ConfigError("lexicon is missing 'do not'");
      return node(NodeKind::kVp, {lex_leaf(*neg), gen_vpbar()});
    }
    return node(NodeKind::kVp, {gen_vpbar()});
  }

  ParseTree gen_vpbar() {
    if (rng_.chance(cfg_.p_transitive, 1000)) {
      ParseTree verb = lex_leaf(pick_entry(LexCategory::kVt));
      return node(NodeKind::kVpbar,
                  {std::move(verb), gen_np(/*require_animate=*/false)});
    }
    return node(NodeKind::kVpbar, {lex_leaf(pick_entry(LexCategory::kVi))});
  }

  const Lexicon& lex_;
  const MonoConfig& cfg_;
  RandomSource& rng_;
  int rc_budget_;
};

// Deterministic recursive descent; the grammar has no attachment ambiguity
// (a modifier can only modify the noun it directly follows).
class Parser {
 public:
  Parser(const Lexicon& lex, const std::string& text) : lex_(lex) {
    raw_ = tokenize(text);
    low_.reserve(raw_.size());
    for (const std::string& t : raw_) low_.push_back(to_lower(t));
  }

  ParseTree parse() {
    if (raw_.empty()) throw SentenceError("empty sentence");
    ParseTree s = node(NodeKind::kS, {});
    s.children.push_back(parse_np(/*require_animate=*/true));
    s.children.push_back(parse_vp());
    if (pos_ != raw_.size()) fail("unexpected trailing tokens");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    std::string at = pos_ < raw_.size()
                         ? "at token " + std::to_string(pos_ + 1) + " ('" +
                               raw_[pos_] + "')"
                         : "at end of input";
    throw SentenceError(why + " " + at + " in \"" + join(raw_) + "\"");
  }

  bool at_end() const { return pos_ >= raw_.size(); }

  const LexEntry* peek(LexCategory category, size_t* words) const {
    if (at_end()) return nullptr;
    return lex_.match_longest(low_, pos_, category, words);
  }

  ParseTree take(const LexEntry& entry, size_t words) {
    ParseTree leaf = lex_leaf(entry);
    std::vector<std::string> span(raw_.begin() + static_cast<long>(pos_),
                                  raw_.begin() + static_cast<long>(pos_ + words));
    leaf.surface = join(span);
    leaf.lemma = entry.surface;
    pos_ += words;
    return leaf;
  }

  ParseTree parse_np(bool require_animate) {
    size_t words = 0;
    const LexEntry* det = peek(LexCategory::kDet, &words);
    if (det == nullptr) fail("expected a determiner");
    ParseTree det_leaf = take(*det, words);

    // Optional adjective; the animate and inanimate surface sets are
    // disjoint, so at most one category matches.
    std::optional<ParseTree> adj;
    bool animate = require_animate;
    if (const LexEntry* a = peek(LexCategory::kAdjAnimate, &words)) {
      adj = take(*a, words);
      animate = true;
    } else if (const LexEntry* i = peek(LexCategory::kAdjInanimate, &words)) {
      if (require_animate) fail("expected an animate noun phrase");
      adj = take(*i, words);
      animate = false;
    }

    if (at_end()) fail("expected a noun");
    std::optional<NounForm> form = lex_.noun_form(low_[pos_]);
    if (!form.has_value()) fail("expected a noun");
    const LexEntry& noun_entry = *form->entry;
    bool noun_animate = noun_entry.category == LexCategory::kNAnimate;
    if (noun_entry.category == LexCategory::kNSmell) {
      fail("smell nouns only occur inside prepositional phrases");
    }
    if (adj.has_value() && noun_animate != animate) {
      fail("adjective and noun sorts disagree");
    }
    if (require_animate && !noun_animate) {
      fail("expected an animate noun");
    }
    animate = noun_animate;
    if (form->number != det->det_number) {
      fail("determiner '" + det->surface + "' requires a " +
           (det->det_number == DetNumber::kPlural ? "plural" : "singular") +
           " noun");
    }

    ParseTree noun = lex_leaf(noun_entry);
    noun.surface = raw_[pos_];
    noun.lemma = noun_entry.surface;
    noun.number = form->number;
    ++pos_;

    std::vector<ParseTree> nbar_children;
    nbar_children.push_back(std::move(noun));
    if (animate) {
      if (std::optional<ParseTree> mod = parse_modifier()) {
        nbar_children.push_back(std::move(*mod));
      }
    }
    ParseTree nbar = node(NodeKind::kNbar, std::move(nbar_children));
    nbar.animate = animate;

    std::vector<ParseTree> restr_children;
    if (adj.has_value()) restr_children.push_back(std::move(*adj));
    restr_children.push_back(std::move(nbar));
    ParseTree restr = node(NodeKind::kRestr, std::move(restr_children));
    restr.animate = animate;

    ParseTree np = node(NodeKind::kNp, {std::move(det_leaf), std::move(restr)});
    np.animate = animate;
    return np;
  }

  std::optional<ParseTree> parse_modifier() {
    size_t words = 0;
    if (const LexEntry* rel = peek(LexCategory::kRel, &words)) {
      ParseTree who = take(*rel, words);
      // Determiner next means an object relative clause.
      size_t det_words = 0;
      if (peek(LexCategory::kDet, &det_words) != nullptr) {
        ParseTree embedded = parse_np(/*require_animate=*/true);
        const LexEntry* vt = peek(LexCategory::kVt, &words);
        if (vt == nullptr) fail("expected a transitive verb to close the relative clause");
        ParseTree body = node(NodeKind::kOrcBody,
                              {std::move(embedded), take(*vt, words)});
        return node(NodeKind::kOrc, {std::move(who), std::move(body)});
      }
      return node(NodeKind::kSrc, {std::move(who), parse_vp()});
    }
    if (const LexEntry* p = peek(LexCategory::kP, &words)) {
      ParseTree p_leaf = take(*p, words);
      const LexEntry* smell_adj = peek(LexCategory::kAdjSmell, &words);
      if (smell_adj == nullptr) fail("expected a smell adjective");
      ParseTree adj_leaf = take(*smell_adj, words);
      if (at_end()) fail("expected a smell noun");
      std::optional<NounForm> form = lex_.noun_form(low_[pos_]);
      if (!form.has_value() ||
          form->entry->category != LexCategory::kNSmell) {
        fail("expected a smell noun");
      }
      ParseTree noun = lex_leaf(*form->entry);
      noun.surface = raw_[pos_];
      noun.number = form->number;
      ++pos_;
      ParseTree body =
          node(NodeKind::kPpBody, {std::move(adj_leaf), std::move(noun)});
      return node(NodeKind::kPp, {std::move(p_leaf), std::move(body)});
    }
    return std::nullopt;
  }

  ParseTree parse_vp() {
    if (at_end()) fail("expected a verb phrase");
    if (low_[pos_] == "be") {
      ParseTree be = copula_leaf();
      be.surface = raw_[pos_];
      ++pos_;
      std::vector<ParseTree> pred_children;
      size_t words = 0;
      if (const LexEntry* neg = peek(LexCategory::kNeg, &words);
          neg != nullptr && neg->surface == "not") {
        pred_children.push_back(take(*neg, words));
      }
      const LexEntry* pred = peek(LexCategory::kAdjPred, &words);
      if (pred == nullptr) fail("expected a predicate adjective");
      pred_children.push_back(take(*pred, words));
      return node(NodeKind::kVp,
                  {std::move(be), node(NodeKind::kPred, std::move(pred_children))});
    }
    size_t words = 0;
    if (const LexEntry* neg = peek(LexCategory::kNeg, &words);
        neg != nullptr && neg->surface == "do not") {
      ParseTree neg_leaf = take(*neg, words);
      return node(NodeKind::kVp, {std::move(neg_leaf), parse_vpbar()});
    }
    return node(NodeKind::kVp, {parse_vpbar()});
  }

  ParseTree parse_vpbar() {
    size_t words = 0;
    if (const LexEntry* vt = peek(LexCategory::kVt, &words)) {
      ParseTree verb = take(*vt, words);
      return node(NodeKind::kVpbar,
                  {std::move(verb), parse_np(/*require_animate=*/false)});
    }
    if (const LexEntry* vi = peek(LexCategory::kVi, &words)) {
      return node(NodeKind::kVpbar, {take(*vi, words)});
    }
    fail("expected a verb");
  }

  const Lexicon& lex_;
  std::vector<std::string> raw_;
  std::vector<std::string> low_;
  size_t pos_ = 0;
};

void collect_tokens(const ParseTree& tree, std::vector<std::string>* out) {
  if (tree.is_leaf()) {
    for (const std::string& word : split_on(to_lower(tree.surface), ' ')) {
      if (!word.empty()) out->push_back(word);
    }
    return;
  }
  for (const ParseTree& child : tree.children) collect_tokens(child, out);
}

}  // namespace

ParseTree leaf_from_entry(const LexEntry& entry) {
  ParseTree leaf;
  leaf.kind = NodeKind::kLeaf;
  leaf.surface = entry.surface;
  leaf.lemma = entry.surface;
  leaf.category = entry.category;
  leaf.is_lex = true;
  leaf.signature = entry.signature;
  leaf.number = entry.det_number;
  leaf.det_family = entry.det_family;
  leaf.numeric_n = entry.numeric_n;
  leaf.animate = entry.category == LexCategory::kAdjAnimate ||
                 entry.category == LexCategory::kNAnimate;
  return leaf;
}

ParseTree generate_premise(const Lexicon& lexicon, const MonoConfig& config,
                           RandomSource& rng) {
  if (config.quantifier_inventory.empty()) {
    throw ConfigError("quantifier inventory is empty");
  }
  Generator gen(lexicon, config, rng);
  return gen.gen_s();
}

ParseTree parse_sentence(const Lexicon& lexicon, const std::string& text) {
  Parser parser(lexicon, text);
  return parser.parse();
}

std::string render_sentence(const ParseTree& tree) {
  return capitalize(join(sentence_tokens(tree)));
}

std::vector<std::string> sentence_tokens(const ParseTree& tree) {
  std::vector<std::string> out;
  collect_tokens(tree, &out);
  return out;
}

int count_relative_clauses(const ParseTree& tree) {
  int count =
      tree.kind == NodeKind::kSrc || tree.kind == NodeKind::kOrc ? 1 : 0;
  for (const ParseTree& child : tree.children) {
    count += count_relative_clauses(child);
  }
  return count;
}

}  // namespace semfrag
