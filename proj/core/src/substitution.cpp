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

#include "semfrag/substitution.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

std::string to_string(SubDirection direction) {
  switch (direction) {
    case SubDirection::kGeneralize:
      return "generalize";
    case SubDirection::kSpecialize:
      return "specialize";
    case SubDirection::kEquivalent:
      return "equivalent";
    case SubDirection::kNegate:
      return "negate";
  }
  return "generalize";
}

std::string to_string(const SubstitutionStep& step) {
  return step.span + " -> " + step.replacement + " [" +
         to_string(step.direction) + ", " + mark_symbol(step.mark, true) + "]";
}

std::string trace_to_string(const std::vector<SubstitutionStep>& trace) {
  std::string out;
  for (const SubstitutionStep& step : trace) {
    if (!out.empty()) out += "; ";
    out += to_string(step);
  }
  return out;
}

namespace {

// Subject determiners the "replace by no" contradiction rule applies to.
const std::set<std::string>& no_rule_dets() {
  static const std::set<std::string> kSet = {"some", "many", "every",
                                             "all",  "each", "a"};
  return kSet;
}

// Subject determiners under which negating the main verb phrase (or swapping
// the main verb for a declared-incompatible one) flips the sentence into a
// contradiction; with any other subject both variants can hold at once.
const std::set<std::string>& universal_like_dets() {
  static const std::set<std::string> kSet = {"every", "all", "each", "most",
                                             "the"};
  return kSet;
}

// Object determiners under which a transitive-verb antonym swap stays
// contradictory.
const std::set<std::string>& universal_object_dets() {
  static const std::set<std::string> kSet = {"every", "all", "each"};
  return kSet;
}

bool replaceable_leaf(const ParseTree& leaf) {
  if (!leaf.is_lex) return false;
  switch (leaf.category) {
    case LexCategory::kAdjAnimate:
    case LexCategory::kAdjInanimate:
    case LexCategory::kAdjPred:
    case LexCategory::kAdjSmell:
    case LexCategory::kNAnimate:
    case LexCategory::kNInanimate:
    case LexCategory::kNSmell:
    case LexCategory::kVt:
    case LexCategory::kVi:
      return true;
    default:
      return false;  // determiners have their own NP-level rule
  }
}

std::string node_surface(const ParseTree& node) {
  return join(sentence_tokens(node));
}

ParseTree* node_at(ParseTree& root, const std::vector<int>& path) {
  ParseTree* cur = &root;
  for (int index : path) cur = &cur->children.at(static_cast<size_t>(index));
  return cur;
}

// Noun leaf governed by an NP's determiner: NP -> Restr -> Nbar -> N.
ParseTree* governed_noun(ParseTree& np) {
  ParseTree& restr = np.children.at(1);
  ParseTree& nbar = restr.children.back();
  return &nbar.children.at(0);
}

class Engine {
 public:
  Engine(const ParseTree& source, const Lexicon& lexicon,
         const KnowledgeBase& kb, bool want_neutrals)
      : source_(source),
        lex_(lexicon),
        kb_(kb),
        want_neutrals_(want_neutrals) {
    seen_.insert(canonicalize(render_sentence(source)));
  }

  SubstitutionSets run() {
    std::vector<int> path;
    walk(source_, path, Flags{});
    return std::move(out_);
  }

 private:
  struct Flags {
    bool subject_np = false;
    bool main_vp = false;
    std::string subject_det;
  };

  enum class Bucket { kInfer, kNeutr, kContr, kNone };

  Bucket bucket_for(Mark mark, SubDirection direction) const {
    switch (direction) {
      case SubDirection::kEquivalent:
        return Bucket::kInfer;
      case SubDirection::kNegate:
        return Bucket::kContr;
      case SubDirection::kGeneralize:
        if (mark == Mark::kUp) return Bucket::kInfer;
        if (mark == Mark::kDown) return Bucket::kNeutr;
        return Bucket::kNone;
      case SubDirection::kSpecialize:
        if (mark == Mark::kDown) return Bucket::kInfer;
        if (mark == Mark::kUp) return Bucket::kNeutr;
        return Bucket::kNone;
    }
    return Bucket::kNone;
  }

  void emit(ParseTree edited, SubstitutionStep step, Bucket bucket) {
    if (bucket == Bucket::kNone) return;
    if (bucket == Bucket::kNeutr && !want_neutrals_) return;
    polarize(edited);
    DerivedSentence derived;
    derived.sentence = render_sentence(edited);
    if (!seen_.insert(canonicalize(derived.sentence)).second) return;
    derived.tree = std::move(edited);
    derived.trace.push_back(std::move(step));
    switch (bucket) {
      case Bucket::kInfer:
        out_.infer.push_back(std::move(derived));
        break;
      case Bucket::kNeutr:
        out_.neutr.push_back(std::move(derived));
        break;
      case Bucket::kContr:
        out_.contr.push_back(std::move(derived));
        break;
      case Bucket::kNone:
        break;
    }
  }

  // --- Lexical leaf replacement -------------------------------------------

  void leaf_candidates(const ParseTree& leaf, const std::vector<int>& path) {
    const std::string& lemma = leaf.lemma;
    if (!kb_.known(lemma)) return;
    for (const std::string& r : kb_equivalents(kb_, lemma)) {
      try_leaf_swap(leaf, path, r, SubDirection::kEquivalent);
    }
    for (const std::string& r : kb_lookup(kb_, lemma, KbDirection::kGreater)) {
      try_leaf_swap(leaf, path, r, SubDirection::kGeneralize);
    }
    for (const std::string& r : kb_lookup(kb_, lemma, KbDirection::kLess)) {
      try_leaf_swap(leaf, path, r, SubDirection::kSpecialize);
    }
  }

  void try_leaf_swap(const ParseTree& leaf, const std::vector<int>& path,
                     const std::string& replacement, SubDirection direction) {
    Bucket bucket = bucket_for(leaf.mark, direction);
    if (bucket == Bucket::kNone) return;
    if (bucket == Bucket::kNeutr && !want_neutrals_) return;
    const LexEntry* entry = lex_.find(leaf.category, replacement);
    if (entry == nullptr) return;  // not pluggable into this slot

    ParseTree edited = source_;
    ParseTree* target = node_at(edited, path);
    std::string old_surface = to_lower(target->surface);
    *target = leaf_from_entry(*entry);
    if (entry->is_noun()) {
      target->number = leaf.number;
      target->surface = lex_.inflect(*entry, leaf.number);
    }
    target->mark = leaf.mark;
    SubstitutionStep step{old_surface, to_lower(target->surface), direction,
                          leaf.mark};
    emit(std::move(edited), std::move(step), bucket);
  }

  // --- Determiner rules (at NP nodes) --------------------------------------

  void det_candidates(const ParseTree& np, const std::vector<int>& path,
                      const Flags& flags) {
    const ParseTree& det = np.children.at(0);
    const std::string& lemma = det.lemma;

    if (kb_.known(lemma)) {
      for (const std::string& r : kb_equivalents(kb_, lemma)) {
        try_det_swap(path, r, SubDirection::kEquivalent, det.mark);
      }
      for (const std::string& r :
           kb_lookup(kb_, lemma, KbDirection::kGreater)) {
        try_det_swap(path, r, SubDirection::kGeneralize, det.mark);
      }
      for (const std::string& r : kb_lookup(kb_, lemma, KbDirection::kLess)) {
        try_det_swap(path, r, SubDirection::kSpecialize, det.mark);
      }
    }

    if (flags.subject_np) {
      // "replace some/many/every in subjects by no"
      if (no_rule_dets().count(lemma) != 0 && lemma != "no") {
        try_det_swap(path, "no", SubDirection::kNegate, det.mark);
      }
      if (kb_.known(lemma)) {
        for (const std::string& r :
             kb_lookup(kb_, lemma, KbDirection::kNegate)) {
          try_det_swap(path, r, SubDirection::kNegate, det.mark);
        }
      }
    }
  }

  void try_det_swap(const std::vector<int>& path,
                    const std::string& replacement, SubDirection direction,
                    Mark det_mark) {
    Bucket bucket = bucket_for(det_mark, direction);
    if (bucket == Bucket::kNone) return;
    if (bucket == Bucket::kNeutr && !want_neutrals_) return;
    const LexEntry* entry = lex_.find(LexCategory::kDet, replacement);
    if (entry == nullptr) return;

    ParseTree edited = source_;
    ParseTree* np_node = node_at(edited, path);
    std::string old_surface = to_lower(np_node->children.at(0).surface);
    ParseTree new_det = leaf_from_entry(*entry);
    new_det.mark = det_mark;
    np_node->children.at(0) = std::move(new_det);

    // Re-inflect the governed noun to the new determiner's number.
    ParseTree* noun = governed_noun(*np_node);
    std::optional<NounForm> form = lex_.noun_form(noun->lemma);
    if (!form.has_value()) return;
    noun->number = entry->det_number;
    noun->surface = lex_.inflect(*form->entry, entry->det_number);

    SubstitutionStep step{old_surface, replacement, direction, det_mark};
    emit(std::move(edited), std::move(step), bucket);
  }

  // --- Structural restrictor rules -----------------------------------------

  void restr_candidates(const ParseTree& restr, const std::vector<int>& path) {
    if (restr.children.size() == 2) {
      // Drop the adjective: "Adj N <= N" generalizes the restrictor.
      const ParseTree& adj = restr.children.at(0);
      const ParseTree* noun = &restr.children.at(1).children.at(0);
      if (!kb_.leq(adj.lemma + " " + noun->lemma, noun->lemma)) return;
      Bucket bucket = bucket_for(restr.mark, SubDirection::kGeneralize);
      if (bucket == Bucket::kNone) return;
      if (bucket == Bucket::kNeutr && !want_neutrals_) return;
      ParseTree edited = source_;
      ParseTree* target = node_at(edited, path);
      std::string old_surface = node_surface(*target);
      target->children.erase(target->children.begin());
      SubstitutionStep step{old_surface, node_surface(*target),
                            SubDirection::kGeneralize, restr.mark};
      emit(std::move(edited), std::move(step), bucket);
      return;
    }

    // Add an adjective: "Adj N <= N" read right-to-left specializes.
    Bucket bucket = bucket_for(restr.mark, SubDirection::kSpecialize);
    if (bucket == Bucket::kNone) return;
    if (bucket == Bucket::kNeutr && !want_neutrals_) return;
    const ParseTree& noun = restr.children.at(0).children.at(0);
    LexCategory adj_cat = restr.animate ? LexCategory::kAdjAnimate
                                        : LexCategory::kAdjInanimate;
    std::vector<const LexEntry*> adjs = lex_.by_category(adj_cat);
    std::sort(adjs.begin(), adjs.end(),
              [](const LexEntry* a, const LexEntry* b) {
                return a->surface < b->surface;
              });
    for (const LexEntry* adj : adjs) {
      if (!kb_.leq(adj->surface + " " + noun.lemma, noun.lemma)) continue;
      ParseTree edited = source_;
      ParseTree* target = node_at(edited, path);
      std::string old_surface = node_surface(*target);
      target->children.insert(target->children.begin(),
                              leaf_from_entry(*adj));
      SubstitutionStep step{old_surface, node_surface(*target),
                            SubDirection::kSpecialize, restr.mark};
      emit(std::move(edited), std::move(step), bucket);
    }
  }

  void nbar_candidates(const ParseTree& nbar, const std::vector<int>& path) {
    if (nbar.children.size() != 2) return;
    // Drop the relative clause / PP: "N + (SRC|ORC) <= N" generalizes.
    Bucket bucket = bucket_for(nbar.mark, SubDirection::kGeneralize);
    if (bucket == Bucket::kNone) return;
    if (bucket == Bucket::kNeutr && !want_neutrals_) return;
    ParseTree edited = source_;
    ParseTree* target = node_at(edited, path);
    std::string old_surface = node_surface(*target);
    target->children.resize(1);
    SubstitutionStep step{old_surface, node_surface(*target),
                          SubDirection::kGeneralize, nbar.mark};
    emit(std::move(edited), std::move(step), bucket);
  }

  // --- Main-clause contradiction rules --------------------------------------

  void vp_negation_candidates(const ParseTree& vp, const std::vector<int>& path,
                              const Flags& flags) {
    if (!flags.main_vp) return;
    if (universal_like_dets().count(flags.subject_det) == 0) return;

    const bool copular = vp.children.size() == 2 &&
                         !vp.children.at(0).is_lex;
    const bool negated = vp.children.size() == 2 &&
                         vp.children.at(0).is_lex &&
                         vp.children.at(0).category == LexCategory::kNeg;

    if (copular) {
      const ParseTree& pred = vp.children.at(1);
      ParseTree edited = source_;
      ParseTree* target = node_at(edited, path);
      std::string old_surface = node_surface(*target);
      ParseTree* pred_node = &target->children.at(1);
      if (pred.children.size() == 2) {
        pred_node->children.erase(pred_node->children.begin());
      } else {
        const LexEntry* not_entry = lex_.find(LexCategory::kNeg, "not");
        if (not_entry == nullptr) return;
        pred_node->children.insert(pred_node->children.begin(),
                                   leaf_from_entry(*not_entry));
      }
      SubstitutionStep step{old_surface, node_surface(*target),
                            SubDirection::kNegate, vp.mark};
      emit(std::move(edited), std::move(step), Bucket::kContr);
      return;
    }

    ParseTree edited = source_;
    ParseTree* target = node_at(edited, path);
    std::string old_surface = node_surface(*target);
    if (negated) {
      target->children.erase(target->children.begin());
    } else {
      const LexEntry* neg = lex_.find(LexCategory::kNeg, "do not");
      if (neg == nullptr) return;
      target->children.insert(target->children.begin(), leaf_from_entry(*neg));
    }
    SubstitutionStep step{old_surface, node_surface(*target),
                          SubDirection::kNegate, vp.mark};
    emit(std::move(edited), std::move(step), Bucket::kContr);
  }

  void verb_antonym_candidates(const ParseTree& vp,
                               const std::vector<int>& path,
                               const Flags& flags) {
    if (!flags.main_vp) return;
    if (universal_like_dets().count(flags.subject_det) == 0) return;
    if (vp.children.size() == 2 && vp.children.at(0).is_lex &&
        vp.children.at(0).category == LexCategory::kNeg) {
      return;  // negated main verb: incompatibility no longer clashes
    }

    if (vp.children.size() == 2 && !vp.children.at(0).is_lex) {
      // Copular VP: predicate-adjective antonyms, unless already negated.
      const ParseTree& pred = vp.children.at(1);
      if (pred.children.size() != 1) return;
      const ParseTree& adj = pred.children.at(0);
      std::vector<int> adj_path = path;
      adj_path.push_back(1);
      adj_path.push_back(0);
      antonym_leaf_swaps(adj, adj_path);
      return;
    }

    const ParseTree& vpbar = vp.children.back();
    if (vpbar.kind != NodeKind::kVpbar) return;
    const ParseTree& verb = vpbar.children.at(0);
    if (verb.category == LexCategory::kVt) {
      const ParseTree& object_det = vpbar.children.at(1).children.at(0);
      if (universal_object_dets().count(object_det.lemma) == 0) return;
    }
    std::vector<int> verb_path = path;
    verb_path.push_back(static_cast<int>(vp.children.size()) - 1);
    verb_path.push_back(0);
    antonym_leaf_swaps(verb, verb_path);
  }

  void antonym_leaf_swaps(const ParseTree& leaf, const std::vector<int>& path) {
    if (!kb_.known(leaf.lemma)) return;
    for (const std::string& r :
         kb_lookup(kb_, leaf.lemma, KbDirection::kNegate)) {
      const LexEntry* entry = lex_.find(leaf.category, r);
      if (entry == nullptr) continue;
      ParseTree edited = source_;
      ParseTree* target = node_at(edited, path);
      std::string old_surface = to_lower(target->surface);
      Mark mark = target->mark;
      *target = leaf_from_entry(*entry);
      target->mark = mark;
      SubstitutionStep step{old_surface, r, SubDirection::kNegate, mark};
      emit(std::move(edited), std::move(step), Bucket::kContr);
    }
  }

  // --- Traversal ------------------------------------------------------------

  void walk(const ParseTree& node, std::vector<int>& path, Flags flags) {
    switch (node.kind) {
      case NodeKind::kS: {
        Flags subject_flags;
        subject_flags.subject_np = true;
        path.push_back(0);
        walk(node.children.at(0), path, subject_flags);
        path.pop_back();

        Flags vp_flags;
        vp_flags.main_vp = true;
        vp_flags.subject_det = node.children.at(0).children.at(0).lemma;
        path.push_back(1);
        walk(node.children.at(1), path, vp_flags);
        path.pop_back();
        return;
      }
      case NodeKind::kNp:
        det_candidates(node, path, flags);
        break;
      case NodeKind::kRestr:
        restr_candidates(node, path);
        break;
      case NodeKind::kNbar:
        nbar_candidates(node, path);
        break;
      case NodeKind::kVp:
        vp_negation_candidates(node, path, flags);
        verb_antonym_candidates(node, path, flags);
        break;
      case NodeKind::kLeaf:
        if (replaceable_leaf(node)) leaf_candidates(node, path);
        return;
      default:
        break;
    }
    Flags child_flags;  // position-sensitive flags do not descend
    for (size_t i = 0; i < node.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      walk(node.children[i], path, child_flags);
      path.pop_back();
    }
  }

  const ParseTree& source_;
  const Lexicon& lex_;
  const KnowledgeBase& kb_;
  bool want_neutrals_;
  std::set<std::string> seen_;
  SubstitutionSets out_;
};

}  // namespace

SubstitutionSets substitute(const ParseTree& polarized, const Lexicon& lexicon,
                            const KnowledgeBase& kb, bool want_neutrals) {
  Engine engine(polarized, lexicon, kb, want_neutrals);
  return engine.run();
}

SubstitutionSets search(const ParseTree& polarized_premise,
                        const Lexicon& lexicon, const KnowledgeBase& kb,
                        const SearchConfig& cfg) {
  if (cfg.depth < 1) throw ConfigError("search depth must be >= 1");
  SubstitutionSets result;
  std::set<std::string> seen_infer;
  std::set<std::string> seen_neutr;
  std::set<std::string> seen_contr;

  DerivedSentence start;
  start.tree = polarized_premise;
  start.sentence = render_sentence(polarized_premise);
  start.depth = 0;
  seen_infer.insert(canonicalize(start.sentence));

  std::vector<DerivedSentence> worklist;
  worklist.push_back(std::move(start));
  std::size_t expansions = 0;

  while (!worklist.empty()) {
    DerivedSentence cur = std::move(worklist.back());
    worklist.pop_back();
    if (cur.depth + 1 > cfg.depth) continue;
    if (expansions >= cfg.max_expansions) {
      result.truncated = true;
      break;
    }
    ++expansions;

    SubstitutionSets step =
        substitute(cur.tree, lexicon, kb, /*want_neutrals=*/cur.depth == 0);

    for (DerivedSentence& d : step.infer) {
      if (!seen_infer.insert(canonicalize(d.sentence)).second) continue;
      d.trace.insert(d.trace.begin(), cur.trace.begin(), cur.trace.end());
      d.depth = cur.depth + 1;
      result.infer.push_back(d);
      worklist.push_back(std::move(d));
    }
    for (DerivedSentence& d : step.neutr) {
      if (!seen_neutr.insert(canonicalize(d.sentence)).second) continue;
      d.trace.insert(d.trace.begin(), cur.trace.begin(), cur.trace.end());
      d.depth = cur.depth + 1;
      result.neutr.push_back(std::move(d));
    }
    for (DerivedSentence& d : step.contr) {
      if (!seen_contr.insert(canonicalize(d.sentence)).second) continue;
      d.trace.insert(d.trace.begin(), cur.trace.begin(), cur.trace.end());
      d.depth = cur.depth + 1;
      result.contr.push_back(std::move(d));
    }
  }

  // A sentence with an entailment or contradiction proof is not neutral;
  // keep the proved reading when search paths disagree.
  std::vector<DerivedSentence> kept;
  kept.reserve(result.neutr.size());
  for (DerivedSentence& d : result.neutr) {
    std::string key = canonicalize(d.sentence);
    if (seen_infer.count(key) != 0 || seen_contr.count(key) != 0) continue;
    kept.push_back(std::move(d));
  }
  result.neutr = std::move(kept);
  return result;
}

}  // namespace semfrag
