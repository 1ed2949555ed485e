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

#include "semfrag/mono_fol.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "semfrag/errors.hpp"
#include "semfrag/oracle.hpp"

namespace semfrag {

std::string predicate_name(const std::string& phrase) {
  std::string out;
  out.reserve(phrase.size());
  bool pending_sep = false;
  for (char c : phrase) {
    bool word = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9');
    if (!word) {
      pending_sep = !out.empty();
      continue;
    }
    if (pending_sep) {
      out += '_';
      pending_sep = false;
    }
    out += c;
  }
  return out;
}

namespace {

// Raised (internally) when a determiner has no first-order reading.
struct Untranslatable {};

const ParseTree& child(const ParseTree& node, size_t index) {
  if (index >= node.children.size()) {
    throw SentenceError("malformed sentence tree: missing constituent");
  }
  return node.children[index];
}

class Translator {
 public:
  MonoFolTranslation run(const ParseTree& s) {
    if (s.kind != NodeKind::kS || s.children.size() != 2) {
      throw SentenceError("malformed sentence tree: expected subject + VP");
    }
    const ParseTree& vp = child(s, 1);
    out_.formula = translate_np(
        child(s, 0),
        [&](const Term& v) { return translate_vp(vp, v, false); });
    return std::move(out_);
  }

 private:
  Term fresh_var() { return Term::var("x" + std::to_string(next_var_++)); }

  void note_unary(const std::string& phrase, bool negated, bool in_restrictor) {
    out_.unary_phrases.insert(phrase);
    if (in_restrictor) out_.restrictor_literals.emplace_back(phrase, negated);
  }

  Formula unary_atom(const std::string& phrase, const Term& v) {
    return Formula::atom(predicate_name(phrase), {v});
  }

  // NP = [Det, Restr]; produces the quantified formula for the determiner
  // applied to the restrictor and the caller-provided scope.
  Formula translate_np(const ParseTree& np,
                       const std::function<Formula(const Term&)>& scope) {
    if (np.kind != NodeKind::kNp || np.children.size() != 2) {
      throw SentenceError("malformed sentence tree: expected Det + restrictor");
    }
    const ParseTree& det = child(np, 0);
    Term v = fresh_var();
    Formula restr = translate_restr(child(np, 1), v);
    out_.np_imports.push_back(
        Formula::exists(v.name, Sort::kEntity, restr));
    Formula body = scope(v);

    const std::string& family = det.det_family;
    int n = det.numeric_n;
    if (family == "every" || family == "all" || family == "each") {
      return Formula::forall(v.name, Sort::kEntity,
                             Formula::implies(std::move(restr),
                                              std::move(body)));
    }
    Formula both = Formula::conj({std::move(restr), std::move(body)});
    if (family == "a" || family == "some") {
      return Formula::exists(v.name, Sort::kEntity, std::move(both));
    }
    if (family == "no") {
      return Formula::negate(
          Formula::exists(v.name, Sort::kEntity, std::move(both)));
    }
    if (family == "at least n") {
      out_.count_thresholds.push_back(n);
      return Formula::count_cmp(CmpOp::kGt, n - 1, v.name, Sort::kEntity,
                                std::move(both));
    }
    if (family == "at most n") {
      out_.count_thresholds.push_back(n);
      return Formula::negate(Formula::count_cmp(CmpOp::kGt, n, v.name,
                                                Sort::kEntity,
                                                std::move(both)));
    }
    if (family == "exactly n") {
      out_.count_thresholds.push_back(n);
      return Formula::count_cmp(CmpOp::kEq, n, v.name, Sort::kEntity,
                                std::move(both));
    }
    throw Untranslatable{};  // most, many, several, few, the, some but not all
  }

  // Restr = [Adj, Nbar] | [Nbar]: conjunction of property atoms over v.
  Formula translate_restr(const ParseTree& restr, const Term& v) {
    std::vector<Formula> parts;
    const ParseTree* nbar = &child(restr, restr.children.size() - 1);
    if (restr.children.size() == 2) {
      const ParseTree& adj = child(restr, 0);
      note_unary(adj.lemma, false, true);
      parts.push_back(unary_atom(adj.lemma, v));
    }
    const ParseTree& noun = child(*nbar, 0);
    note_unary(noun.lemma, false, true);
    parts.push_back(unary_atom(noun.lemma, v));
    if (nbar->children.size() == 2) {
      parts.push_back(translate_modifier(child(*nbar, 1), v));
    }
    return parts.size() == 1 ? std::move(parts[0])
                             : Formula::conj(std::move(parts));
  }

  Formula translate_modifier(const ParseTree& mod, const Term& v) {
    switch (mod.kind) {
      case NodeKind::kSrc:
        // "who VP": the head is the subject of the embedded clause.
        return translate_vp(child(mod, 1), v, /*in_restrictor=*/true);
      case NodeKind::kOrc: {
        // "who NP Vt": the head is the object of the embedded verb.
        const ParseTree& body = child(mod, 1);
        const ParseTree& verb = child(body, 1);
        note_binary(verb.lemma);
        return translate_np(
            child(body, 0),
            [&](const Term& subj) {
              return Formula::atom(predicate_name(verb.lemma), {subj, v});
            });
      }
      case NodeKind::kPp: {
        // "with/without Adj N" is opaque: one property atom per PP shape.
        // Nothing in the knowledge base reaches inside a PP, so the verdict
        // only ever depends on the modifier as a whole.
        const ParseTree& p = child(mod, 0);
        const ParseTree& body = child(mod, 1);
        std::string phrase =
            p.lemma + " " + child(body, 0).lemma + " " + child(body, 1).lemma;
        out_.restrictor_literals.emplace_back(phrase, false);
        return unary_atom(phrase, v);
      }
      default:
        throw SentenceError("malformed sentence tree: unexpected modifier");
    }
  }

  void note_binary(const std::string& phrase) {
    out_.binary_phrases.insert(phrase);
  }

  Formula translate_vp(const ParseTree& vp, const Term& subject,
                       bool in_restrictor) {
    if (vp.children.size() == 2) {
      const ParseTree& head = child(vp, 0);
      if (head.is_lex && head.category == LexCategory::kNeg) {
        return Formula::negate(
            translate_vpbar(child(vp, 1), subject, in_restrictor, true));
      }
      // Copula: "be (not) Adj".
      const ParseTree& pred = child(vp, 1);
      bool negated = pred.children.size() == 2;
      const ParseTree& adj = child(pred, pred.children.size() - 1);
      note_unary(adj.lemma, negated, in_restrictor);
      Formula atom = unary_atom(adj.lemma, subject);
      return negated ? Formula::negate(std::move(atom)) : std::move(atom);
    }
    return translate_vpbar(child(vp, 0), subject, in_restrictor, false);
  }

  Formula translate_vpbar(const ParseTree& vpbar, const Term& subject,
                          bool in_restrictor, bool under_negation) {
    const ParseTree& verb = child(vpbar, 0);
    if (verb.category == LexCategory::kVi) {
      note_unary(verb.lemma, under_negation, in_restrictor);
      return unary_atom(verb.lemma, subject);
    }
    note_binary(verb.lemma);
    return translate_np(
        child(vpbar, 1),
        [&](const Term& obj) {
          return Formula::atom(predicate_name(verb.lemma), {subject, obj});
        });
  }

  int next_var_ = 0;
  MonoFolTranslation out_;
};

using Literal = std::pair<std::string, bool>;

// An import conjunction is dropped when the knowledge base already refutes
// it: two members are declared incompatible, or one member entails another
// that appears negated (waltzed and not-danced cannot coexist).
bool consistent_literals(const std::vector<Literal>& lits,
                         const KnowledgeBase& kb) {
  for (size_t i = 0; i < lits.size(); ++i) {
    for (size_t j = 0; j < lits.size(); ++j) {
      if (i == j) continue;
      const auto& [a, a_neg] = lits[i];
      const auto& [b, b_neg] = lits[j];
      if (a == b && a_neg != b_neg) return false;
      if (!a_neg && !b_neg && kb.antonym(a, b)) return false;
      if (!a_neg && b_neg && (a == b || kb.leq(a, b) || kb.eq(a, b))) {
        return false;
      }
    }
  }
  return true;
}

Formula literal_conjunction(const std::vector<Literal>& lits) {
  Term v = Term::var("x0");
  std::vector<Formula> parts;
  parts.reserve(lits.size());
  for (const auto& [phrase, negated] : lits) {
    Formula atom = Formula::atom(predicate_name(phrase), {v});
    parts.push_back(negated ? Formula::negate(std::move(atom))
                            : std::move(atom));
  }
  Formula body = parts.size() == 1 ? std::move(parts[0])
                                   : Formula::conj(std::move(parts));
  return Formula::exists("x0", Sort::kEntity, std::move(body));
}

void add_unique(std::vector<Formula>& theory, std::set<std::string>& seen,
                Formula f) {
  if (seen.insert(to_sexpr(f)).second) theory.push_back(std::move(f));
}

}  // namespace

std::optional<MonoFolTranslation> translate_sentence(const ParseTree& tree,
                                                     const Lexicon& lexicon) {
  (void)lexicon;  // arity comes from the tree; kept for interface stability
  try {
    Translator t;
    return t.run(tree);
  } catch (const Untranslatable&) {
    return std::nullopt;
  }
}

std::vector<Formula> mono_theory(const MonoFolTranslation& premise,
                                 const MonoFolTranslation& hypothesis,
                                 const KnowledgeBase& kb) {
  std::vector<Formula> theory;
  std::set<std::string> seen;

  // Hierarchy and incompatibility axioms over the pair's own predicates.
  // kb_lookup works on the closure, so chains passing through phrases the
  // pair never mentions still come out as direct implications.
  auto link = [&](const std::set<std::string>& vocab, bool binary) {
    std::vector<Term> vars = {Term::var("x0")};
    if (binary) vars.push_back(Term::var("x1"));
    auto quantify = [&](Formula body) {
      body = Formula::forall("x0", Sort::kEntity, std::move(body));
      if (binary) {
        // forall is built innermost-first.
        body.children[0] =
            Formula::forall("x1", Sort::kEntity,
                            std::move(body.children[0]));
      }
      return body;
    };
    for (const std::string& lo : vocab) {
      std::vector<std::string> ups = kb_lookup(kb, lo, KbDirection::kGreater);
      for (const std::string& e : kb_equivalents(kb, lo)) ups.push_back(e);
      for (const std::string& hi : ups) {
        if (vocab.count(hi) == 0) continue;
        add_unique(theory, seen,
                   quantify(Formula::implies(
                       Formula::atom(predicate_name(lo), vars),
                       Formula::atom(predicate_name(hi), vars))));
      }
      for (const std::string& foe : kb_lookup(kb, lo, KbDirection::kNegate)) {
        if (vocab.count(foe) == 0 || foe < lo) continue;
        add_unique(theory, seen,
                   quantify(Formula::negate(Formula::conj(
                       {Formula::atom(predicate_name(lo), vars),
                        Formula::atom(predicate_name(foe), vars)}))));
      }
    }
  };
  std::set<std::string> unary = premise.unary_phrases;
  unary.insert(hypothesis.unary_phrases.begin(),
               hypothesis.unary_phrases.end());
  std::set<std::string> binary = premise.binary_phrases;
  binary.insert(hypothesis.binary_phrases.begin(),
                hypothesis.binary_phrases.end());
  link(unary, false);
  link(binary, true);

  // Existential import, twice over: every noun phrase's full restrictor is
  // inhabited, and so is every small consistent combination of restrictor
  // literals (the kinds a derivation may pass through).
  for (const Formula& f : premise.np_imports) add_unique(theory, seen, f);
  for (const Formula& f : hypothesis.np_imports) add_unique(theory, seen, f);

  std::vector<Literal> pool;
  {
    std::set<Literal> dedup(premise.restrictor_literals.begin(),
                            premise.restrictor_literals.end());
    dedup.insert(hypothesis.restrictor_literals.begin(),
                 hypothesis.restrictor_literals.end());
    pool.assign(dedup.begin(), dedup.end());
  }
  size_t n = pool.size();
  for (size_t i = 0; i < n; ++i) {
    std::vector<Literal> one = {pool[i]};
    if (consistent_literals(one, kb)) {
      add_unique(theory, seen, literal_conjunction(one));
    }
    for (size_t j = i + 1; j < n; ++j) {
      std::vector<Literal> two = {pool[i], pool[j]};
      if (!consistent_literals(two, kb)) continue;
      add_unique(theory, seen, literal_conjunction(two));
      for (size_t k = j + 1; k < n; ++k) {
        std::vector<Literal> three = {pool[i], pool[j], pool[k]};
        if (!consistent_literals(three, kb)) continue;
        add_unique(theory, seen, literal_conjunction(three));
      }
    }
  }
  return theory;
}

int mono_entity_floor(const MonoFolTranslation& premise,
                      const MonoFolTranslation& hypothesis) {
  int total = 2;
  for (int n : premise.count_thresholds) total += n;
  for (int n : hypothesis.count_thresholds) total += n;
  return std::clamp(total, 6, 24);
}

std::optional<Label> mono_fol_label(const ParseTree& premise,
                                    const ParseTree& hypothesis,
                                    const Lexicon& lexicon,
                                    const KnowledgeBase& kb) {
  std::optional<MonoFolTranslation> p = translate_sentence(premise, lexicon);
  if (!p.has_value()) return std::nullopt;
  std::optional<MonoFolTranslation> h = translate_sentence(hypothesis, lexicon);
  if (!h.has_value()) return std::nullopt;

  OracleOptions opts;
  opts.theory = mono_theory(*p, *h, kb);
  opts.entity_carrier = mono_entity_floor(*p, *h);
  return oracle_label_ex(p->formula, h->formula, opts).label;
}

}  // namespace semfrag
