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

#include "semfrag/logic_fragments.hpp"

#include <algorithm>
#include <cassert>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

namespace {

// ---------------------------------------------------------------------------
// Surface helpers. One fixed phrasing per template family; no trailing
// periods anywhere.

std::string visit_s(const std::string& x, const std::string& p) {
  return x + " has visited " + p;
}

std::string not_visit_s(const std::string& x, const std::string& p) {
  return x + " didn't visit " + p;
}

std::string only_visited_s(const std::string& x, const std::string& p) {
  return x + " has only visited " + p;
}

Formula v(const std::string& a, const std::string& b) {
  return Formula::atom("visited", {Term::constant(a), Term::constant(b)});
}

void add_person(std::map<std::string, Sort>& sorts, const std::string& name) {
  sorts[name] = Sort::kPerson;
}

void add_place(std::map<std::string, Sort>& sorts, const std::string& name) {
  sorts[name] = Sort::kPlace;
}

// ---------------------------------------------------------------------------
// Binding access with validation.

const std::string& need_name(const Binding& b, const std::string& slot,
                             const std::string& tmpl) {
  auto it = b.names.find(slot);
  if (it == b.names.end()) {
    throw GenerationError("template " + tmpl + ": missing name slot '" + slot +
                          "'");
  }
  return it->second;
}

const std::vector<std::string>& need_list(const Binding& b,
                                          const std::string& slot,
                                          const std::string& tmpl) {
  auto it = b.lists.find(slot);
  if (it == b.lists.end() || it->second.empty()) {
    throw GenerationError("template " + tmpl + ": missing list slot '" + slot +
                          "'");
  }
  return it->second;
}

int need_number(const Binding& b, const std::string& slot,
                const std::string& tmpl) {
  auto it = b.numbers.find(slot);
  if (it == b.numbers.end()) {
    throw GenerationError("template " + tmpl + ": missing number slot '" +
                          slot + "'");
  }
  return it->second;
}

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// ---------------------------------------------------------------------------
// Template registry.

std::vector<Template> make_templates() {
  std::vector<Template> out;
  auto add = [&](const char* id, FragmentId f, Label l) {
    out.push_back(Template{id, f, l});
  };
  const auto E = Label::kEntailment;
  const auto N = Label::kNeutral;
  const auto C = Label::kContradiction;

  add("negation_only_c", FragmentId::kNegation, C);
  add("negation_only_e", FragmentId::kNegation, E);
  add("negation_only_n", FragmentId::kNegation, N);

  add("boolean_people_c", FragmentId::kBoolean, C);
  add("boolean_people_e", FragmentId::kBoolean, E);
  add("boolean_people_n", FragmentId::kBoolean, N);
  add("boolean_places_c", FragmentId::kBoolean, C);
  add("boolean_places_e", FragmentId::kBoolean, E);
  add("boolean_places_n", FragmentId::kBoolean, N);

  add("quantifier_allall_place_c", FragmentId::kQuantifier, C);
  add("quantifier_allall_place_e", FragmentId::kQuantifier, E);
  add("quantifier_allall_place_n", FragmentId::kQuantifier, N);
  add("quantifier_allall_person_c", FragmentId::kQuantifier, C);
  add("quantifier_allall_person_e", FragmentId::kQuantifier, E);
  add("quantifier_allall_person_n", FragmentId::kQuantifier, N);
  add("quantifier_exall_place_e", FragmentId::kQuantifier, E);
  add("quantifier_exall_place_c", FragmentId::kQuantifier, C);
  add("quantifier_exall_place_n", FragmentId::kQuantifier, N);
  add("quantifier_exall_person_e", FragmentId::kQuantifier, E);
  add("quantifier_exall_person_c", FragmentId::kQuantifier, C);
  add("quantifier_exall_person_n", FragmentId::kQuantifier, N);
  add("quantifier_allsome_e", FragmentId::kQuantifier, E);
  add("quantifier_allsome_c", FragmentId::kQuantifier, C);
  add("quantifier_allsome_n", FragmentId::kQuantifier, N);
  add("quantifier_unique_e", FragmentId::kQuantifier, E);
  add("quantifier_unique_c", FragmentId::kQuantifier, C);
  add("quantifier_unique_n", FragmentId::kQuantifier, N);

  add("counting_more_e", FragmentId::kCounting, E);
  add("counting_more_n", FragmentId::kCounting, N);
  add("counting_fewer_c", FragmentId::kCounting, C);
  add("counting_fewer_n", FragmentId::kCounting, N);
  add("counting_exact_c", FragmentId::kCounting, C);
  add("counting_exact_n", FragmentId::kCounting, N);

  add("conditional_mp_e", FragmentId::kConditional, E);
  add("conditional_mp_c", FragmentId::kConditional, C);
  add("conditional_da_n", FragmentId::kConditional, N);
  add("conditional_mt_e", FragmentId::kConditional, E);
  add("conditional_mt_c", FragmentId::kConditional, C);
  add("conditional_ac_n", FragmentId::kConditional, N);

  add("comparative_taller_e", FragmentId::kComparative, E);
  add("comparative_taller_n", FragmentId::kComparative, N);
  add("comparative_taller_c", FragmentId::kComparative, C);
  add("comparative_same_e", FragmentId::kComparative, E);
  add("comparative_same_n", FragmentId::kComparative, N);
  add("comparative_same_c", FragmentId::kComparative, C);

  return out;
}

const std::vector<Template>& all_templates() {
  static const std::vector<Template> kTemplates = make_templates();
  return kTemplates;
}

// ---------------------------------------------------------------------------
// Comparative order closure: which order facts are forced by the premise
// edges in every consistent total preorder.

struct OrderClosure {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  // ge[i][j]: rank(i) >= rank(j) forced; strict[i][j]: rank(i) > rank(j).
  std::vector<std::vector<char>> ge, strict;

  explicit OrderClosure(const std::set<std::string>& persons) {
    names.assign(persons.begin(), persons.end());
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
    size_t n = names.size();
    ge.assign(n, std::vector<char>(n, 0));
    strict.assign(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i) ge[i][i] = 1;
  }

  void add_taller(const std::string& a, const std::string& b) {
    ge[index.at(a)][index.at(b)] = 1;
    strict[index.at(a)][index.at(b)] = 1;
  }

  void add_same(const std::string& a, const std::string& b) {
    ge[index.at(a)][index.at(b)] = 1;
    ge[index.at(b)][index.at(a)] = 1;
  }

  void close() {
    size_t n = names.size();
    for (size_t k = 0; k < n; ++k) {
      for (size_t i = 0; i < n; ++i) {
        if (!ge[i][k]) continue;
        for (size_t j = 0; j < n; ++j) {
          if (!ge[k][j]) continue;
          ge[i][j] = 1;
          if (strict[i][k] || strict[k][j]) strict[i][j] = 1;
        }
      }
    }
  }

  bool consistent() const {
    for (size_t i = 0; i < names.size(); ++i) {
      if (strict[i][i]) return false;
    }
    return true;
  }

  Label taller_label(const std::string& a, const std::string& b) const {
    int i = index.at(a), j = index.at(b);
    if (strict[i][j]) return Label::kEntailment;
    if (ge[j][i]) return Label::kContradiction;  // b >= a forced
    return Label::kNeutral;
  }

  Label same_label(const std::string& a, const std::string& b) const {
    int i = index.at(a), j = index.at(b);
    if (ge[i][j] && ge[j][i]) return Label::kEntailment;
    if (strict[i][j] || strict[j][i]) return Label::kContradiction;
    return Label::kNeutral;
  }
};

struct ComparativeStructure {
  std::string x;
  std::vector<std::string> chain;
  std::string x2;  // empty if absent
  std::vector<std::string> chain2;
  std::string eq;  // empty if absent

  std::set<std::string> mentioned() const {
    std::set<std::string> out;
    out.insert(x);
    out.insert(chain.begin(), chain.end());
    if (!x2.empty()) out.insert(x2);
    out.insert(chain2.begin(), chain2.end());
    if (!eq.empty()) out.insert(eq);
    return out;
  }

  OrderClosure closure() const {
    OrderClosure c(mentioned());
    for (const std::string& l : chain) c.add_taller(x, l);
    for (const std::string& m : chain2) c.add_taller(x2, m);
    if (!eq.empty()) c.add_same(eq, x);
    c.close();
    return c;
  }
};

ComparativeStructure comparative_structure(const Binding& b,
                                           const std::string& tmpl) {
  ComparativeStructure s;
  s.x = need_name(b, "x", tmpl);
  s.chain = need_list(b, "chain", tmpl);
  if (b.names.count("x2")) {
    s.x2 = b.names.at("x2");
    s.chain2 = need_list(b, "chain2", tmpl);
    if (!contains(s.chain, s.x2)) {
      throw GenerationError("template " + tmpl +
                            ": x2 must come from the first chain");
    }
  }
  if (b.names.count("eq")) s.eq = b.names.at("eq");
  return s;
}

std::string comparative_premise(const ComparativeStructure& s) {
  std::vector<std::string> clauses;
  clauses.push_back(s.x + " is taller than " + render_name_list(s.chain));
  if (!s.x2.empty()) {
    clauses.push_back(s.x2 + " is taller than " + render_name_list(s.chain2));
  }
  if (!s.eq.empty()) clauses.push_back(s.eq + " is as tall as " + s.x);
  return join(clauses, ", and ");
}

Formula comparative_premise_form(const ComparativeStructure& s) {
  std::vector<Formula> parts;
  for (const std::string& l : s.chain) {
    parts.push_back(Formula::order_atom(OrderKind::kTaller,
                                        Term::constant(s.x),
                                        Term::constant(l)));
  }
  for (const std::string& m : s.chain2) {
    parts.push_back(Formula::order_atom(OrderKind::kTaller,
                                        Term::constant(s.x2),
                                        Term::constant(m)));
  }
  if (!s.eq.empty()) {
    parts.push_back(Formula::order_atom(OrderKind::kSameHeight,
                                        Term::constant(s.eq),
                                        Term::constant(s.x)));
  }
  return Formula::conj(std::move(parts));
}

// ---------------------------------------------------------------------------
// realize() per family.

RealizedPair realize_negation(const Template& t, const Binding& b) {
  const auto& people = need_list(b, "people", t.id);
  const auto& places = need_list(b, "places", t.id);
  if (people.size() != places.size()) {
    throw GenerationError("negation: people/places lists must align");
  }
  int i = need_number(b, "i", t.id);
  if (i < 0 || i >= static_cast<int>(people.size())) {
    throw GenerationError("negation: clause index out of range");
  }

  RealizedPair out;
  std::vector<std::string> clauses;
  std::vector<Formula> parts;
  for (size_t k = 0; k < people.size(); ++k) {
    clauses.push_back(only_visited_s(people[k], places[k]));
    parts.push_back(Formula::only_did(Term::constant(people[k]), "visited",
                                      Sort::kPlace,
                                      {Term::constant(places[k])}));
    add_person(out.constant_sorts, people[k]);
    add_place(out.constant_sorts, places[k]);
  }
  out.pair.premise = join(clauses, ", ");
  out.premise_form = Formula::conj(std::move(parts));

  std::string hx, hp;
  if (t.label == Label::kContradiction) {
    hx = people[i];
    hp = places[i];
  } else if (t.label == Label::kEntailment) {
    hx = people[i];
    hp = need_name(b, "q", t.id);
    if (hp == places[i]) {
      throw GenerationError(
          "negation_only_e: probe place equals the only-visited place");
    }
  } else {
    hx = need_name(b, "y", t.id);
    if (contains(people, hx)) {
      throw GenerationError("negation_only_n: person must be unmentioned");
    }
    hp = places[i];
  }
  add_person(out.constant_sorts, hx);
  add_place(out.constant_sorts, hp);
  out.pair.hypothesis = not_visit_s(hx, hp);
  out.hypothesis_form = Formula::negate(v(hx, hp));
  return out;
}

RealizedPair realize_boolean(const Template& t, const Binding& b) {
  RealizedPair out;
  const bool people_list = starts_with(t.id, "boolean_people");
  if (people_list) {
    const auto& people = need_list(b, "people", t.id);
    if (people.size() < 2) {
      throw GenerationError("boolean_people: need at least two people");
    }
    const std::string& place = need_name(b, "place", t.id);
    out.pair.premise =
        render_name_list(people) + " have only visited " + place;
    std::vector<Formula> parts;
    for (const std::string& x : people) {
      parts.push_back(Formula::only_did(Term::constant(x), "visited",
                                        Sort::kPlace,
                                        {Term::constant(place)}));
      add_person(out.constant_sorts, x);
    }
    add_place(out.constant_sorts, place);
    out.premise_form = Formula::conj(std::move(parts));

    std::string hx, hp;
    if (t.label == Label::kContradiction) {
      hx = need_name(b, "target", t.id);
      if (!contains(people, hx)) {
        throw GenerationError("boolean_people_c: target must be mentioned");
      }
      hp = place;
    } else if (t.label == Label::kEntailment) {
      hx = need_name(b, "target", t.id);
      if (!contains(people, hx)) {
        throw GenerationError("boolean_people_e: target must be mentioned");
      }
      hp = need_name(b, "q", t.id);
      if (hp == place) {
        throw GenerationError(
            "boolean_people_e: probe place equals the only-visited place");
      }
    } else {
      hx = need_name(b, "y", t.id);
      if (contains(people, hx)) {
        throw GenerationError("boolean_people_n: person must be unmentioned");
      }
      hp = place;
    }
    add_person(out.constant_sorts, hx);
    add_place(out.constant_sorts, hp);
    out.pair.hypothesis = not_visit_s(hx, hp);
    out.hypothesis_form = Formula::negate(v(hx, hp));
    return out;
  }

  const std::string& person = need_name(b, "person", t.id);
  const auto& places = need_list(b, "places", t.id);
  if (places.size() < 2) {
    throw GenerationError("boolean_places: need at least two places");
  }
  out.pair.premise =
      person + " has only visited " + render_name_list(places);
  std::vector<Term> targets;
  for (const std::string& p : places) {
    targets.push_back(Term::constant(p));
    add_place(out.constant_sorts, p);
  }
  add_person(out.constant_sorts, person);
  out.premise_form =
      Formula::only_did(Term::constant(person), "visited", Sort::kPlace,
                        std::move(targets));

  std::string hx, hp;
  if (t.label == Label::kContradiction) {
    hx = person;
    hp = places[static_cast<size_t>(need_number(b, "i", t.id))];
  } else if (t.label == Label::kEntailment) {
    hx = person;
    hp = need_name(b, "q", t.id);
    if (contains(places, hp)) {
      throw GenerationError(
          "boolean_places_e: probe place is among the only-visited places");
    }
  } else {
    hx = need_name(b, "y", t.id);
    if (hx == person) {
      throw GenerationError("boolean_places_n: person must be unmentioned");
    }
    hp = places[static_cast<size_t>(need_number(b, "i", t.id))];
  }
  add_person(out.constant_sorts, hx);
  add_place(out.constant_sorts, hp);
  out.pair.hypothesis = not_visit_s(hx, hp);
  out.hypothesis_form = Formula::negate(v(hx, hp));
  return out;
}

RealizedPair realize_quantifier(const Template& t, const Binding& b) {
  RealizedPair out;
  auto person_var_forall = [](Formula body) {
    return Formula::forall("x", Sort::kPerson, std::move(body));
  };

  const std::string& id = t.id;
  auto name = [&](const char* slot) { return need_name(b, slot, id); };

  if (starts_with(id, "quantifier_allall_place")) {
    out.pair.premise = "Everyone has visited every place";
    out.premise_form = person_var_forall(Formula::forall(
        "y", Sort::kPlace,
        Formula::atom("visited", {Term::var("x"), Term::var("y")})));
    if (t.label == Label::kContradiction) {
      const std::string& p = name("p");
      add_place(out.constant_sorts, p);
      out.pair.hypothesis = "Someone didn't visit " + p;
      out.hypothesis_form = Formula::exists(
          "x", Sort::kPerson,
          Formula::negate(
              Formula::atom("visited", {Term::var("x"), Term::constant(p)})));
    } else if (t.label == Label::kEntailment) {
      const std::string& x = name("x");
      const std::string& p = name("p");
      add_person(out.constant_sorts, x);
      add_place(out.constant_sorts, p);
      out.pair.hypothesis = visit_s(x, p);
      out.hypothesis_form = v(x, p);
    } else {
      const std::string& x = name("x");
      const std::string& y = name("y");
      if (x == y) throw GenerationError(id + ": persons must differ");
      add_person(out.constant_sorts, x);
      add_person(out.constant_sorts, y);
      out.pair.hypothesis = not_visit_s(x, y);
      out.hypothesis_form = Formula::negate(v(x, y));
    }
    return out;
  }

  if (starts_with(id, "quantifier_allall_person")) {
    out.pair.premise = "Everyone has visited everyone";
    out.premise_form = person_var_forall(Formula::forall(
        "y", Sort::kPerson,
        Formula::atom("visited", {Term::var("x"), Term::var("y")})));
    if (t.label == Label::kContradiction) {
      const std::string& x = name("x");
      add_person(out.constant_sorts, x);
      out.pair.hypothesis = "Someone didn't visit " + x;
      out.hypothesis_form = Formula::exists(
          "y", Sort::kPerson,
          Formula::negate(
              Formula::atom("visited", {Term::var("y"), Term::constant(x)})));
    } else if (t.label == Label::kEntailment) {
      const std::string& x = name("x");
      const std::string& y = name("y");
      if (x == y) throw GenerationError(id + ": persons must differ");
      add_person(out.constant_sorts, x);
      add_person(out.constant_sorts, y);
      out.pair.hypothesis = visit_s(x, y);
      out.hypothesis_form = v(x, y);
    } else {
      const std::string& x = name("x");
      const std::string& p = name("p");
      add_person(out.constant_sorts, x);
      add_place(out.constant_sorts, p);
      out.pair.hypothesis = not_visit_s(x, p);
      out.hypothesis_form = Formula::negate(v(x, p));
    }
    return out;
  }

  if (starts_with(id, "quantifier_exall_place")) {
    out.pair.premise = "Someone has visited every place";
    out.premise_form = Formula::exists(
        "x", Sort::kPerson,
        Formula::forall("y", Sort::kPlace,
                        Formula::atom("visited",
                                      {Term::var("x"), Term::var("y")})));
    const std::string& p = name("p");
    add_place(out.constant_sorts, p);
    if (t.label == Label::kEntailment) {
      out.pair.hypothesis = "A person has visited " + p;
      out.hypothesis_form = Formula::exists(
          "x", Sort::kPerson,
          Formula::atom("visited", {Term::var("x"), Term::constant(p)}));
    } else if (t.label == Label::kContradiction) {
      out.pair.hypothesis = "No one has visited " + p;
      out.hypothesis_form = Formula::negate(Formula::exists(
          "x", Sort::kPerson,
          Formula::atom("visited", {Term::var("x"), Term::constant(p)})));
    } else {
      const std::string& x = name("x");
      add_person(out.constant_sorts, x);
      out.pair.hypothesis = visit_s(x, p);
      out.hypothesis_form = v(x, p);
    }
    return out;
  }

  if (starts_with(id, "quantifier_exall_person")) {
    out.pair.premise = "Someone has visited everyone";
    out.premise_form = Formula::exists(
        "x", Sort::kPerson,
        Formula::forall("y", Sort::kPerson,
                        Formula::atom("visited",
                                      {Term::var("x"), Term::var("y")})));
    const std::string& x = name("x");
    add_person(out.constant_sorts, x);
    if (t.label == Label::kEntailment) {
      out.pair.hypothesis = "A person has visited " + x;
      out.hypothesis_form = Formula::exists(
          "y", Sort::kPerson,
          Formula::atom("visited", {Term::var("y"), Term::constant(x)}));
    } else if (t.label == Label::kContradiction) {
      out.pair.hypothesis = "No one has visited " + x;
      out.hypothesis_form = Formula::negate(Formula::exists(
          "y", Sort::kPerson,
          Formula::atom("visited", {Term::var("y"), Term::constant(x)})));
    } else {
      out.pair.hypothesis = x + " didn't visit someone";
      out.hypothesis_form = Formula::exists(
          "y", Sort::kPerson,
          Formula::negate(
              Formula::atom("visited", {Term::constant(x), Term::var("y")})));
    }
    return out;
  }

  if (starts_with(id, "quantifier_allsome")) {
    out.pair.premise = "Everyone has visited some place";
    out.premise_form = person_var_forall(Formula::exists(
        "y", Sort::kPlace,
        Formula::atom("visited", {Term::var("x"), Term::var("y")})));
    if (t.label == Label::kEntailment) {
      const std::string& x = name("x");
      add_person(out.constant_sorts, x);
      out.pair.hypothesis = x + " has visited some place";
      out.hypothesis_form = Formula::exists(
          "y", Sort::kPlace,
          Formula::atom("visited", {Term::constant(x), Term::var("y")}));
    } else if (t.label == Label::kContradiction) {
      out.pair.hypothesis = "No one has visited a place";
      out.hypothesis_form = Formula::negate(Formula::exists(
          "x", Sort::kPerson,
          Formula::exists("y", Sort::kPlace,
                          Formula::atom("visited",
                                        {Term::var("x"), Term::var("y")}))));
    } else {
      const std::string& x = name("x");
      const std::string& p = name("p");
      add_person(out.constant_sorts, x);
      add_place(out.constant_sorts, p);
      out.pair.hypothesis = visit_s(x, p);
      out.hypothesis_form = v(x, p);
    }
    return out;
  }

  if (starts_with(id, "quantifier_unique")) {
    const std::string& p = name("p");
    add_place(out.constant_sorts, p);
    out.pair.premise = "Exactly one person has visited " + p;
    out.premise_form = Formula::unique_exists(
        "x", Sort::kPerson,
        Formula::atom("visited", {Term::var("x"), Term::constant(p)}));
    if (t.label == Label::kEntailment) {
      out.pair.hypothesis = "Someone has visited " + p;
      out.hypothesis_form = Formula::exists(
          "x", Sort::kPerson,
          Formula::atom("visited", {Term::var("x"), Term::constant(p)}));
    } else if (t.label == Label::kContradiction) {
      const std::string& x = name("x");
      const std::string& y = name("y");
      if (x == y) throw GenerationError(id + ": persons must differ");
      add_person(out.constant_sorts, x);
      add_person(out.constant_sorts, y);
      out.pair.hypothesis = x + " and " + y + " have visited " + p;
      out.hypothesis_form = Formula::conj({v(x, p), v(y, p)});
    } else {
      const std::string& x = name("x");
      add_person(out.constant_sorts, x);
      out.pair.hypothesis = visit_s(x, p);
      out.hypothesis_form = v(x, p);
    }
    return out;
  }

  throw GenerationError("unknown quantifier template '" + id + "'");
}

RealizedPair realize_counting(const Template& t, const Binding& b) {
  RealizedPair out;
  const std::string& x = need_name(b, "x", t.id);
  const auto& targets = need_list(b, "targets", t.id);
  int n = need_number(b, "n", t.id);
  const int k = static_cast<int>(targets.size());

  if (contains(targets, x)) {
    throw GenerationError("counting: subject cannot appear in the list");
  }
  std::set<std::string> distinct(targets.begin(), targets.end());
  if (static_cast<int>(distinct.size()) != k) {
    throw GenerationError("counting: visited list must be duplicate-free");
  }

  add_person(out.constant_sorts, x);
  std::vector<Formula> parts;
  for (const std::string& y : targets) {
    parts.push_back(v(x, y));
    add_person(out.constant_sorts, y);
  }
  out.pair.premise = x + " has visited " + render_name_list(targets);
  out.premise_form = Formula::conj(std::move(parts));

  CmpOp cmp;
  std::string cmp_words;
  if (t.id.find("_more_") != std::string::npos) {
    cmp = CmpOp::kGt;
    cmp_words = "more than";
  } else if (t.id.find("_fewer_") != std::string::npos) {
    cmp = CmpOp::kLt;
    cmp_words = "fewer than";
  } else {
    cmp = CmpOp::kEq;
    cmp_words = "exactly";
  }

  // Open-world arithmetic: the premise forces count >= k but never an upper
  // bound. Validate the binding against the template's label.
  Label expect;
  switch (cmp) {
    case CmpOp::kGt: expect = k > n ? Label::kEntailment : Label::kNeutral; break;
    case CmpOp::kLt: expect = k >= n ? Label::kContradiction : Label::kNeutral; break;
    case CmpOp::kEq: expect = n < k ? Label::kContradiction : Label::kNeutral; break;
    default: throw GenerationError("counting: bad comparator");
  }
  if (expect != t.label) {
    throw GenerationError("counting: binding (k=" + std::to_string(k) +
                          ", n=" + std::to_string(n) +
                          ") does not produce label " + to_string(t.label));
  }

  out.pair.hypothesis = x + " has visited " + cmp_words + " " +
                        std::to_string(n) + " " + (n == 1 ? "person" : "people");
  out.hypothesis_form = Formula::count_cmp(
      cmp, n, "y", Sort::kPerson,
      Formula::atom("visited", {Term::constant(x), Term::var("y")}));
  return out;
}

RealizedPair realize_conditional(const Template& t, const Binding& b) {
  const std::string& a = need_name(b, "a", t.id);
  const std::string& p = need_name(b, "p", t.id);
  const std::string& bb = need_name(b, "b", t.id);
  const std::string& q = need_name(b, "q", t.id);
  if (a == bb || p == q) {
    throw GenerationError("conditional: antecedent/consequent must differ");
  }

  RealizedPair out;
  add_person(out.constant_sorts, a);
  add_person(out.constant_sorts, bb);
  add_place(out.constant_sorts, p);
  add_place(out.constant_sorts, q);

  const std::string rule = "if " + visit_s(a, p) + " then " + visit_s(bb, q);
  const Formula rule_form = Formula::implies(v(a, p), v(bb, q));

  if (starts_with(t.id, "conditional_mp")) {
    out.pair.premise = visit_s(a, p) + " and " + rule;
    out.premise_form = Formula::conj({v(a, p), rule_form});
    if (t.label == Label::kEntailment) {
      out.pair.hypothesis = visit_s(bb, q);
      out.hypothesis_form = v(bb, q);
    } else {
      out.pair.hypothesis = not_visit_s(bb, q);
      out.hypothesis_form = Formula::negate(v(bb, q));
    }
  } else if (starts_with(t.id, "conditional_da")) {
    out.pair.premise = not_visit_s(a, p) + ", and " + rule;
    out.premise_form = Formula::conj({Formula::negate(v(a, p)), rule_form});
    out.pair.hypothesis = visit_s(bb, q);
    out.hypothesis_form = v(bb, q);
  } else if (starts_with(t.id, "conditional_mt")) {
    out.pair.premise = not_visit_s(bb, q) + " and " + rule;
    out.premise_form = Formula::conj({Formula::negate(v(bb, q)), rule_form});
    if (t.label == Label::kEntailment) {
      out.pair.hypothesis = not_visit_s(a, p);
      out.hypothesis_form = Formula::negate(v(a, p));
    } else {
      out.pair.hypothesis = visit_s(a, p);
      out.hypothesis_form = v(a, p);
    }
  } else if (starts_with(t.id, "conditional_ac")) {
    out.pair.premise = visit_s(bb, q) + " and " + rule;
    out.premise_form = Formula::conj({v(bb, q), rule_form});
    out.pair.hypothesis = visit_s(a, p);
    out.hypothesis_form = v(a, p);
  } else {
    throw GenerationError("unknown conditional template '" + t.id + "'");
  }
  return out;
}

RealizedPair realize_comparative(const Template& t, const Binding& b) {
  ComparativeStructure s = comparative_structure(b, t.id);
  OrderClosure closure = s.closure();
  if (!closure.consistent()) {
    throw GenerationError("comparative: inconsistent premise structure");
  }

  const std::string& ha = need_name(b, "hyp_a", t.id);
  const std::string& hb = need_name(b, "hyp_b", t.id);
  if (ha == hb) throw GenerationError("comparative: hypothesis pair must differ");
  auto mentioned = s.mentioned();
  if (!mentioned.count(ha) || !mentioned.count(hb)) {
    throw GenerationError("comparative: hypothesis persons must be mentioned");
  }

  const bool same = t.id.find("_same_") != std::string::npos;
  Label derived = same ? closure.same_label(ha, hb)
                       : closure.taller_label(ha, hb);
  if (derived != t.label) {
    throw GenerationError("comparative: closure derives " + to_string(derived) +
                          " but template wants " + to_string(t.label));
  }

  RealizedPair out;
  for (const std::string& p : mentioned) add_person(out.constant_sorts, p);
  out.pair.premise = comparative_premise(s);
  out.premise_form = comparative_premise_form(s);
  out.pair.hypothesis =
      same ? ha + " is as tall as " + hb : ha + " is taller than " + hb;
  out.hypothesis_form = Formula::order_atom(
      same ? OrderKind::kSameHeight : OrderKind::kTaller,
      Term::constant(ha), Term::constant(hb));
  return out;
}

// ---------------------------------------------------------------------------
// Binding samplers.

std::vector<std::string> sample_distinct(const std::vector<std::string>& pool,
                                         size_t k, RandomSource& rng,
                                         const std::set<std::string>& exclude = {}) {
  std::vector<std::string> candidates;
  for (const std::string& name : pool) {
    if (!exclude.count(name)) candidates.push_back(name);
  }
  if (candidates.size() < k) {
    throw GenerationError("name pool too small: need " + std::to_string(k) +
                          ", have " + std::to_string(candidates.size()));
  }
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + rng.below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(k);
  return candidates;
}

struct ListRange {
  int lo;
  int hi;
};

ListRange list_range(const GeneratorConfig& cfg, int def_lo, int def_hi) {
  int lo = cfg.list_len_min > 0 ? cfg.list_len_min : def_lo;
  int hi = cfg.list_len_max > 0 ? cfg.list_len_max : def_hi;
  if (lo > hi || lo < 1) {
    throw ConfigError("bad list length range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return {lo, hi};
}

Binding sample_negation(const Template& t, const GeneratorConfig& cfg,
                        const NameInventory& inv, RandomSource& rng) {
  ListRange r = list_range(cfg, 2, 4);
  int hi = std::min<int>(r.hi, static_cast<int>(inv.people.size()) - 1);
  hi = std::min<int>(hi, static_cast<int>(inv.places.size()) - 1);
  if (hi < r.lo) throw GenerationError("negation: inventory too small");
  int k = static_cast<int>(rng.range(r.lo, hi));

  Binding b;
  b.lists["people"] = sample_distinct(inv.people, k, rng);
  b.lists["places"] = sample_distinct(inv.places, k, rng);
  int i = static_cast<int>(rng.below(k));
  b.numbers["i"] = i;
  if (t.label == Label::kEntailment) {
    std::set<std::string> exclude = {b.lists["places"][i]};
    b.names["q"] = sample_distinct(inv.places, 1, rng, exclude)[0];
  } else if (t.label == Label::kNeutral) {
    std::set<std::string> exclude(b.lists["people"].begin(),
                                  b.lists["people"].end());
    b.names["y"] = sample_distinct(inv.people, 1, rng, exclude)[0];
  }
  return b;
}

Binding sample_boolean(const Template& t, const GeneratorConfig& cfg,
                       const NameInventory& inv, RandomSource& rng) {
  Binding b;
  if (starts_with(t.id, "boolean_people")) {
    ListRange r = list_range(cfg, 2, 5);
    int hi = std::min<int>(r.hi, static_cast<int>(inv.people.size()) -
                                     (t.label == Label::kNeutral ? 1 : 0));
    if (hi < r.lo) throw GenerationError("boolean: inventory too small");
    int k = static_cast<int>(rng.range(std::max(r.lo, 2), std::max(hi, 2)));
    b.lists["people"] = sample_distinct(inv.people, k, rng);
    b.names["place"] = sample_distinct(inv.places, 1, rng)[0];
    if (t.label == Label::kContradiction) {
      b.names["target"] = b.lists["people"][rng.below(k)];
    } else if (t.label == Label::kEntailment) {
      b.names["target"] = b.lists["people"][rng.below(k)];
      b.names["q"] =
          sample_distinct(inv.places, 1, rng, {b.names["place"]})[0];
    } else {
      std::set<std::string> exclude(b.lists["people"].begin(),
                                    b.lists["people"].end());
      b.names["y"] = sample_distinct(inv.people, 1, rng, exclude)[0];
    }
    return b;
  }

  ListRange r = list_range(cfg, 2, 4);
  int extra = t.label == Label::kEntailment ? 1 : 0;
  int hi = std::min<int>(r.hi, static_cast<int>(inv.places.size()) - extra);
  if (hi < std::max(r.lo, 2)) throw GenerationError("boolean: inventory too small");
  int k = static_cast<int>(rng.range(std::max(r.lo, 2), hi));
  b.names["person"] = sample_distinct(inv.people, 1, rng)[0];
  b.lists["places"] = sample_distinct(inv.places, k, rng);
  if (t.label == Label::kContradiction) {
    b.numbers["i"] = static_cast<int>(rng.below(k));
  } else if (t.label == Label::kEntailment) {
    std::set<std::string> exclude(b.lists["places"].begin(),
                                  b.lists["places"].end());
    b.names["q"] = sample_distinct(inv.places, 1, rng, exclude)[0];
  } else {
    b.names["y"] = sample_distinct(inv.people, 1, rng, {b.names["person"]})[0];
    b.numbers["i"] = static_cast<int>(rng.below(k));
  }
  return b;
}

Binding sample_quantifier(const Template& t, const GeneratorConfig&,
                          const NameInventory& inv, RandomSource& rng) {
  Binding b;
  const std::string& id = t.id;
  auto one_person = [&] { return sample_distinct(inv.people, 1, rng)[0]; };
  auto one_place = [&] { return sample_distinct(inv.places, 1, rng)[0]; };

  if (starts_with(id, "quantifier_allall_place")) {
    if (t.label == Label::kContradiction) {
      b.names["p"] = one_place();
    } else if (t.label == Label::kEntailment) {
      b.names["x"] = one_person();
      b.names["p"] = one_place();
    } else {
      auto both = sample_distinct(inv.people, 2, rng);
      b.names["x"] = both[0];
      b.names["y"] = both[1];
    }
  } else if (starts_with(id, "quantifier_allall_person")) {
    if (t.label == Label::kContradiction) {
      b.names["x"] = one_person();
    } else if (t.label == Label::kEntailment) {
      auto both = sample_distinct(inv.people, 2, rng);
      b.names["x"] = both[0];
      b.names["y"] = both[1];
    } else {
      b.names["x"] = one_person();
      b.names["p"] = one_place();
    }
  } else if (starts_with(id, "quantifier_exall_place")) {
    b.names["p"] = one_place();
    if (t.label == Label::kNeutral) b.names["x"] = one_person();
  } else if (starts_with(id, "quantifier_exall_person")) {
    b.names["x"] = one_person();
  } else if (starts_with(id, "quantifier_allsome")) {
    if (t.label == Label::kEntailment) {
      b.names["x"] = one_person();
    } else if (t.label == Label::kNeutral) {
      b.names["x"] = one_person();
      b.names["p"] = one_place();
    }
  } else if (starts_with(id, "quantifier_unique")) {
    b.names["p"] = one_place();
    if (t.label == Label::kContradiction) {
      auto both = sample_distinct(inv.people, 2, rng);
      b.names["x"] = both[0];
      b.names["y"] = both[1];
    } else if (t.label == Label::kNeutral) {
      b.names["x"] = one_person();
    }
  } else {
    throw GenerationError("unknown quantifier template '" + id + "'");
  }
  return b;
}

Binding sample_counting(const Template& t, const GeneratorConfig& cfg,
                        const NameInventory& inv, RandomSource& rng) {
  ListRange r = list_range(cfg, 2, 12);
  int pool = static_cast<int>(inv.people.size()) - 1;  // minus the subject
  int lmax = std::min(r.hi, pool);
  const int nmin = cfg.numeric_min;
  const int nmax = cfg.numeric_max;
  if (nmin > nmax || nmin < 1) throw ConfigError("bad numeric range");

  int k_lo = r.lo, k_hi = lmax;
  if (t.id == "counting_more_e" || t.id == "counting_exact_c") {
    k_lo = std::max(k_lo, nmin + 1);  // need some n < k
  } else if (t.id == "counting_more_n" || t.id == "counting_exact_n") {
    k_hi = std::min(k_hi, nmax);  // need some n >= k
  } else if (t.id == "counting_fewer_c") {
    k_lo = std::max(k_lo, nmin);  // need some n <= k
  } else if (t.id == "counting_fewer_n") {
    k_hi = std::min(k_hi, nmax - 1);  // need some n > k
  }
  if (k_lo > k_hi) {
    throw GenerationError("counting: list/numeric ranges incompatible for " +
                          t.id);
  }
  int k = static_cast<int>(rng.range(k_lo, k_hi));

  int n_lo = nmin, n_hi = nmax;
  if (t.id == "counting_more_e" || t.id == "counting_exact_c") {
    n_hi = std::min(n_hi, k - 1);
  } else if (t.id == "counting_more_n" || t.id == "counting_exact_n") {
    n_lo = std::max(n_lo, k);
  } else if (t.id == "counting_fewer_c") {
    n_hi = std::min(n_hi, k);
  } else if (t.id == "counting_fewer_n") {
    n_lo = std::max(n_lo, k + 1);
  }
  assert(n_lo <= n_hi);
  int n = static_cast<int>(rng.range(n_lo, n_hi));

  Binding b;
  b.names["x"] = sample_distinct(inv.people, 1, rng)[0];
  b.lists["targets"] =
      sample_distinct(inv.people, k, rng, {b.names["x"]});
  b.numbers["n"] = n;
  return b;
}

Binding sample_conditional(const Template& t, const GeneratorConfig&,
                           const NameInventory& inv, RandomSource& rng) {
  (void)t;
  Binding b;
  auto people = sample_distinct(inv.people, 2, rng);
  auto places = sample_distinct(inv.places, 2, rng);
  b.names["a"] = people[0];
  b.names["b"] = people[1];
  b.names["p"] = places[0];
  b.names["q"] = places[1];
  return b;
}

Binding sample_comparative(const Template& t, const GeneratorConfig& cfg,
                           const NameInventory& inv, RandomSource& rng) {
  ListRange r = list_range(cfg, 2, 6);
  const bool same = t.id.find("_same_") != std::string::npos;

  for (int attempt = 0; attempt < 200; ++attempt) {
    int avail = static_cast<int>(inv.people.size());
    int hi = std::min(r.hi, avail - 1);
    if (hi < r.lo) throw GenerationError("comparative: inventory too small");
    int k = static_cast<int>(rng.range(r.lo, hi));

    ComparativeStructure s;
    std::vector<std::string> drawn = sample_distinct(inv.people, k + 1, rng);
    s.x = drawn[0];
    s.chain.assign(drawn.begin() + 1, drawn.end());
    std::set<std::string> used(drawn.begin(), drawn.end());

    int remaining = avail - k - 1;
    if (remaining >= 1 && rng.chance(1, 2)) {
      s.x2 = s.chain[rng.below(s.chain.size())];
      int j = static_cast<int>(rng.range(1, std::min(2, remaining)));
      s.chain2 = sample_distinct(inv.people, j, rng, used);
      for (const std::string& m : s.chain2) used.insert(m);
      remaining -= j;
    }
    if (remaining >= 1 && rng.chance(1, 2)) {
      s.eq = sample_distinct(inv.people, 1, rng, used)[0];
    }

    OrderClosure closure = s.closure();
    if (!closure.consistent()) continue;

    // Bucket ordered pairs by the label the closure forces.
    std::vector<std::pair<std::string, std::string>> bucket;
    const auto mentioned = s.mentioned();
    for (const std::string& a : mentioned) {
      for (const std::string& bname : mentioned) {
        if (a == bname) continue;
        Label l = same ? closure.same_label(a, bname)
                       : closure.taller_label(a, bname);
        if (l == t.label) bucket.emplace_back(a, bname);
      }
    }
    if (bucket.empty()) continue;
    auto [ha, hb] = bucket[rng.below(bucket.size())];

    Binding b;
    b.names["x"] = s.x;
    b.lists["chain"] = s.chain;
    if (!s.x2.empty()) {
      b.names["x2"] = s.x2;
      b.lists["chain2"] = s.chain2;
    }
    if (!s.eq.empty()) b.names["eq"] = s.eq;
    b.names["hyp_a"] = ha;
    b.names["hyp_b"] = hb;
    return b;
  }
  throw GenerationError("comparative: could not sample a structure for " +
                        t.id);
}

std::string serialize_binding(const Binding& b) {
  std::vector<std::string> parts;
  for (const auto& [k, v] : b.names) parts.push_back(k + "=" + v);
  for (const auto& [k, v] : b.lists) parts.push_back(k + "=" + join(v, ","));
  for (const auto& [k, v] : b.numbers) {
    parts.push_back(k + "=" + std::to_string(v));
  }
  return join(parts, ";");
}

}  // namespace

const std::vector<Template>& templates_for(FragmentId fragment) {
  static const std::map<FragmentId, std::vector<Template>> kByFragment = [] {
    std::map<FragmentId, std::vector<Template>> m;
    for (const Template& t : all_templates()) m[t.fragment].push_back(t);
    return m;
  }();
  auto it = kByFragment.find(fragment);
  if (it == kByFragment.end()) {
    throw GenerationError("no templates for fragment " + to_string(fragment));
  }
  return it->second;
}

const Template& template_by_id(const std::string& id) {
  for (const Template& t : all_templates()) {
    if (t.id == id) return t;
  }
  throw GenerationError("unknown template id '" + id + "'");
}

RealizedPair realize(const Template& tmpl, const Binding& binding) {
  RealizedPair out;
  switch (tmpl.fragment) {
    case FragmentId::kNegation: out = realize_negation(tmpl, binding); break;
    case FragmentId::kBoolean: out = realize_boolean(tmpl, binding); break;
    case FragmentId::kQuantifier:
      out = realize_quantifier(tmpl, binding);
      break;
    case FragmentId::kCounting: out = realize_counting(tmpl, binding); break;
    case FragmentId::kConditional:
      out = realize_conditional(tmpl, binding);
      break;
    case FragmentId::kComparative:
      out = realize_comparative(tmpl, binding);
      break;
    default:
      throw GenerationError("realize: not a logic fragment");
  }
  out.pair.label = tmpl.label;
  out.pair.fragment = tmpl.fragment;
  out.pair.meta["template_id"] = tmpl.id;
  out.pair.meta["bindings"] = serialize_binding(binding);
  out.pair.meta["premise_form"] = to_sexpr(out.premise_form);
  out.pair.meta["hypothesis_form"] = to_sexpr(out.hypothesis_form);
  out.pair.meta["constants"] = encode_constant_sorts(out.constant_sorts);
  return out;
}

Binding sample_binding(const Template& tmpl, const GeneratorConfig& cfg,
                       const NameInventory& inventory, RandomSource& rng) {
  switch (tmpl.fragment) {
    case FragmentId::kNegation:
      return sample_negation(tmpl, cfg, inventory, rng);
    case FragmentId::kBoolean:
      return sample_boolean(tmpl, cfg, inventory, rng);
    case FragmentId::kQuantifier:
      return sample_quantifier(tmpl, cfg, inventory, rng);
    case FragmentId::kCounting:
      return sample_counting(tmpl, cfg, inventory, rng);
    case FragmentId::kConditional:
      return sample_conditional(tmpl, cfg, inventory, rng);
    case FragmentId::kComparative:
      return sample_comparative(tmpl, cfg, inventory, rng);
    default:
      throw GenerationError("sample_binding: not a logic fragment");
  }
}

std::vector<NLIPair> generate_logic_split(const GeneratorConfig& cfg,
                                          Split split, int count,
                                          const NameInventory& inventory,
                                          RandomSource rng,
                                          std::set<std::string>& used_keys) {
  if (count < 0) throw ConfigError("negative split size");
  const std::vector<Template>& templates = templates_for(cfg.fragment);
  std::map<Label, std::vector<const Template*>> by_label;
  for (const Template& t : templates) by_label[t.label].push_back(&t);

  // Exact quotas: count/3 each, remainder in E, N, C order.
  const Label order[3] = {Label::kEntailment, Label::kNeutral,
                          Label::kContradiction};
  std::map<Label, int> quota;
  for (Label l : order) quota[l] = count / 3;
  for (int i = 0; i < count % 3; ++i) quota[order[i]] += 1;

  std::vector<NLIPair> out;
  out.reserve(count);
  uint64_t attempts = 0;
  const uint64_t max_attempts = 200ULL * std::max(count, 1) + 1000;

  while (static_cast<int>(out.size()) < count) {
    if (++attempts > max_attempts) {
      throw GenerationError(
          "generation exhausted for " + to_string(cfg.fragment) + "/" +
          to_string(split) + ": achieved " + std::to_string(out.size()) +
          " of " + std::to_string(count) +
          " (key space too small for the inventory/config)");
    }
    std::vector<Label> open;
    for (Label l : order) {
      if (quota[l] > 0) open.push_back(l);
    }
    Label target = open[rng.below(open.size())];
    const auto& pool = by_label.at(target);
    const Template& tmpl = *pool[rng.below(pool.size())];

    Binding binding;
    try {
      binding = sample_binding(tmpl, cfg, inventory, rng);
    } catch (const GenerationError&) {
      continue;  // coupled constraints can fail for a single draw; retry
    }
    RealizedPair realized = realize(tmpl, binding);
    std::string key = canonical_key(realized.pair);
    if (!used_keys.insert(key).second) continue;
    realized.pair.split = split;
    out.push_back(std::move(realized.pair));
    quota[target] -= 1;
  }
  return out;
}

std::vector<NLIPair> generate_logic(const GeneratorConfig& cfg,
                                    const NameInventory& train_inv,
                                    const NameInventory& test_inv,
                                    const RandomSource& rng) {
  std::set<std::string> used_keys;
  std::vector<NLIPair> out;
  RandomSource base = rng.split(to_string(cfg.fragment));
  auto run = [&](Split split, int count, const NameInventory& inv) {
    std::vector<NLIPair> part = generate_logic_split(
        cfg, split, count, inv, base.split(to_string(split)), used_keys);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  };
  run(Split::kTrain, cfg.n_train, train_inv);
  run(Split::kDev, cfg.n_dev, train_inv);
  run(Split::kTest, cfg.n_test, test_inv);
  return out;
}

DomainBounds verify_bounds(FragmentId fragment) {
  DomainBounds b;
  switch (fragment) {
    case FragmentId::kCounting:
      b.max_persons = 40;
      b.max_places = 4;
      break;
    case FragmentId::kComparative:
      b.max_persons = 16;
      b.max_places = 4;
      break;
    case FragmentId::kNegation:
    case FragmentId::kBoolean:
      b.max_persons = 10;
      b.max_places = 10;
      break;
    default:
      b.max_persons = 8;
      b.max_places = 8;
      break;
  }
  return b;
}

std::string encode_constant_sorts(const std::map<std::string, Sort>& sorts) {
  std::vector<std::string> parts;
  for (const auto& [name, sort] : sorts) {
    parts.push_back(to_string(sort) + ":" + name);
  }
  return join(parts, " ");
}

std::map<std::string, Sort> decode_constant_sorts(const std::string& s) {
  std::map<std::string, Sort> out;
  for (const std::string& token : tokenize(s)) {
    size_t colon = token.find(':');
    if (colon == std::string::npos) {
      throw DataError("bad constants entry: '" + token + "'");
    }
    out[token.substr(colon + 1)] = sort_from_string(token.substr(0, colon));
  }
  return out;
}

}  // namespace semfrag
