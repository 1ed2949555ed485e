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

#ifndef SEMFRAG_FORMULA_HPP_
#define SEMFRAG_FORMULA_HPP_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace semfrag {

enum class Sort { kPerson, kPlace, kEntity };

std::string to_string(Sort sort);
Sort sort_from_string(std::string_view s);

// A term is a constant or a variable. Variables are written with a leading
// '?' in the s-expression syntax; constant names never start with '?'.
struct Term {
  bool is_var = false;
  std::string name;

  static Term constant(std::string name) { return {false, std::move(name)}; }
  static Term var(std::string name) { return {true, std::move(name)}; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class CmpOp { kGt, kLt, kEq };
enum class OrderKind { kTaller, kSameHeight };

// First-order formula over a finite world. Plain value type; the node kind
// determines which fields matter:
//   kAtom         pred, args (arity 1 or 2)
//   kNot          children[0]
//   kAnd, kOr     children (>= 1)
//   kImplies      children[0] -> children[1]
//   kForall, kExists, kUniqueExists   var, sort, children[0]
//   kCountCmp     cmp, n, var, sort, children[0]  ("cmp n many var satisfy")
//   kOrderAtom    order_kind, args[0], args[1]    (height comparisons)
//   kOnlyDid      pred, sort, args[0]=subject, args[1..]=targets
//   kEquals       args[0], args[1]
// kOnlyDid and kUniqueExists are sugar; expand_sugar rewrites them into the
// quantifier core.
struct Formula {
  enum class Kind {
    kAtom,
    kNot,
    kAnd,
    kOr,
    kImplies,
    kForall,
    kExists,
    kUniqueExists,
    kCountCmp,
    kOrderAtom,
    kOnlyDid,
    kEquals,
  };

  Kind kind = Kind::kAtom;
  std::string pred;
  std::string var;
  Sort sort = Sort::kPerson;
  CmpOp cmp = CmpOp::kGt;
  int n = 0;
  OrderKind order_kind = OrderKind::kTaller;
  std::vector<Term> args;
  std::vector<Formula> children;

  static Formula atom(std::string pred, std::vector<Term> args);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Sort sort, Formula body);
  static Formula exists(std::string var, Sort sort, Formula body);
  static Formula unique_exists(std::string var, Sort sort, Formula body);
  static Formula count_cmp(CmpOp cmp, int n, std::string var, Sort sort,
                           Formula body);
  static Formula order_atom(OrderKind kind, Term a, Term b);
  static Formula only_did(Term subject, std::string pred, Sort target_sort,
                          std::vector<Term> targets);
  static Formula equals(Term a, Term b);

  friend bool operator==(const Formula&, const Formula&) = default;
};

// S-expression syntax, round-trippable via parse_sexpr:
//   (visited Dave Israel)            atom (constants)
//   (not F) (and F...) (or F...) (implies F G)
//   (forall ?x person F) (exists ?y place F) (unique ?x person F)
//   (count > 10 ?y person F)
//   (taller John Gordon) (same-height John Mitchell)
//   (only-did Dave visited place Israel Russia)
//   (= ?x ?y)
// Symbols containing whitespace or parens are |quoted|.
std::string to_sexpr(const Formula& f);
Formula parse_sexpr(std::string_view s);

// Rewrites the sugar nodes:
//   only_did(s, p, sort, T) =>
//     AND_{t in T} p(s, t)  AND  forall q:sort ((AND_t not(q = t)) -> not p(s, q))
//   unique_exists x (B)     =>
//     exists x (B and forall x' (B[x:=x'] -> x' = x))
// Idempotent; the result contains no kOnlyDid / kUniqueExists nodes.
Formula expand_sugar(const Formula& f);

// Capture-avoiding substitution of a variable by a term.
Formula substitute_var(const Formula& f, const std::string& var,
                       const Term& replacement);

std::set<std::string> free_variables(const Formula& f);
bool is_closed(const Formula& f);

// All constants appearing in f (atom/order/equals/only-did arguments).
std::set<std::string> constants_of(const Formula& f);
bool contains_order_atoms(const Formula& f);
bool contains_kind(const Formula& f, Formula::Kind kind);

}  // namespace semfrag

#endif  // SEMFRAG_FORMULA_HPP_
