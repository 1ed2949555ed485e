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

#include "semfrag/formula.hpp"

#include <cctype>

#include "semfrag/errors.hpp"

namespace semfrag {

std::string to_string(Sort sort) {
  switch (sort) {
    case Sort::kPerson: return "person";
    case Sort::kPlace: return "place";
    case Sort::kEntity: return "entity";
  }
  throw FormulaError("unknown sort");
}

Sort sort_from_string(std::string_view s) {
  if (s == "person") return Sort::kPerson;
  if (s == "place") return Sort::kPlace;
  if (s == "entity") return Sort::kEntity;
  throw FormulaError("bad sort: '" + std::string(s) + "'");
}

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  if (args.empty() || args.size() > 2) {
    throw FormulaError("atom arity must be 1 or 2");
  }
  Formula f;
  f.kind = Kind::kAtom;
  f.pred = std::move(pred);
  f.args = std::move(args);
  return f;
}

Formula Formula::negate(Formula body) {
  Formula f;
  f.kind = Kind::kNot;
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) throw FormulaError("empty conjunction");
  if (fs.size() == 1) return std::move(fs[0]);
  Formula f;
  f.kind = Kind::kAnd;
  f.children = std::move(fs);
  return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) throw FormulaError("empty disjunction");
  if (fs.size() == 1) return std::move(fs[0]);
  Formula f;
  f.kind = Kind::kOr;
  f.children = std::move(fs);
  return f;
}

Formula Formula::implies(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::kImplies;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

namespace {
Formula quantified(Formula::Kind kind, std::string var, Sort sort,
                   Formula body) {
  Formula f;
  f.kind = kind;
  f.var = std::move(var);
  f.sort = sort;
  f.children.push_back(std::move(body));
  return f;
}
}  // namespace

Formula Formula::forall(std::string var, Sort sort, Formula body) {
  return quantified(Kind::kForall, std::move(var), sort, std::move(body));
}

Formula Formula::exists(std::string var, Sort sort, Formula body) {
  return quantified(Kind::kExists, std::move(var), sort, std::move(body));
}

Formula Formula::unique_exists(std::string var, Sort sort, Formula body) {
  return quantified(Kind::kUniqueExists, std::move(var), sort,
                    std::move(body));
}

Formula Formula::count_cmp(CmpOp cmp, int n, std::string var, Sort sort,
                           Formula body) {
  Formula f = quantified(Kind::kCountCmp, std::move(var), sort,
                         std::move(body));
  f.cmp = cmp;
  f.n = n;
  return f;
}

Formula Formula::order_atom(OrderKind kind, Term a, Term b) {
  Formula f;
  f.kind = Kind::kOrderAtom;
  f.order_kind = kind;
  f.args = {std::move(a), std::move(b)};
  return f;
}

Formula Formula::only_did(Term subject, std::string pred, Sort target_sort,
                          std::vector<Term> targets) {
  if (targets.empty()) throw FormulaError("only_did needs targets");
  Formula f;
  f.kind = Kind::kOnlyDid;
  f.pred = std::move(pred);
  f.sort = target_sort;
  f.args.push_back(std::move(subject));
  for (Term& t : targets) f.args.push_back(std::move(t));
  return f;
}

Formula Formula::equals(Term a, Term b) {
  Formula f;
  f.kind = Kind::kEquals;
  f.args = {std::move(a), std::move(b)};
  return f;
}

// ---------------------------------------------------------------------------
// S-expressions.

namespace {

bool needs_quoting(const std::string& s) {
  if (s.empty()) return true;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
        c == '|') {
      return true;
    }
  }
  return false;
}

std::string quote_symbol(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "|";
  for (char c : s) {
    if (c == '|') throw FormulaError("symbol cannot contain '|': " + s);
    out.push_back(c);
  }
  out.push_back('|');
  return out;
}

std::string term_str(const Term& t) {
  return t.is_var ? "?" + t.name : quote_symbol(t.name);
}

std::string cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::kGt: return ">";
    case CmpOp::kLt: return "<";
    case CmpOp::kEq: return "=";
  }
  throw FormulaError("unknown cmp");
}

}  // namespace

std::string to_sexpr(const Formula& f) {
  using Kind = Formula::Kind;
  std::string out;
  switch (f.kind) {
    case Kind::kAtom: {
      out = "(" + quote_symbol(f.pred);
      for (const Term& t : f.args) out += " " + term_str(t);
      out += ")";
      return out;
    }
    case Kind::kNot:
      return "(not " + to_sexpr(f.children[0]) + ")";
    case Kind::kAnd:
    case Kind::kOr: {
      out = f.kind == Kind::kAnd ? "(and" : "(or";
      for (const Formula& c : f.children) out += " " + to_sexpr(c);
      out += ")";
      return out;
    }
    case Kind::kImplies:
      return "(implies " + to_sexpr(f.children[0]) + " " +
             to_sexpr(f.children[1]) + ")";
    case Kind::kForall:
    case Kind::kExists:
    case Kind::kUniqueExists: {
      const char* head = f.kind == Kind::kForall   ? "forall"
                         : f.kind == Kind::kExists ? "exists"
                                                   : "unique";
      return std::string("(") + head + " ?" + f.var + " " + to_string(f.sort) +
             " " + to_sexpr(f.children[0]) + ")";
    }
    case Kind::kCountCmp:
      return "(count " + cmp_str(f.cmp) + " " + std::to_string(f.n) + " ?" +
             f.var + " " + to_string(f.sort) + " " + to_sexpr(f.children[0]) +
             ")";
    case Kind::kOrderAtom:
      return std::string("(") +
             (f.order_kind == OrderKind::kTaller ? "taller" : "same-height") +
             " " + term_str(f.args[0]) + " " + term_str(f.args[1]) + ")";
    case Kind::kOnlyDid: {
      out = "(only-did " + term_str(f.args[0]) + " " + quote_symbol(f.pred) +
            " " + to_string(f.sort);
      for (size_t i = 1; i < f.args.size(); ++i) out += " " + term_str(f.args[i]);
      out += ")";
      return out;
    }
    case Kind::kEquals:
      return "(= " + term_str(f.args[0]) + " " + term_str(f.args[1]) + ")";
  }
  throw FormulaError("unknown formula kind");
}

namespace {

struct SexprParser {
  std::string_view src;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw FormulaError("sexpr parse error at offset " + std::to_string(pos) +
                       ": " + msg);
  }

  void skip_ws() {
    while (pos < src.size() &&
           std::isspace(static_cast<unsigned char>(src[pos]))) {
      ++pos;
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    return src[pos];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    if (pos >= src.size()) fail("expected symbol");
    if (src[pos] == '|') {
      ++pos;
      std::string out;
      while (pos < src.size() && src[pos] != '|') out.push_back(src[pos++]);
      if (pos >= src.size()) fail("unterminated |symbol|");
      ++pos;
      return out;
    }
    std::string out;
    while (pos < src.size() && src[pos] != '(' && src[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(src[pos]))) {
      out.push_back(src[pos++]);
    }
    if (out.empty()) fail("expected symbol");
    return out;
  }

  Term term() {
    std::string s = symbol();
    if (!s.empty() && s[0] == '?') {
      if (s.size() == 1) fail("empty variable name");
      return Term::var(s.substr(1));
    }
    return Term::constant(s);
  }

  Formula formula() {
    expect('(');
    std::string head = symbol();
    Formula out;
    if (head == "not") {
      out = Formula::negate(formula());
    } else if (head == "and" || head == "or") {
      std::vector<Formula> children;
      while (peek() != ')') children.push_back(formula());
      if (children.empty()) fail(head + " needs at least one child");
      // Preserve single-child and/or as written? conj() collapses; keep
      // explicit node so round-trips stay exact for >=2 children (the only
      // arity the library emits).
      out = head == "and" ? Formula::conj(std::move(children))
                          : Formula::disj(std::move(children));
    } else if (head == "implies") {
      Formula a = formula();
      Formula b = formula();
      out = Formula::implies(std::move(a), std::move(b));
    } else if (head == "forall" || head == "exists" || head == "unique") {
      Term v = term();
      if (!v.is_var) fail(head + " needs a ?variable");
      Sort sort = sort_from_string(symbol());
      Formula body = formula();
      out = head == "forall"
                ? Formula::forall(v.name, sort, std::move(body))
                : head == "exists"
                      ? Formula::exists(v.name, sort, std::move(body))
                      : Formula::unique_exists(v.name, sort, std::move(body));
    } else if (head == "count") {
      std::string op = symbol();
      CmpOp cmp;
      if (op == ">") cmp = CmpOp::kGt;
      else if (op == "<") cmp = CmpOp::kLt;
      else if (op == "=") cmp = CmpOp::kEq;
      else fail("bad count comparator '" + op + "'");
      std::string num = symbol();
      int n = 0;
      try {
        n = std::stoi(num);
      } catch (...) {
        fail("bad count threshold '" + num + "'");
      }
      Term v = term();
      if (!v.is_var) fail("count needs a ?variable");
      Sort sort = sort_from_string(symbol());
      Formula body = formula();
      out = Formula::count_cmp(cmp, n, v.name, sort, std::move(body));
    } else if (head == "taller" || head == "same-height") {
      Term a = term();
      Term b = term();
      out = Formula::order_atom(
          head == "taller" ? OrderKind::kTaller : OrderKind::kSameHeight,
          std::move(a), std::move(b));
    } else if (head == "only-did") {
      Term subject = term();
      std::string pred = symbol();
      Sort sort = sort_from_string(symbol());
      std::vector<Term> targets;
      while (peek() != ')') targets.push_back(term());
      out = Formula::only_did(std::move(subject), std::move(pred), sort,
                              std::move(targets));
    } else if (head == "=") {
      Term a = term();
      Term b = term();
      out = Formula::equals(std::move(a), std::move(b));
    } else {
      // Plain atom: head is the predicate.
      std::vector<Term> args;
      while (peek() != ')') args.push_back(term());
      out = Formula::atom(head, std::move(args));
    }
    expect(')');
    return out;
  }
};

}  // namespace

Formula parse_sexpr(std::string_view s) {
  SexprParser parser{s};
  Formula f = parser.formula();
  if (!parser.at_end()) parser.fail("trailing input after formula");
  return f;
}

// ---------------------------------------------------------------------------
// Sugar expansion and substitution.

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out) {
  for (const Term& t : f.args) {
    if (t.is_var) out.insert(t.name);
  }
  if (!f.var.empty()) out.insert(f.var);
  for (const Formula& c : f.children) collect_vars(c, out);
}

std::string fresh_var(const Formula& scope, const std::string& base) {
  std::set<std::string> used;
  collect_vars(scope, used);
  std::string candidate = base;
  while (used.count(candidate)) candidate += "'";
  return candidate;
}

}  // namespace

Formula substitute_var(const Formula& f, const std::string& var,
                       const Term& replacement) {
  Formula out = f;
  switch (f.kind) {
    case Formula::Kind::kAtom:
    case Formula::Kind::kOrderAtom:
    case Formula::Kind::kEquals:
    case Formula::Kind::kOnlyDid:
      for (Term& t : out.args) {
        if (t.is_var && t.name == var) t = replacement;
      }
      return out;
    case Formula::Kind::kForall:
    case Formula::Kind::kExists:
    case Formula::Kind::kUniqueExists:
    case Formula::Kind::kCountCmp:
      if (f.var == var) return out;  // shadowed
      if (replacement.is_var && replacement.name == f.var) {
        // Rename the binder to avoid capturing the substituted variable.
        std::string renamed = fresh_var(f, f.var + "'");
        out.var = renamed;
        out.children[0] =
            substitute_var(f.children[0], f.var, Term::var(renamed));
      }
      out.children[0] = substitute_var(out.children[0], var, replacement);
      return out;
    default:
      for (size_t i = 0; i < f.children.size(); ++i) {
        out.children[i] = substitute_var(f.children[i], var, replacement);
      }
      return out;
  }
}

Formula expand_sugar(const Formula& f) {
  Formula out = f;
  for (size_t i = 0; i < out.children.size(); ++i) {
    out.children[i] = expand_sugar(out.children[i]);
  }
  if (out.kind == Formula::Kind::kOnlyDid) {
    const Term subject = out.args[0];
    std::vector<Term> targets(out.args.begin() + 1, out.args.end());
    std::vector<Formula> parts;
    for (const Term& t : targets) {
      parts.push_back(Formula::atom(out.pred, {subject, t}));
    }
    // forall q : sort. (q != t1 and ... and q != tk) -> not pred(subject, q)
    std::string q = "q";
    if (subject.is_var && subject.name == q) q = "q'";
    std::vector<Formula> distinct;
    for (const Term& t : targets) {
      distinct.push_back(Formula::negate(Formula::equals(Term::var(q), t)));
    }
    parts.push_back(Formula::forall(
        q, out.sort,
        Formula::implies(
            Formula::conj(std::move(distinct)),
            Formula::negate(Formula::atom(out.pred, {subject, Term::var(q)})))));
    return Formula::conj(std::move(parts));
  }
  if (out.kind == Formula::Kind::kUniqueExists) {
    const std::string& x = out.var;
    Formula body = out.children[0];
    std::string other = fresh_var(body, x + "'");
    Formula body_other = substitute_var(body, x, Term::var(other));
    Formula uniqueness = Formula::forall(
        other, out.sort,
        Formula::implies(std::move(body_other),
                         Formula::equals(Term::var(other), Term::var(x))));
    return Formula::exists(
        x, out.sort,
        Formula::conj({std::move(body), std::move(uniqueness)}));
  }
  return out;
}

namespace {

void free_vars_impl(const Formula& f, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::kAtom:
    case Formula::Kind::kOrderAtom:
    case Formula::Kind::kEquals:
    case Formula::Kind::kOnlyDid:
      for (const Term& t : f.args) {
        if (t.is_var && !bound.count(t.name)) out.insert(t.name);
      }
      return;
    case Formula::Kind::kForall:
    case Formula::Kind::kExists:
    case Formula::Kind::kUniqueExists:
    case Formula::Kind::kCountCmp: {
      bool inserted = bound.insert(f.var).second;
      free_vars_impl(f.children[0], bound, out);
      if (inserted) bound.erase(f.var);
      return;
    }
    default:
      for (const Formula& c : f.children) free_vars_impl(c, bound, out);
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_impl(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  for (const Term& t : f.args) {
    if (!t.is_var) out.insert(t.name);
  }
  for (const Formula& c : f.children) {
    std::set<std::string> sub = constants_of(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

bool contains_order_atoms(const Formula& f) {
  return contains_kind(f, Formula::Kind::kOrderAtom);
}

bool contains_kind(const Formula& f, Formula::Kind kind) {
  if (f.kind == kind) return true;
  for (const Formula& c : f.children) {
    if (contains_kind(c, kind)) return true;
  }
  return false;
}

}  // namespace semfrag
