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

#include "semfrag/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "semfrag/errors.hpp"

namespace semfrag {

namespace {

// ---------------------------------------------------------------------------
// Propositional skeleton after grounding.

struct Prop {
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kCount };
  Kind kind = Kind::kTrue;
  int atom = -1;
  CmpOp cmp = CmpOp::kGt;
  int n = 0;
  std::vector<Prop> children;

  static Prop constant(bool v) {
    Prop p;
    p.kind = v ? Kind::kTrue : Kind::kFalse;
    return p;
  }
};

Prop make_not(Prop c) {
  if (c.kind == Prop::Kind::kTrue) return Prop::constant(false);
  if (c.kind == Prop::Kind::kFalse) return Prop::constant(true);
  Prop p;
  p.kind = Prop::Kind::kNot;
  p.children.push_back(std::move(c));
  return p;
}

Prop make_and(std::vector<Prop> cs) {
  std::vector<Prop> kept;
  for (Prop& c : cs) {
    if (c.kind == Prop::Kind::kFalse) return Prop::constant(false);
    if (c.kind == Prop::Kind::kTrue) continue;
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return Prop::constant(true);
  if (kept.size() == 1) return std::move(kept[0]);
  Prop p;
  p.kind = Prop::Kind::kAnd;
  p.children = std::move(kept);
  return p;
}

Prop make_or(std::vector<Prop> cs) {
  std::vector<Prop> kept;
  for (Prop& c : cs) {
    if (c.kind == Prop::Kind::kTrue) return Prop::constant(true);
    if (c.kind == Prop::Kind::kFalse) continue;
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return Prop::constant(false);
  if (kept.size() == 1) return std::move(kept[0]);
  Prop p;
  p.kind = Prop::Kind::kOr;
  p.children = std::move(kept);
  return p;
}

struct AtomTable {
  std::map<std::string, int> ids;
  std::vector<std::string> names;

  int intern(const std::string& key) {
    auto [it, inserted] = ids.emplace(key, static_cast<int>(names.size()));
    if (inserted) names.push_back(key);
    return it->second;
  }
};

struct Carriers {
  std::vector<std::string> persons;
  std::vector<std::string> places;
  std::vector<std::string> entities;

  const std::vector<std::string>& of(Sort sort) const {
    switch (sort) {
      case Sort::kPerson: return persons;
      case Sort::kPlace: return places;
      case Sort::kEntity: return entities;
    }
    throw FormulaError("unknown sort");
  }
};

using Env = std::map<std::string, std::string>;

const std::string& ground_term(const Term& t, const Env& env) {
  if (!t.is_var) return t.name;
  auto it = env.find(t.name);
  if (it == env.end()) {
    throw FormulaError("open formula: unbound '?" + t.name + "'");
  }
  return it->second;
}

Prop ground(const Formula& f, const Carriers& carriers, Env& env,
            AtomTable& atoms) {
  using Kind = Formula::Kind;
  switch (f.kind) {
    case Kind::kAtom: {
      std::string key = f.pred;
      for (const Term& t : f.args) {
        key.push_back('\x1f');
        key += ground_term(t, env);
      }
      Prop p;
      p.kind = Prop::Kind::kAtom;
      p.atom = atoms.intern(key);
      return p;
    }
    case Kind::kNot:
      return make_not(ground(f.children[0], carriers, env, atoms));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Prop> cs;
      cs.reserve(f.children.size());
      for (const Formula& c : f.children) {
        cs.push_back(ground(c, carriers, env, atoms));
      }
      return f.kind == Kind::kAnd ? make_and(std::move(cs))
                                  : make_or(std::move(cs));
    }
    case Kind::kImplies: {
      std::vector<Prop> cs;
      cs.push_back(make_not(ground(f.children[0], carriers, env, atoms)));
      cs.push_back(ground(f.children[1], carriers, env, atoms));
      return make_or(std::move(cs));
    }
    case Kind::kForall:
    case Kind::kExists: {
      std::vector<Prop> cs;
      for (const std::string& c : carriers.of(f.sort)) {
        auto saved = env.count(f.var) ? std::optional<std::string>(env[f.var])
                                      : std::nullopt;
        env[f.var] = c;
        cs.push_back(ground(f.children[0], carriers, env, atoms));
        if (saved) env[f.var] = *saved; else env.erase(f.var);
      }
      if (cs.empty()) return Prop::constant(f.kind == Kind::kForall);
      return f.kind == Kind::kForall ? make_and(std::move(cs))
                                     : make_or(std::move(cs));
    }
    case Kind::kCountCmp: {
      Prop p;
      p.kind = Prop::Kind::kCount;
      p.cmp = f.cmp;
      p.n = f.n;
      for (const std::string& c : carriers.of(f.sort)) {
        auto saved = env.count(f.var) ? std::optional<std::string>(env[f.var])
                                      : std::nullopt;
        env[f.var] = c;
        p.children.push_back(ground(f.children[0], carriers, env, atoms));
        if (saved) env[f.var] = *saved; else env.erase(f.var);
      }
      return p;
    }
    case Kind::kEquals:
      return Prop::constant(ground_term(f.args[0], env) ==
                            ground_term(f.args[1], env));
    case Kind::kUniqueExists:
    case Kind::kOnlyDid:
      throw FormulaError("grounding requires expand_sugar first");
    case Kind::kOrderAtom:
      throw OracleError(
          "order atoms mixed with relational structure are unsupported");
  }
  throw FormulaError("unknown formula kind");
}

// ---------------------------------------------------------------------------
// Satisfiability. The grounded skeleton is Tseitin-transformed to CNF
// (counting constraints via a sequential counter) and handed to a small
// clause-learning DPLL solver. Unit propagation plus first-UIP learning keeps
// the entailment queries cheap even when counting thresholds force a
// dozen-strong carrier with a quadratic number of relational atoms.

// Literals are 2*var (positive) and 2*var+1 (negated); variable 0 is pinned
// to TRUE by a unit clause so constants need no special cases downstream.
class CnfBuilder {
 public:
  explicit CnfBuilder(int atom_count) : num_vars_(atom_count + 1) {
    add_clause({pos(0)});
  }

  static int pos(int var) { return 2 * var; }
  static int negate(int lit) { return lit ^ 1; }

  int true_lit() const { return pos(0); }
  int false_lit() const { return negate(pos(0)); }
  int atom_lit(int atom) const { return pos(atom + 1); }

  int num_vars() const { return num_vars_; }
  std::vector<std::vector<int>> take_clauses() { return std::move(clauses_); }

  void add_clause(std::vector<int> lits) {
    clauses_.push_back(std::move(lits));
  }

  // Gate variable g with g <-> AND(ls); returns the literal for g. Gates are
  // hash-consed on their canonical input set: a premise and a negated
  // hypothesis often encode the same counting subcircuit over the same atoms,
  // and sharing the gate variables turns what would be a circuit-equivalence
  // proof inside the solver into plain unit propagation.
  int and_gate(std::vector<int> ls) {
    std::vector<int> kept;
    for (int l : ls) {
      if (l == false_lit()) return false_lit();
      if (l != true_lit()) kept.push_back(l);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (size_t i = 0; i + 1 < kept.size(); ++i) {
      if ((kept[i] ^ 1) == kept[i + 1]) return false_lit();
    }
    if (kept.empty()) return true_lit();
    if (kept.size() == 1) return kept[0];
    auto it = and_cache_.find(kept);
    if (it != and_cache_.end()) return it->second;
    int g = pos(num_vars_++);
    std::vector<int> closing{g};
    for (int l : kept) {
      add_clause({negate(g), l});
      closing.push_back(negate(l));
    }
    add_clause(std::move(closing));
    and_cache_.emplace(std::move(kept), g);
    return g;
  }

  // Gate variable g with g <-> OR(ls); returns the literal for g. Hash-consed
  // like and_gate.
  int or_gate(std::vector<int> ls) {
    std::vector<int> kept;
    for (int l : ls) {
      if (l == true_lit()) return true_lit();
      if (l != false_lit()) kept.push_back(l);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (size_t i = 0; i + 1 < kept.size(); ++i) {
      if ((kept[i] ^ 1) == kept[i + 1]) return true_lit();
    }
    if (kept.empty()) return false_lit();
    if (kept.size() == 1) return kept[0];
    auto it = or_cache_.find(kept);
    if (it != or_cache_.end()) return it->second;
    int g = pos(num_vars_++);
    std::vector<int> opening{negate(g)};
    for (int l : kept) {
      add_clause({g, negate(l)});
      opening.push_back(l);
    }
    add_clause(std::move(opening));
    or_cache_.emplace(std::move(kept), g);
    return g;
  }

  // Sequential counter over xs: returns the literal for "at least j of xs".
  // The recurrence s(i,j) <-> s(i-1,j) | (s(i-1,j-1) & x_i) is memoized per
  // call site; cells with j = 0 are TRUE and cells with j > i are FALSE.
  int at_least(const std::vector<int>& xs, int j) {
    int m = static_cast<int>(xs.size());
    if (j <= 0) return true_lit();
    if (j > m) return false_lit();
    std::map<std::pair<int, int>, int> memo;
    return counter_cell(xs, m, j, memo);
  }

  int transform(const Prop& p) {
    switch (p.kind) {
      case Prop::Kind::kTrue:
        return true_lit();
      case Prop::Kind::kFalse:
        return false_lit();
      case Prop::Kind::kAtom:
        return atom_lit(p.atom);
      case Prop::Kind::kNot:
        return negate(transform(p.children[0]));
      case Prop::Kind::kAnd: {
        std::vector<int> ls;
        ls.reserve(p.children.size());
        for (const Prop& c : p.children) ls.push_back(transform(c));
        return and_gate(std::move(ls));
      }
      case Prop::Kind::kOr: {
        std::vector<int> ls;
        ls.reserve(p.children.size());
        for (const Prop& c : p.children) ls.push_back(transform(c));
        return or_gate(std::move(ls));
      }
      case Prop::Kind::kCount: {
        std::vector<int> xs;
        xs.reserve(p.children.size());
        for (const Prop& c : p.children) xs.push_back(transform(c));
        switch (p.cmp) {
          case CmpOp::kGt:
            return at_least(xs, p.n + 1);
          case CmpOp::kLt:
            return negate(at_least(xs, p.n));
          case CmpOp::kEq:
            return and_gate({at_least(xs, p.n), negate(at_least(xs, p.n + 1))});
        }
        throw OracleError("unknown cmp");
      }
    }
    throw OracleError("unknown prop kind");
  }

 private:
  int counter_cell(const std::vector<int>& xs, int i, int j,
                   std::map<std::pair<int, int>, int>& memo) {
    if (j <= 0) return true_lit();
    if (j > i) return false_lit();
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    int without = counter_cell(xs, i - 1, j, memo);
    int with = and_gate({counter_cell(xs, i - 1, j - 1, memo), xs[i - 1]});
    int cell = or_gate({without, with});
    memo[{i, j}] = cell;
    return cell;
  }

  int num_vars_;
  std::vector<std::vector<int>> clauses_;
  std::map<std::vector<int>, int> and_cache_;
  std::map<std::vector<int>, int> or_cache_;
};

// Indexed binary max-heap over variables keyed by conflict activity, with
// index order breaking ties. The comparator is a strict total order, so the
// pop sequence is deterministic for a given sequence of pushes and bumps.
class ActivityHeap {
 public:
  explicit ActivityHeap(int n) : activity_(n, 0.0), pos_(n, -1) {
    heap_.reserve(n);
    for (int v = 0; v < n; ++v) push(v);
  }

  bool empty() const { return heap_.empty(); }

  int pop() {
    int v = heap_[0];
    pos_[v] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      pos_[heap_[0]] = 0;
      sift_down(0);
    }
    return v;
  }

  void push(int v) {
    if (pos_[v] >= 0) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    sift_up(pos_[v]);
  }

  void bump(int v, double inc) {
    activity_[v] += inc;
    if (pos_[v] >= 0) sift_up(pos_[v]);
  }

  void rescale(double factor) {
    for (double& a : activity_) a *= factor;
  }

  double activity(int v) const { return activity_[v]; }

 private:
  bool before(int a, int b) const {
    return activity_[a] > activity_[b] ||
           (activity_[a] == activity_[b] && a < b);
  }

  void sift_up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  void sift_down(int i) {
    int v = heap_[i];
    int n = static_cast<int>(heap_.size());
    while (true) {
      int child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], v)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  std::vector<double> activity_;
  std::vector<int> pos_;
  std::vector<int> heap_;
};

// Clause-learning DPLL with two-literal watching, first-UIP conflict
// analysis, phase saving, geometric restarts, and activity-driven decisions.
// Counting constraints ground to instances where a fixed decision order can
// thrash for minutes while activity order settles them in milliseconds. All
// heuristic state updates deterministically, so verdicts are reproducible
// across platforms.
class SatSolver {
 public:
  SatSolver(int num_vars, std::vector<std::vector<int>> clauses)
      : num_vars_(num_vars),
        value_(num_vars, 0),
        level_(num_vars, 0),
        reason_(num_vars, -1),
        phase_(num_vars, 0),
        seen_(num_vars, 0),
        order_(num_vars),
        watches_(2 * static_cast<size_t>(num_vars)) {
    for (std::vector<int>& c : clauses) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool tautology = false;
      for (size_t i = 0; i + 1 < c.size(); ++i) {
        if (c[i] == (c[i + 1] ^ 1)) {
          tautology = true;
          break;
        }
      }
      if (tautology) continue;
      if (c.empty()) {
        contradictory_ = true;
        return;
      }
      if (c.size() == 1) {
        if (!enqueue(c[0], -1)) {
          contradictory_ = true;
          return;
        }
        continue;
      }
      attach(std::move(c));
    }
  }

  // Throws OracleError if the conflict budget is exhausted.
  bool solve() {
    if (contradictory_) return false;
    uint64_t conflicts = 0;
    uint64_t restart_at = 128;
    while (true) {
      int confl = propagate();
      if (confl >= 0) {
        if (decision_level() == 0) return false;
        if (++conflicts > kMaxConflicts) {
          throw OracleError("satisfiability search exceeded its budget");
        }
        std::vector<int> learnt;
        int backjump = 0;
        analyze(confl, &learnt, &backjump);
        cancel_until(backjump);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int idx = attach(std::move(learnt));
          enqueue(clauses_[idx][0], idx);
        }
        var_inc_ /= 0.95;
        if (conflicts >= restart_at) {
          restart_at += restart_at / 2 + 64;
          cancel_until(0);
        }
        continue;
      }
      int var = next_decision();
      if (var < 0) return true;
      trail_lim_.push_back(trail_.size());
      enqueue(2 * var + (phase_[var] ? 0 : 1), -1);
    }
  }

 private:
  static constexpr uint64_t kMaxConflicts = 1u << 20;

  int lit_value(int lit) const {
    int v = value_[lit >> 1];
    return (lit & 1) ? -v : v;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  bool enqueue(int lit, int reason) {
    int v = lit_value(lit);
    if (v != 0) return v > 0;
    value_[lit >> 1] = (lit & 1) ? -1 : 1;
    level_[lit >> 1] = decision_level();
    reason_[lit >> 1] = reason;
    trail_.push_back(lit);
    return true;
  }

  int attach(std::vector<int> clause) {
    int idx = static_cast<int>(clauses_.size());
    // watches_[l] lists the clauses currently watching literal l; a clause is
    // revisited when one of its two watched literals becomes false.
    watches_[clause[0]].push_back(idx);
    watches_[clause[1]].push_back(idx);
    clauses_.push_back(std::move(clause));
    return idx;
  }

  // Returns the index of a conflicting clause, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      int false_lit = p ^ 1;
      std::vector<int>& watch = watches_[false_lit];
      size_t keep = 0;
      for (size_t i = 0; i < watch.size(); ++i) {
        int idx = watch[i];
        std::vector<int>& c = clauses_[idx];
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        if (lit_value(c[0]) > 0) {
          watch[keep++] = idx;
          continue;
        }
        bool moved = false;
        for (size_t j = 2; j < c.size(); ++j) {
          if (lit_value(c[j]) >= 0) {
            std::swap(c[1], c[j]);
            watches_[c[1]].push_back(idx);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        watch[keep++] = idx;
        if (lit_value(c[0]) < 0) {
          for (++i; i < watch.size(); ++i) watch[keep++] = watch[i];
          watch.resize(keep);
          return idx;
        }
        enqueue(c[0], idx);
      }
      watch.resize(keep);
    }
    return -1;
  }

  void analyze(int confl, std::vector<int>* learnt, int* backjump) {
    learnt->assign(1, 0);
    int path = 0;
    int p = -1;
    size_t index = trail_.size();
    do {
      const std::vector<int>& c = clauses_[confl];
      // For a reason clause, c[0] is the literal it asserted (p itself), so
      // the scan starts at 1; the initial conflict clause is scanned whole.
      for (size_t j = (p == -1 ? 0 : 1); j < c.size(); ++j) {
        int q = c[j];
        int v = q >> 1;
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump_activity(v);
        if (level_[v] >= decision_level()) {
          ++path;
        } else {
          learnt->push_back(q);
        }
      }
      while (!seen_[trail_[--index] >> 1]) {
      }
      p = trail_[index];
      confl = reason_[p >> 1];
      seen_[p >> 1] = 0;
      --path;
    } while (path > 0);
    (*learnt)[0] = p ^ 1;

    *backjump = 0;
    for (size_t i = 1; i < learnt->size(); ++i) {
      seen_[(*learnt)[i] >> 1] = 0;
      int lv = level_[(*learnt)[i] >> 1];
      if (lv > *backjump) {
        *backjump = lv;
        std::swap((*learnt)[1], (*learnt)[i]);
      }
    }
  }

  void cancel_until(int target) {
    if (decision_level() <= target) return;
    size_t bound = trail_lim_[target];
    for (size_t i = trail_.size(); i-- > bound;) {
      int v = trail_[i] >> 1;
      phase_[v] = value_[v] > 0;
      value_[v] = 0;
      reason_[v] = -1;
      order_.push(v);
    }
    trail_.resize(bound);
    trail_lim_.resize(target);
    qhead_ = bound;
  }

  void bump_activity(int v) {
    order_.bump(v, var_inc_);
    if (order_.activity(v) > 1e100) {
      order_.rescale(1e-100);
      var_inc_ *= 1e-100;
    }
  }

  // Variables assigned by propagation linger in the heap; skip them here and
  // let cancel_until re-insert whatever it unassigns.
  int next_decision() {
    while (!order_.empty()) {
      int v = order_.pop();
      if (value_[v] == 0) return v;
    }
    return -1;
  }

  int num_vars_;
  bool contradictory_ = false;
  std::vector<int8_t> value_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> phase_;
  std::vector<char> seen_;
  ActivityHeap order_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;
  double var_inc_ = 1.0;
};

bool satisfiable(const Prop& p, int atom_count) {
  CnfBuilder builder(atom_count);
  int root = builder.transform(p);
  builder.add_clause({root});
  SatSolver solver(builder.num_vars(), builder.take_clauses());
  return solver.solve();
}

// ---------------------------------------------------------------------------
// Rank order-type enumeration for comparatives.

void check_order_only(const Formula& f) {
  using Kind = Formula::Kind;
  switch (f.kind) {
    case Kind::kOrderAtom:
      return;
    case Kind::kNot:
    case Kind::kAnd:
    case Kind::kOr:
    case Kind::kImplies:
      for (const Formula& c : f.children) check_order_only(c);
      return;
    default:
      throw OracleError(
          "formulas mixing order atoms with quantifiers or relations are "
          "unsupported");
  }
}

// Enumerates all ordered set partitions (order types) of `persons` as rank
// assignments, visiting each; the visitor returns false to stop.
bool for_each_order_type(const std::vector<std::string>& persons, int max_levels,
                         const std::function<bool(const World&)>& visit) {
  std::vector<int> level(persons.size(), 0);
  World w;
  w.persons = persons;

  // Insert persons one at a time: join an existing level, or open a new
  // level in any gap (below the bottom, between two levels, above the top).
  std::function<bool(size_t, int)> rec = [&](size_t i, int levels) -> bool {
    if (i == persons.size()) {
      w.rank.clear();
      for (size_t j = 0; j < persons.size(); ++j) {
        w.rank[persons[j]] = level[j];
      }
      return visit(w);
    }
    for (int join = 1; join <= levels; ++join) {
      level[i] = join;
      if (!rec(i + 1, levels)) return false;
    }
    if (levels < max_levels) {
      for (int gap = 1; gap <= levels + 1; ++gap) {
        // New level at height `gap`; existing levels >= gap shift up.
        for (size_t j = 0; j < i; ++j) {
          if (level[j] >= gap) ++level[j];
        }
        level[i] = gap;
        if (!rec(i + 1, levels + 1)) return false;
        for (size_t j = 0; j < i; ++j) {
          if (level[j] > gap) --level[j];
        }
      }
    }
    return true;
  };
  return rec(0, 0);
}

struct SatTracker {
  bool sat_p = false;
  bool sat_p_h = false;
  bool sat_p_not_h = false;

  // Returns true when all three witnesses were found (NEUTRAL proven).
  bool note(bool premise_true, bool hypothesis_true) {
    if (premise_true) {
      sat_p = true;
      if (hypothesis_true) sat_p_h = true;
      else sat_p_not_h = true;
    }
    return sat_p_h && sat_p_not_h;
  }

  Label decide() const {
    if (!sat_p) {
      throw OracleError("premise is unsatisfiable within bounds");
    }
    if (!sat_p_not_h) return Label::kEntailment;
    if (!sat_p_h) return Label::kContradiction;
    return Label::kNeutral;
  }
};

std::optional<Sort> sort_of_constant(const OracleOptions& opts,
                                     const std::string& name) {
  auto it = opts.constant_sorts.find(name);
  if (it == opts.constant_sorts.end()) return std::nullopt;
  return it->second;
}

void max_count_threshold(const Formula& f, std::map<Sort, int>& out) {
  if (f.kind == Formula::Kind::kCountCmp) {
    out[f.sort] = std::max(out[f.sort], f.n);
  }
  for (const Formula& c : f.children) max_count_threshold(c, out);
}

}  // namespace

OracleResult oracle_label_ex(const Formula& premise_in,
                             const Formula& hypothesis_in,
                             const OracleOptions& opts) {
  Formula premise = expand_sugar(premise_in);
  Formula hypothesis = expand_sugar(hypothesis_in);
  if (!is_closed(premise) || !is_closed(hypothesis)) {
    throw FormulaError("oracle requires closed formulas");
  }
  std::vector<Formula> theory;
  theory.reserve(opts.theory.size());
  for (const Formula& t : opts.theory) {
    theory.push_back(expand_sugar(t));
    if (!is_closed(theory.back())) {
      throw FormulaError("oracle theory must be closed");
    }
  }

  bool order = contains_order_atoms(premise) ||
               contains_order_atoms(hypothesis);
  for (const Formula& t : theory) order = order || contains_order_atoms(t);

  OracleResult result;

  if (order) {
    check_order_only(premise);
    check_order_only(hypothesis);
    for (const Formula& t : theory) check_order_only(t);

    std::set<std::string> mentioned = constants_of(premise);
    for (const std::string& c : constants_of(hypothesis)) mentioned.insert(c);
    for (const Formula& t : theory) {
      for (const std::string& c : constants_of(t)) mentioned.insert(c);
    }
    std::vector<std::string> persons(mentioned.begin(), mentioned.end());
    for (const std::string& p : persons) {
      auto sort = sort_of_constant(opts, p);
      if (sort && *sort != Sort::kPerson) {
        throw FormulaError("order atom over non-person constant '" + p + "'");
      }
    }
    int k = static_cast<int>(persons.size());
    if (k > opts.bounds.max_persons) {
      throw OracleError("comparative persons exceed bounds (" +
                        std::to_string(persons.size()) + " > " +
                        std::to_string(opts.bounds.max_persons) + ")");
    }

    // An explicit level cap below the person count changes the model class,
    // and only tiny chains ever ask for one; that case keeps the direct
    // order-type enumeration.
    if (opts.bounds.max_rank > 0 && opts.bounds.max_rank < k) {
      SatTracker tracker;
      uint64_t worlds = 0;
      for_each_order_type(persons, opts.bounds.max_rank, [&](const World& w) {
        ++worlds;
        bool p = eval(premise, w);
        for (const Formula& t : theory) p = p && eval(t, w);
        bool h = p && eval(hypothesis, w);
        return !tracker.note(p, p ? h : false);
      });
      result.worlds_checked = worlds;
      result.label = tracker.decide();
      return result;
    }

    // Total preorders on the persons are exactly the models of the leq
    // axioms: totality over every pair plus transitivity over every triple.
    // "a taller than b" is the negated leq(a, b) atom and "a as tall as b"
    // the conjunction of both directions, so the three queries run as
    // bounded SAT like the relational path; the order-type count (a Fubini
    // number in the person count) never enters the cost.
    std::map<std::string, int> person_index;
    for (int i = 0; i < k; ++i) person_index[persons[i]] = i;
    auto leq = [&](int i, int j) {
      Prop p;
      p.kind = Prop::Kind::kAtom;
      p.atom = i * k + j;
      return p;
    };

    std::function<Prop(const Formula&)> ground_order =
        [&](const Formula& f) -> Prop {
      switch (f.kind) {
        case Formula::Kind::kOrderAtom: {
          int i = person_index.at(f.args[0].name);
          int j = person_index.at(f.args[1].name);
          if (f.order_kind == OrderKind::kTaller) {
            if (i == j) return Prop::constant(false);
            return make_not(leq(i, j));
          }
          if (i == j) return Prop::constant(true);
          return make_and({leq(i, j), leq(j, i)});
        }
        case Formula::Kind::kNot:
          return make_not(ground_order(f.children[0]));
        case Formula::Kind::kAnd: {
          std::vector<Prop> cs;
          cs.reserve(f.children.size());
          for (const Formula& c : f.children) cs.push_back(ground_order(c));
          return make_and(std::move(cs));
        }
        case Formula::Kind::kOr: {
          std::vector<Prop> cs;
          cs.reserve(f.children.size());
          for (const Formula& c : f.children) cs.push_back(ground_order(c));
          return make_or(std::move(cs));
        }
        case Formula::Kind::kImplies:
          return make_or({make_not(ground_order(f.children[0])),
                          ground_order(f.children[1])});
        default:
          throw OracleError("unsupported connective in order formula");
      }
    };

    std::vector<Prop> premise_side;
    premise_side.push_back(ground_order(premise));
    for (const Formula& t : theory) premise_side.push_back(ground_order(t));
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        premise_side.push_back(make_or({leq(i, j), leq(j, i)}));
      }
    }
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        for (int l = 0; l < k; ++l) {
          if (l == i || l == j) continue;
          premise_side.push_back(make_or(
              {make_not(leq(i, j)), make_not(leq(j, l)), leq(i, l)}));
        }
      }
    }

    Prop h_prop = ground_order(hypothesis);
    int atom_count = k * k;
    auto query = [&](Prop extra) {
      std::vector<Prop> parts = premise_side;
      parts.push_back(std::move(extra));
      return satisfiable(make_and(std::move(parts)), atom_count);
    };

    if (!query(Prop::constant(true))) {
      throw OracleError("premise is unsatisfiable within bounds");
    }
    result.atom_count = atom_count;
    if (!query(make_not(h_prop))) {
      result.label = Label::kEntailment;
    } else if (!query(h_prop)) {
      result.label = Label::kContradiction;
    } else {
      result.label = Label::kNeutral;
    }
    return result;
  }

  // Relational path: build carriers, ground, run the three SAT queries.
  std::set<std::string> mentioned = constants_of(premise);
  for (const std::string& c : constants_of(hypothesis)) mentioned.insert(c);
  for (const Formula& t : theory) {
    for (const std::string& c : constants_of(t)) mentioned.insert(c);
  }

  Carriers carriers;
  for (const std::string& c : mentioned) {
    auto sort = sort_of_constant(opts, c);
    if (!sort) {
      throw FormulaError("constant '" + c + "' has no declared sort");
    }
    switch (*sort) {
      case Sort::kPerson: carriers.persons.push_back(c); break;
      case Sort::kPlace: carriers.places.push_back(c); break;
      case Sort::kEntity: carriers.entities.push_back(c); break;
    }
  }

  std::map<Sort, int> count_max;
  max_count_threshold(premise, count_max);
  max_count_threshold(hypothesis, count_max);
  for (const Formula& t : theory) max_count_threshold(t, count_max);

  auto padding_for = [&](Sort sort, size_t mentioned_count) {
    int pad = opts.bounds.padding_per_sort;
    auto it = count_max.find(sort);
    if (it != count_max.end()) {
      pad = std::max(pad, it->second + 2 - static_cast<int>(mentioned_count));
    }
    return std::max(pad, 0);
  };

  result.padding_persons = padding_for(Sort::kPerson, carriers.persons.size());
  result.padding_places = padding_for(Sort::kPlace, carriers.places.size());
  result.padding_entities = padding_for(Sort::kEntity, carriers.entities.size());
  if (opts.entity_carrier > 0) {
    int total = static_cast<int>(carriers.entities.size()) +
                result.padding_entities;
    if (total < opts.entity_carrier) {
      result.padding_entities = opts.entity_carrier -
                                static_cast<int>(carriers.entities.size());
    }
  }

  for (int i = 1; i <= result.padding_persons; ++i) {
    carriers.persons.push_back("_p" + std::to_string(i));
  }
  for (int i = 1; i <= result.padding_places; ++i) {
    carriers.places.push_back("_l" + std::to_string(i));
  }
  for (int i = 1; i <= result.padding_entities; ++i) {
    carriers.entities.push_back("_e" + std::to_string(i));
  }

  if (static_cast<int>(carriers.persons.size()) > opts.bounds.max_persons) {
    throw OracleError("person carrier exceeds bounds (" +
                      std::to_string(carriers.persons.size()) + " > " +
                      std::to_string(opts.bounds.max_persons) + ")");
  }
  if (static_cast<int>(carriers.places.size()) > opts.bounds.max_places) {
    throw OracleError("place carrier exceeds bounds (" +
                      std::to_string(carriers.places.size()) + " > " +
                      std::to_string(opts.bounds.max_places) + ")");
  }
  if (carriers.entities.size() > 24) {
    throw OracleError("entity carrier too large");
  }

  AtomTable atoms;
  Env env;
  std::vector<Prop> premise_parts;
  for (const Formula& t : theory) {
    premise_parts.push_back(ground(t, carriers, env, atoms));
  }
  premise_parts.push_back(ground(premise, carriers, env, atoms));
  Prop p_prop = make_and(std::move(premise_parts));
  Prop h_prop = ground(hypothesis, carriers, env, atoms);
  result.atom_count = static_cast<int>(atoms.names.size());

  if (!satisfiable(p_prop, result.atom_count)) {
    throw OracleError("premise is unsatisfiable within bounds");
  }
  Prop p_and_not_h = make_and([&] {
    std::vector<Prop> v;
    v.push_back(p_prop);
    v.push_back(make_not(h_prop));
    return v;
  }());
  if (!satisfiable(p_and_not_h, result.atom_count)) {
    result.label = Label::kEntailment;
    return result;
  }
  Prop p_and_h = make_and([&] {
    std::vector<Prop> v;
    v.push_back(p_prop);
    v.push_back(h_prop);
    return v;
  }());
  if (!satisfiable(p_and_h, result.atom_count)) {
    result.label = Label::kContradiction;
    return result;
  }
  result.label = Label::kNeutral;
  return result;
}

Label oracle_label(const Formula& premise, const Formula& hypothesis,
                   const DomainBounds& bounds,
                   const std::map<std::string, Sort>& constant_sorts) {
  OracleOptions opts;
  opts.bounds = bounds;
  opts.constant_sorts = constant_sorts;
  return oracle_label_ex(premise, hypothesis, opts).label;
}

}  // namespace semfrag
