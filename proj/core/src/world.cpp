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

#include "semfrag/world.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "semfrag/errors.hpp"

namespace semfrag {

const std::vector<std::string>& World::carrier(Sort sort) const {
  switch (sort) {
    case Sort::kPerson: return persons;
    case Sort::kPlace: return places;
    case Sort::kEntity: return entities;
  }
  throw FormulaError("unknown sort");
}

bool World::holds_binary(const std::string& pred, const std::string& a,
                         const std::string& b) const {
  auto it = binary.find(pred);
  return it != binary.end() && it->second.count({a, b}) > 0;
}

bool World::holds_unary(const std::string& pred, const std::string& a) const {
  auto it = unary.find(pred);
  return it != unary.end() && it->second.count(a) > 0;
}

namespace {

using Env = std::map<std::string, std::string>;

const std::string& resolve(const Term& t, const Env& env) {
  if (!t.is_var) return t.name;
  auto it = env.find(t.name);
  if (it == env.end()) {
    throw FormulaError("unbound variable '?" + t.name + "' during eval");
  }
  return it->second;
}

int rank_of(const World& w, const std::string& name) {
  auto it = w.rank.find(name);
  if (it == w.rank.end()) {
    throw FormulaError("no rank assigned to '" + name + "'");
  }
  return it->second;
}

bool eval_impl(const Formula& f, const World& w, Env& env) {
  using Kind = Formula::Kind;
  switch (f.kind) {
    case Kind::kAtom: {
      if (f.args.size() == 1) {
        return w.holds_unary(f.pred, resolve(f.args[0], env));
      }
      return w.holds_binary(f.pred, resolve(f.args[0], env),
                            resolve(f.args[1], env));
    }
    case Kind::kNot:
      return !eval_impl(f.children[0], w, env);
    case Kind::kAnd:
      for (const Formula& c : f.children) {
        if (!eval_impl(c, w, env)) return false;
      }
      return true;
    case Kind::kOr:
      for (const Formula& c : f.children) {
        if (eval_impl(c, w, env)) return true;
      }
      return false;
    case Kind::kImplies:
      return !eval_impl(f.children[0], w, env) ||
             eval_impl(f.children[1], w, env);
    case Kind::kForall: {
      for (const std::string& c : w.carrier(f.sort)) {
        auto saved = env.find(f.var) != env.end()
                         ? std::optional<std::string>(env[f.var])
                         : std::nullopt;
        env[f.var] = c;
        bool ok = eval_impl(f.children[0], w, env);
        if (saved) env[f.var] = *saved; else env.erase(f.var);
        if (!ok) return false;
      }
      return true;
    }
    case Kind::kExists:
    case Kind::kUniqueExists:
    case Kind::kCountCmp: {
      int count = 0;
      for (const std::string& c : w.carrier(f.sort)) {
        auto saved = env.find(f.var) != env.end()
                         ? std::optional<std::string>(env[f.var])
                         : std::nullopt;
        env[f.var] = c;
        bool ok = eval_impl(f.children[0], w, env);
        if (saved) env[f.var] = *saved; else env.erase(f.var);
        if (ok) ++count;
      }
      if (f.kind == Kind::kExists) return count > 0;
      if (f.kind == Kind::kUniqueExists) return count == 1;
      switch (f.cmp) {
        case CmpOp::kGt: return count > f.n;
        case CmpOp::kLt: return count < f.n;
        case CmpOp::kEq: return count == f.n;
      }
      throw FormulaError("unknown cmp");
    }
    case Kind::kOrderAtom: {
      int ra = rank_of(w, resolve(f.args[0], env));
      int rb = rank_of(w, resolve(f.args[1], env));
      return f.order_kind == OrderKind::kTaller ? ra > rb : ra == rb;
    }
    case Kind::kOnlyDid: {
      const std::string& subject = resolve(f.args[0], env);
      std::set<std::string> targets;
      for (size_t i = 1; i < f.args.size(); ++i) {
        targets.insert(resolve(f.args[i], env));
      }
      for (const std::string& t : targets) {
        if (!w.holds_binary(f.pred, subject, t)) return false;
      }
      for (const std::string& c : w.carrier(f.sort)) {
        if (!targets.count(c) && w.holds_binary(f.pred, subject, c)) {
          return false;
        }
      }
      return true;
    }
    case Kind::kEquals:
      return resolve(f.args[0], env) == resolve(f.args[1], env);
  }
  throw FormulaError("unknown formula kind");
}

}  // namespace

bool eval(const Formula& f, const World& w) {
  Env env;
  return eval_impl(f, w, env);
}

namespace {

uint64_t checked_pow(uint64_t base, uint64_t exp) {
  uint64_t out = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (out > (uint64_t{1} << 62) / (base == 0 ? 1 : base)) {
      throw OracleError("world space overflow");
    }
    out *= base;
  }
  return out;
}

}  // namespace

uint64_t count_worlds(const std::vector<std::string>& persons,
                      const std::vector<std::string>& places,
                      const DomainBounds& bounds,
                      const EnumerateOptions& opts) {
  uint64_t targets = places.size() + (opts.person_targets ? persons.size() : 0);
  uint64_t atoms = persons.size() * targets;
  if (atoms > 62) throw OracleError("world space overflow");
  uint64_t relations = uint64_t{1} << atoms;
  if (!opts.heights) return relations;
  int max_rank = bounds.max_rank > 0 ? bounds.max_rank
                                     : static_cast<int>(persons.size());
  uint64_t ranks = checked_pow(static_cast<uint64_t>(max_rank),
                               persons.size());
  if (relations > (uint64_t{1} << 62) / (ranks == 0 ? 1 : ranks)) {
    throw OracleError("world space overflow");
  }
  return relations * ranks;
}

bool for_each_world(const std::vector<std::string>& persons,
                    const std::vector<std::string>& places,
                    const DomainBounds& bounds, const EnumerateOptions& opts,
                    const std::function<bool(const World&)>& visit) {
  if (static_cast<int>(persons.size()) > bounds.max_persons) {
    throw OracleError("person carrier exceeds bounds (" +
                      std::to_string(persons.size()) + " > " +
                      std::to_string(bounds.max_persons) + ")");
  }
  if (static_cast<int>(places.size()) > bounds.max_places) {
    throw OracleError("place carrier exceeds bounds (" +
                      std::to_string(places.size()) + " > " +
                      std::to_string(bounds.max_places) + ")");
  }

  std::vector<std::pair<std::string, std::string>> domain;
  for (const std::string& p : persons) {
    for (const std::string& l : places) domain.emplace_back(p, l);
    if (opts.person_targets) {
      for (const std::string& q : persons) domain.emplace_back(p, q);
    }
  }
  if (domain.size() > 30) {
    throw OracleError("relation domain too large to enumerate literally (" +
                      std::to_string(domain.size()) + " atoms)");
  }

  int max_rank = bounds.max_rank > 0 ? bounds.max_rank
                                     : static_cast<int>(persons.size());
  if (max_rank <= 0) max_rank = 1;

  World w;
  w.persons = persons;
  w.places = places;

  const uint64_t relation_count = uint64_t{1} << domain.size();
  std::vector<int> ranks(persons.size(), 1);
  for (uint64_t mask = 0; mask < relation_count; ++mask) {
    auto& rel = w.binary[opts.relation];
    rel.clear();
    for (size_t i = 0; i < domain.size(); ++i) {
      if (mask & (uint64_t{1} << i)) rel.insert(domain[i]);
    }
    if (!opts.heights) {
      if (!visit(w)) return false;
      continue;
    }
    // Odometer over rank functions persons -> {1..max_rank}.
    std::fill(ranks.begin(), ranks.end(), 1);
    for (;;) {
      w.rank.clear();
      for (size_t i = 0; i < persons.size(); ++i) w.rank[persons[i]] = ranks[i];
      if (!visit(w)) return false;
      size_t i = 0;
      while (i < ranks.size() && ranks[i] == max_rank) {
        ranks[i] = 1;
        ++i;
      }
      if (i == ranks.size()) break;
      ++ranks[i];
    }
  }
  return true;
}

std::vector<World> enumerate_worlds(const std::vector<std::string>& persons,
                                    const std::vector<std::string>& places,
                                    const DomainBounds& bounds,
                                    const EnumerateOptions& opts,
                                    uint64_t limit) {
  uint64_t total = count_worlds(persons, places, bounds, opts);
  if (total > limit) {
    throw OracleError("world space too large to materialize: " +
                      std::to_string(total) + " worlds");
  }
  std::vector<World> out;
  out.reserve(total);
  for_each_world(persons, places, bounds, opts, [&](const World& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace semfrag
