// Copyright 2026 The symlift authors
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

#include "symlift/learner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "symlift/ground.hpp"

namespace symlift {

Rule CandidateConstraint::toRule() const {
  Rule r;
  r.kind = Rule::Kind::Constraint;
  r.bodyPos = body;
  return r;
}

std::string CandidateConstraint::text() const { return toString(toRule()); }

long long scoreBody(const std::vector<Atom>& body, const std::optional<ScoringTable>& scoring) {
  if (!scoring) return static_cast<long long>(body.size());
  long long total = 0;
  for (const auto& a : body) {
    auto it = scoring->weights.find(a.pred);
    total += it == scoring->weights.end() ? scoring->defaultWeight : it->second;
  }
  return total;
}

namespace {

struct LiteralTemplate {
  std::size_t mode;
  std::vector<int> varIds;
};

std::string renderBody(const std::vector<Atom>& body) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += toString(body[i]);
  }
  return out;
}

// Canonical form: minimum over all bijective renamings of the used
// variables of the sorted literal list.
std::pair<std::vector<Atom>, std::string> canonicalize(const std::vector<LiteralTemplate>& lits,
                                                       const std::vector<ModeDecl>& modes) {
  std::vector<int> used;
  for (const auto& l : lits)
    for (int v : l.varIds)
      if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
  std::sort(used.begin(), used.end());

  std::vector<int> perm(used.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Atom> bestBody;
  std::string bestKey;
  do {
    std::map<int, int> rename;  // var id -> new index
    for (std::size_t i = 0; i < used.size(); ++i) rename[used[i]] = perm[i];
    std::vector<Atom> body;
    for (const auto& l : lits) {
      Atom a;
      a.pred = modes[l.mode].pred;
      for (int v : l.varIds) a.args.push_back(Term::variable("V" + std::to_string(rename[v] + 1)));
      body.push_back(std::move(a));
    }
    std::sort(body.begin(), body.end(), [](const Atom& a, const Atom& b) {
      return toString(a) < toString(b);
    });
    std::string key = renderBody(body);
    if (bestKey.empty() || key < bestKey) {
      bestKey = std::move(key);
      bestBody = std::move(body);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {std::move(bestBody), std::move(bestKey)};
}

}  // namespace

std::vector<CandidateConstraint> enumerateSpace(const HypothesisSpace& space,
                                                const std::optional<ScoringTable>& scoring) {
  // Literal templates: every assignment of variable slots to a mode's
  // argument positions.
  std::vector<LiteralTemplate> templates;
  for (std::size_t m = 0; m < space.modes.size(); ++m) {
    const auto& mode = space.modes[m];
    std::vector<int> ids(mode.argTypes.size(), 0);
    while (true) {
      bool ok = true;
      if (mode.antiReflexive) {
        for (std::size_t i = 0; i < ids.size() && ok; ++i)
          for (std::size_t j = i + 1; j < ids.size() && ok; ++j)
            if (ids[i] == ids[j]) ok = false;
      }
      if (ok) templates.push_back({m, ids});
      // next assignment
      std::size_t k = 0;
      for (; k < ids.size(); ++k) {
        if (++ids[k] < space.maxVars) break;
        ids[k] = 0;
      }
      if (k == ids.size()) break;
    }
  }
  // 0-arity modes got enumerated twice by the loop above; dedup.
  std::sort(templates.begin(), templates.end(), [](const auto& a, const auto& b) {
    return std::tie(a.mode, a.varIds) < std::tie(b.mode, b.varIds);
  });
  templates.erase(std::unique(templates.begin(), templates.end(),
                              [](const auto& a, const auto& b) {
                                return a.mode == b.mode && a.varIds == b.varIds;
                              }),
                  templates.end());

  std::map<std::string, CandidateConstraint> candidates;
  std::vector<LiteralTemplate> body;
  std::vector<int> recallUse(space.modes.size(), 0);
  std::map<int, std::string> varType;

  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (!body.empty()) {
      auto [atoms, key] = canonicalize(body, space.modes);
      // Identical literals collapse under set semantics; skip such bodies.
      bool dup = false;
      for (std::size_t i = 1; i < atoms.size() && !dup; ++i)
        if (atoms[i] == atoms[i - 1]) dup = true;
      if (!dup && !candidates.count(key)) {
        CandidateConstraint c;
        c.body = std::move(atoms);
        c.canonical = key;
        c.cost = scoreBody(c.body, scoring);
        candidates.emplace(std::move(key), std::move(c));
        if (candidates.size() > space.spaceLimit)
          throw std::runtime_error("hypothesis space exceeds limit of " +
                                   std::to_string(space.spaceLimit) + " constraints");
      }
    }
    if (body.size() == static_cast<std::size_t>(space.maxBody)) return;
    for (std::size_t t = from; t < templates.size(); ++t) {
      const auto& tpl = templates[t];
      const auto& mode = space.modes[tpl.mode];
      if (recallUse[tpl.mode] == mode.recall) continue;
      // type consistency across the body
      std::vector<int> fresh;
      bool ok = true;
      for (std::size_t i = 0; i < tpl.varIds.size() && ok; ++i) {
        auto it = varType.find(tpl.varIds[i]);
        if (it == varType.end()) {
          varType.emplace(tpl.varIds[i], mode.argTypes[i]);
          fresh.push_back(tpl.varIds[i]);
        } else if (it->second != mode.argTypes[i]) {
          ok = false;
        }
      }
      if (ok) {
        ++recallUse[tpl.mode];
        body.push_back(tpl);
        extend(t);
        body.pop_back();
        --recallUse[tpl.mode];
      }
      for (int v : fresh) varType.erase(v);
    }
  };
  extend(0);

  std::vector<CandidateConstraint> out;
  out.reserve(candidates.size());
  for (auto& [key, c] : candidates) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const CandidateConstraint& a, const CandidateConstraint& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.canonical < b.canonical;
  });
  return out;
}

Program Hypothesis::toProgram() const {
  Program p;
  for (const auto& c : constraints) p.rules.push_back(c.toRule());
  return p;
}

namespace {

// Ground program of background + context plus the ranks pinned by the
// partial interpretation, and the accepting answer sets.
struct ExampleContext {
  GroundProgram gp;
  std::vector<Bitset> accepting;
};

GroundProgram groundWithExample(const Program& background, const Example& e, bool& possible) {
  Program p = background;
  p.merge(e.context);
  GroundProgram gp = ground(p);
  possible = true;
  for (const auto& a : e.pi.include) {
    const int r = gp.table.rank(a);
    if (r < 0) {
      possible = false;  // inclusion atom cannot occur in any answer set
      return gp;
    }
    GroundRule force;
    force.kind = Rule::Kind::Constraint;
    force.neg = {r};
    gp.rules.push_back(std::move(force));
  }
  for (const auto& a : e.pi.exclude) {
    const int r = gp.table.rank(a);
    if (r < 0) continue;
    GroundRule forbid;
    forbid.kind = Rule::Kind::Constraint;
    forbid.pos = {r};
    gp.rules.push_back(std::move(forbid));
  }
  return gp;
}

}  // namespace

bool accepts(const Program& backgroundPlusH, const Example& e, const EnumConfig& cfg) {
  bool possible = true;
  GroundProgram gp = groundWithExample(backgroundPlusH, e, possible);
  if (!possible) return false;
  bool found = false;
  auto res = forEachAnswerSet(gp, cfg, [&](const Bitset&) {
    found = true;
    return false;
  });
  if (!found && res.status == EnumStatus::BudgetExhausted)
    throw BudgetError("accepts(" + e.id + "): node budget exhausted, result indeterminate");
  return found;
}

Hypothesis learn(const LearningTask& task, const EnumConfig& cfg) {
  {
    std::set<std::string> ids;
    for (const auto& e : task.examples)
      if (!ids.insert(e.id).second)
        throw std::invalid_argument("duplicate example id: " + e.id);
  }
  std::vector<CandidateConstraint> space = enumerateSpace(task.space, task.scoring);

  Program base = task.background;
  base.merge(task.abk);

  // Accepting answer sets per example, enumerated once; constraints only
  // ever delete answer sets, so coverage of any H over this pool is exact.
  std::vector<ExampleContext> ctx(task.examples.size());
  for (std::size_t i = 0; i < task.examples.size(); ++i) {
    bool possible = true;
    ctx[i].gp = groundWithExample(base, task.examples[i], possible);
    if (!possible) continue;
    EnumConfig full = cfg;
    full.cap = 0;
    EnumResult res = enumerateAnswerSets(ctx[i].gp, full);
    if (res.status == EnumStatus::BudgetExhausted)
      throw BudgetError("learn: enumerating accepting answer sets of " + task.examples[i].id +
                        " exhausted the node budget");
    ctx[i].accepting = std::move(res.sets);
  }

  // Kill masks: which accepting sets each candidate eliminates.
  struct Effect {
    std::vector<Bitset> kill;  // per example, over accepting-set indices
    std::string key;
    bool any = false;
  };
  auto effectOf = [&](const CandidateConstraint& c) {
    Effect eff;
    std::ostringstream key;
    for (std::size_t i = 0; i < task.examples.size(); ++i) {
      Bitset k(ctx[i].accepting.size());
      if (!ctx[i].accepting.empty()) {
        for (const auto& inst : groundConstraintBodies(c.toRule(), ctx[i].gp)) {
          for (std::size_t s = 0; s < ctx[i].accepting.size(); ++s) {
            if (k.test(s)) continue;
            bool holds = true;
            for (int a : inst)
              if (!ctx[i].accepting[s].test(static_cast<std::size_t>(a))) { holds = false; break; }
            if (holds) k.set(s);
          }
        }
      }
      if (k.any()) eff.any = true;
      key << 'e' << i << ':';
      k.forEachSet([&](std::size_t s) { key << s << ','; });
      eff.kill.push_back(std::move(k));
    }
    eff.key = key.str();
    return eff;
  };

  struct Candidate {
    const CandidateConstraint* c;
    std::vector<Bitset> kill;
  };
  std::vector<Candidate> useful;
  {
    std::unordered_map<std::string, std::size_t> byEffect;
    for (const auto& c : space) {
      Effect eff = effectOf(c);
      if (!eff.any) continue;  // eliminates nothing anywhere
      // An infinite positive with every accepting set killed can never be
      // part of a feasible hypothesis.
      bool killsInfinitePositive = false;
      for (std::size_t i = 0; i < task.examples.size(); ++i) {
        const auto& e = task.examples[i];
        if (!e.positive || e.weight) continue;
        if (!ctx[i].accepting.empty() &&
            eff.kill[i].count() == ctx[i].accepting.size())
          killsInfinitePositive = true;
      }
      if (killsInfinitePositive) continue;
      auto [it, fresh] = byEffect.emplace(eff.key, useful.size());
      if (fresh) useful.push_back({&c, std::move(eff.kill)});
      // candidates are cost-then-canonical sorted, so the first wins
    }
  }

  // Feasibility prerequisites.
  for (std::size_t i = 0; i < task.examples.size(); ++i) {
    const auto& e = task.examples[i];
    if (e.weight) continue;  // finite weight: may stay uncovered
    if (e.positive && ctx[i].accepting.empty())
      throw UnsatisfiableTaskError(
          "unsatisfiable task: positive example " + e.id + " has no accepting answer set", e.id);
    if (!e.positive && !ctx[i].accepting.empty()) {
      Bitset killable(ctx[i].accepting.size());
      for (const auto& cand : useful) killable = killable | cand.kill[i];
      if (killable.count() != ctx[i].accepting.size())
        throw UnsatisfiableTaskError(
            "unsatisfiable task: negative example " + e.id +
                " keeps an accepting answer set no constraint in the space can eliminate",
            e.id);
    }
  }

  // Suffix kill unions for bounding.
  const std::size_t nc = useful.size();
  const std::size_t ne = task.examples.size();
  std::vector<std::vector<Bitset>> suffix(nc + 1);
  suffix[nc].resize(ne);
  for (std::size_t i = 0; i < ne; ++i) suffix[nc][i] = Bitset(ctx[i].accepting.size());
  for (std::size_t c = nc; c-- > 0;) {
    suffix[c].resize(ne);
    for (std::size_t i = 0; i < ne; ++i) suffix[c][i] = suffix[c + 1][i] | useful[c].kill[i];
  }

  struct Best {
    long long objective = -1;
    std::vector<std::size_t> picks;
    std::string key;
  } best;

  std::vector<Bitset> alive(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    alive[i] = Bitset(ctx[i].accepting.size());
    for (std::size_t s = 0; s < ctx[i].accepting.size(); ++s) alive[i].set(s);
  }

  auto evaluate = [&](long long cost, const std::vector<Bitset>& state,
                      const std::vector<std::size_t>& picks) {
    long long obj = cost;
    for (std::size_t i = 0; i < ne; ++i) {
      const auto& e = task.examples[i];
      const bool covered = e.positive ? state[i].any() : !state[i].any();
      if (covered) continue;
      if (!e.weight) return;  // infeasible as a complete solution
      obj += *e.weight;
    }
    std::string key;
    for (auto p : picks) key += useful[p].c->canonical + "|";
    if (best.objective < 0 || obj < best.objective ||
        (obj == best.objective && key < best.key)) {
      best.objective = obj;
      best.picks = picks;
      best.key = std::move(key);
    }
  };

  std::vector<std::size_t> picks;
  std::function<void(std::size_t, long long)> dfs = [&](std::size_t idx, long long cost) {
    evaluate(cost, alive, picks);
    if (idx == nc) return;
    // Bound: cost plus penalties that no remaining candidate can avoid.
    long long bound = cost;
    for (std::size_t i = 0; i < ne; ++i) {
      const auto& e = task.examples[i];
      if (e.positive) {
        if (!alive[i].any()) {
          if (!e.weight) return;  // dead infinite positive: hopeless subtree
          bound += *e.weight;
        }
      } else {
        if (alive[i].andNot(suffix[idx][i]).any()) {
          if (!e.weight) return;  // an uncoverable infinite negative
          bound += *e.weight;
        }
      }
    }
    if (best.objective >= 0 && bound > best.objective) return;

    // include useful[idx]
    {
      bool killsPositive = false;
      for (std::size_t i = 0; i < ne && !killsPositive; ++i) {
        const auto& e = task.examples[i];
        if (e.positive && !e.weight && alive[i].any() &&
            !alive[i].andNot(useful[idx].kill[i]).any())
          killsPositive = true;
      }
      if (!killsPositive) {
        std::vector<Bitset> saved = alive;
        for (std::size_t i = 0; i < ne; ++i) alive[i] = alive[i].andNot(useful[idx].kill[i]);
        picks.push_back(idx);
        dfs(idx + 1, cost + useful[idx].c->cost);
        picks.pop_back();
        alive = std::move(saved);
      }
    }
    dfs(idx + 1, cost);
  };
  dfs(0, 0);

  if (best.objective < 0)
    throw UnsatisfiableTaskError("unsatisfiable task: no feasible hypothesis", "");

  Hypothesis h;
  for (auto p : best.picks) h.constraints.push_back(*useful[p].c);
  h.totalCost = 0;
  for (const auto& c : h.constraints) h.totalCost += c.cost;
  // Recompute coverage of the winner for the report.
  std::vector<Bitset> state(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    state[i] = Bitset(ctx[i].accepting.size());
    for (std::size_t s = 0; s < ctx[i].accepting.size(); ++s) state[i].set(s);
  }
  for (auto p : best.picks)
    for (std::size_t i = 0; i < ne; ++i) state[i] = state[i].andNot(useful[p].kill[i]);
  h.penalty = 0;
  for (std::size_t i = 0; i < ne; ++i) {
    const auto& e = task.examples[i];
    const bool covered = e.positive ? state[i].any() : !state[i].any();
    if (!covered && e.weight) {
      h.penalty += *e.weight;
      h.uncovered.emplace_back(e.id, *e.weight);
    }
  }
  return h;
}

}  // namespace symlift
