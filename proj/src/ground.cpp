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

#include "symlift/ground.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace symlift {

AtomTable AtomTable::build(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), GroundAtomLess{});
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  AtomTable t;
  t.atoms_ = std::move(atoms);
  return t;
}

int AtomTable::rank(const Atom& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a, GroundAtomLess{});
  if (it == atoms_.end() || !(*it == a)) return -1;
  return static_cast<int>(it - atoms_.begin());
}

Bitset GroundProgram::factBits() const {
  Bitset b(table.size());
  for (int f : facts) b.set(static_cast<std::size_t>(f));
  return b;
}

Bitset GroundProgram::guessBits() const {
  Bitset b(table.size());
  for (const auto& r : rules)
    if (r.kind == Rule::Kind::Choice)
      for (int e : r.elements) b.set(static_cast<std::size_t>(e));
  return b;
}

Bitset GroundProgram::solutionBits() const {
  std::set<std::string> factPreds;
  for (int f : facts) factPreds.insert(table.atom(static_cast<std::size_t>(f)).pred);
  std::set<std::string> solPreds;
  for (const auto& r : rules)
    if (r.kind == Rule::Kind::Choice)
      for (int e : r.elements) {
        const std::string& p = table.atom(static_cast<std::size_t>(e)).pred;
        if (!factPreds.count(p)) solPreds.insert(p);
      }
  Bitset b(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    if (solPreds.count(table.atom(i).pred)) b.set(i);
  return b;
}

Program GroundProgram::toProgram() const {
  Program p;
  for (int f : facts) p.facts.push_back(table.atom(static_cast<std::size_t>(f)));
  for (const auto& gr : rules) {
    Rule r;
    r.kind = gr.kind;
    if (gr.head >= 0) r.head = table.atom(static_cast<std::size_t>(gr.head));
    for (int e : gr.elements) {
      ChoiceElement el;
      el.atom = table.atom(static_cast<std::size_t>(e));
      r.elements.push_back(std::move(el));
    }
    r.bound = gr.bound;
    for (int a : gr.pos) r.bodyPos.push_back(table.atom(static_cast<std::size_t>(a)));
    for (int a : gr.neg) r.bodyNeg.push_back(table.atom(static_cast<std::size_t>(a)));
    p.rules.push_back(std::move(r));
  }
  return p;
}

namespace {

using Bindings = std::map<std::string, Term>;

long long evalGroundTerm(const Term& t, const Bindings& b) {
  switch (t.kind) {
    case Term::Kind::Int: return t.num;
    case Term::Kind::Var: {
      auto it = b.find(t.name);
      if (it == b.end()) throw GroundingError("unbound variable " + t.name + " in arithmetic");
      if (it->second.kind != Term::Kind::Int)
        throw GroundingError("symbolic constant bound to " + t.name + " used in arithmetic");
      return it->second.num;
    }
    case Term::Kind::Sum: {
      long long v = 0;
      for (const auto& [sign, p] : t.parts) v += sign * evalGroundTerm(p, b);
      return v;
    }
    case Term::Kind::Sym:
      throw GroundingError("symbolic constant in arithmetic");
  }
  return 0;
}

// Substitutes bindings and evaluates arithmetic; result is Int or Sym.
Term substTerm(const Term& t, const Bindings& b) {
  switch (t.kind) {
    case Term::Kind::Int:
    case Term::Kind::Sym: return t;
    case Term::Kind::Var: {
      auto it = b.find(t.name);
      if (it == b.end()) throw GroundingError("unbound variable " + t.name);
      return it->second;
    }
    case Term::Kind::Sum: return Term::integer(evalGroundTerm(t, b));
  }
  return t;
}

Atom substAtom(const Atom& a, const Bindings& b) {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(substTerm(t, b));
  return out;
}

bool termBound(const Term& t, const Bindings& b) {
  switch (t.kind) {
    case Term::Kind::Int:
    case Term::Kind::Sym: return true;
    case Term::Kind::Var: return b.count(t.name) != 0;
    case Term::Kind::Sum:
      for (const auto& [s, p] : t.parts)
        if (!termBound(p, b)) return false;
      return true;
  }
  return false;
}

// An atom is matchable once its Sum arguments are fully bound; plain
// variables bind during the match.
bool atomMatchable(const Atom& a, const Bindings& b) {
  for (const auto& t : a.args)
    if (t.kind == Term::Kind::Sum && !termBound(t, b)) return false;
  return true;
}

bool evalBuiltin(const Builtin& bi, const Bindings& b) {
  const Term lhs = substTerm(bi.lhs, b);
  const Term rhs = substTerm(bi.rhs, b);
  const int c = compareGroundTerms(lhs, rhs);
  switch (bi.op) {
    case Builtin::Op::Lt: return c < 0;
    case Builtin::Op::Gt: return c > 0;
    case Builtin::Op::Le: return c <= 0;
    case Builtin::Op::Ge: return c >= 0;
    case Builtin::Op::Eq: return c == 0;
    case Builtin::Op::Ne: return c != 0;
  }
  return false;
}

bool builtinReady(const Builtin& bi, const Bindings& b) {
  return termBound(bi.lhs, b) && termBound(bi.rhs, b);
}

// Tries to unify pattern with a ground atom, extending bindings in place;
// returns the variables newly bound so the caller can undo.
bool matchAtom(const Atom& pattern, const Atom& ground, Bindings& b,
               std::vector<std::string>& newlyBound) {
  if (pattern.pred != ground.pred || pattern.args.size() != ground.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& pt = pattern.args[i];
    const Term& gt = ground.args[i];
    switch (pt.kind) {
      case Term::Kind::Int:
      case Term::Kind::Sym:
        if (!(pt == gt)) return false;
        break;
      case Term::Kind::Sum: {
        if (gt.kind != Term::Kind::Int || evalGroundTerm(pt, b) != gt.num) return false;
        break;
      }
      case Term::Kind::Var: {
        auto it = b.find(pt.name);
        if (it != b.end()) {
          if (!(it->second == gt)) return false;
        } else {
          b.emplace(pt.name, gt);
          newlyBound.push_back(pt.name);
        }
        break;
      }
    }
  }
  return true;
}

// Derivable atoms bucketed by predicate, kept sorted for deterministic
// match enumeration.
class Universe {
 public:
  bool insert(const Atom& a) {
    auto& bucket = byPred_[a.pred];
    auto it = std::lower_bound(bucket.begin(), bucket.end(), a, GroundAtomLess{});
    if (it != bucket.end() && *it == a) return false;
    bucket.insert(it, a);
    ++size_;
    return true;
  }

  bool contains(const Atom& a) const {
    auto it = byPred_.find(a.pred);
    if (it == byPred_.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), a, GroundAtomLess{});
  }

  const std::vector<Atom>& bucket(const std::string& pred) const {
    static const std::vector<Atom> empty;
    auto it = byPred_.find(pred);
    return it == byPred_.end() ? empty : it->second;
  }

  std::size_t size() const { return size_; }

 private:
  std::map<std::string, std::vector<Atom>> byPred_;
  std::size_t size_ = 0;
};

// One fully instantiated rule body; atoms are ground.
struct RawInstance {
  Rule::Kind kind;
  Atom head;                     // Normal
  std::vector<Atom> elements;    // Choice
  long long bound = 0;
  std::vector<Atom> pos, neg;
};

// Enumerates all substitutions of rule's positive body over the universe,
// evaluating builtins eagerly; calls fn with complete bindings.
void forEachMatch(const Rule& rule, const Universe& u, const std::function<void(const Bindings&)>& fn) {
  std::vector<bool> usedAtom(rule.bodyPos.size(), false);
  std::vector<bool> usedBuiltin(rule.builtins.size(), false);
  Bindings b;

  std::function<void(std::size_t)> step = [&](std::size_t matched) {
    for (std::size_t i = 0; i < rule.builtins.size(); ++i) {
      if (!usedBuiltin[i] && builtinReady(rule.builtins[i], b)) {
        if (!evalBuiltin(rule.builtins[i], b)) return;
        usedBuiltin[i] = true;
        // Evaluated flags are restored by value-capture below.
        struct Restore {
          std::vector<bool>& flags;
          std::size_t idx;
          ~Restore() { flags[idx] = false; }
        } restore{usedBuiltin, i};
        step(matched);
        return;
      }
    }
    if (matched == rule.bodyPos.size()) {
      fn(b);
      return;
    }
    // Pick the first unmatched atom whose arithmetic arguments are bound.
    std::size_t pick = rule.bodyPos.size();
    for (std::size_t i = 0; i < rule.bodyPos.size(); ++i) {
      if (!usedAtom[i] && atomMatchable(rule.bodyPos[i], b)) {
        pick = i;
        break;
      }
    }
    if (pick == rule.bodyPos.size())
      throw GroundingError("cannot order body literals of rule: " + toString(rule));
    usedAtom[pick] = true;
    for (const Atom& cand : u.bucket(rule.bodyPos[pick].pred)) {
      std::vector<std::string> bound;
      if (matchAtom(rule.bodyPos[pick], cand, b, bound)) {
        step(matched + 1);
      }
      for (const auto& v : bound) b.erase(v);
    }
    usedAtom[pick] = false;
  };
  step(0);
}

// Expands one choice element under fixed outer bindings.
void forEachElement(const ChoiceElement& el, const Universe& u, const Bindings& outer,
                    const std::function<void(const Atom&)>& fn) {
  Bindings b = outer;
  std::function<void(std::size_t)> step = [&](std::size_t idx) {
    if (idx == el.condition.size()) {
      for (const auto& bi : el.conditionBuiltins)
        if (!evalBuiltin(bi, b)) return;
      fn(substAtom(el.atom, b));
      return;
    }
    for (const Atom& cand : u.bucket(el.condition[idx].pred)) {
      std::vector<std::string> bound;
      if (matchAtom(el.condition[idx], cand, b, bound)) step(idx + 1);
      for (const auto& v : bound) b.erase(v);
    }
  };
  step(0);
}

std::string instanceKey(const RawInstance& ri) {
  std::ostringstream k;
  k << static_cast<int>(ri.kind) << '|' << toString(ri.head) << '|' << ri.bound << '|';
  for (const auto& a : ri.elements) k << toString(a) << ';';
  k << '|';
  for (const auto& a : ri.pos) k << toString(a) << ',';
  k << '|';
  for (const auto& a : ri.neg) k << toString(a) << ',';
  return k.str();
}

}  // namespace

GroundProgram ground(const Program& program, const GroundOptions& opts) {
  checkArities(program);

  // Phase 1: derivable closure, negation ignored.
  Universe derivable;
  for (const auto& f : program.facts) derivable.insert(f);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& rule : program.rules) {
      if (rule.kind == Rule::Kind::Constraint) continue;
      std::vector<Atom> fresh;
      forEachMatch(rule, derivable, [&](const Bindings& b) {
        if (rule.kind == Rule::Kind::Normal) {
          fresh.push_back(substAtom(*rule.head, b));
        } else {
          for (const auto& el : rule.elements)
            forEachElement(el, derivable, b, [&](const Atom& a) { fresh.push_back(a); });
        }
      });
      for (const auto& a : fresh)
        if (derivable.insert(a)) grew = true;
      if (derivable.size() > opts.maxAtoms)
        throw GroundingError("grounding blow-up: derivable atoms exceed " +
                             std::to_string(opts.maxAtoms));
    }
  }

  // Phase 2: enumerate raw instances once over the final universe.
  std::vector<RawInstance> raw;
  for (const auto& rule : program.rules) {
    forEachMatch(rule, derivable, [&](const Bindings& b) {
      RawInstance ri;
      ri.kind = rule.kind;
      ri.bound = rule.bound;
      if (rule.head) ri.head = substAtom(*rule.head, b);
      for (const auto& a : rule.bodyPos) ri.pos.push_back(substAtom(a, b));
      for (const auto& a : rule.bodyNeg) ri.neg.push_back(substAtom(a, b));
      if (rule.kind == Rule::Kind::Choice) {
        std::vector<Atom> els;
        for (const auto& el : rule.elements)
          forEachElement(el, derivable, b, [&](const Atom& a) { els.push_back(a); });
        std::sort(els.begin(), els.end(), GroundAtomLess{});
        els.erase(std::unique(els.begin(), els.end()), els.end());
        ri.elements = std::move(els);
      }
      raw.push_back(std::move(ri));
    });
  }

  // Phase 3: certain atoms. A normal instance derives its head certainly
  // once its positive body is certain and no negative atom is derivable.
  std::set<Atom, GroundAtomLess> certain(program.facts.begin(), program.facts.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& ri : raw) {
      if (ri.kind != Rule::Kind::Normal) continue;
      if (certain.count(ri.head)) continue;
      bool ok = true;
      for (const auto& a : ri.pos)
        if (!certain.count(a)) { ok = false; break; }
      if (ok)
        for (const auto& a : ri.neg)
          if (derivable.contains(a)) { ok = false; break; }
      if (ok) {
        certain.insert(ri.head);
        changed = true;
      }
    }
  }

  // Phase 4: simplify and emit. Certain atoms leave positive bodies, rules
  // with a certain head or a certainly false body are dropped, underivable
  // negative atoms leave negative bodies.
  std::vector<RawInstance> kept;
  std::unordered_set<std::string> seen;
  for (auto& ri : raw) {
    bool dead = false;
    for (const auto& a : ri.neg)
      if (certain.count(a)) { dead = true; break; }
    if (dead) continue;
    if (ri.kind == Rule::Kind::Normal && certain.count(ri.head)) continue;

    std::vector<Atom> pos, neg;
    for (auto& a : ri.pos)
      if (!certain.count(a)) pos.push_back(std::move(a));
    for (auto& a : ri.neg)
      if (derivable.contains(a)) neg.push_back(std::move(a));
    if (ri.kind == Rule::Kind::Constraint && pos.empty() && neg.empty()) {
      // Certainly violated; keep the original body so the result stays a
      // well-formed program (and stays certainly violated).
      kept.push_back(ri);
      if (!seen.insert(instanceKey(kept.back())).second) kept.pop_back();
      continue;
    }
    ri.pos = std::move(pos);
    ri.neg = std::move(neg);
    kept.push_back(std::move(ri));
    if (!seen.insert(instanceKey(kept.back())).second) kept.pop_back();
  }

  // Atom table over everything occurring in the result.
  std::vector<Atom> occurring(certain.begin(), certain.end());
  for (const auto& ri : kept) {
    if (ri.kind == Rule::Kind::Normal) occurring.push_back(ri.head);
    occurring.insert(occurring.end(), ri.elements.begin(), ri.elements.end());
    occurring.insert(occurring.end(), ri.pos.begin(), ri.pos.end());
    occurring.insert(occurring.end(), ri.neg.begin(), ri.neg.end());
  }
  GroundProgram gp;
  gp.table = AtomTable::build(std::move(occurring));
  for (const auto& a : certain) gp.facts.push_back(gp.table.rank(a));
  std::sort(gp.facts.begin(), gp.facts.end());
  for (const auto& ri : kept) {
    GroundRule gr;
    gr.kind = ri.kind;
    gr.bound = ri.bound;
    if (ri.kind == Rule::Kind::Normal) gr.head = gp.table.rank(ri.head);
    for (const auto& a : ri.elements) gr.elements.push_back(gp.table.rank(a));
    for (const auto& a : ri.pos) gr.pos.push_back(gp.table.rank(a));
    for (const auto& a : ri.neg) gr.neg.push_back(gp.table.rank(a));
    gp.rules.push_back(std::move(gr));
  }
  return gp;
}

std::vector<std::vector<int>> groundConstraintBodies(const Rule& constraint,
                                                     const GroundProgram& gp) {
  if (constraint.kind != Rule::Kind::Constraint || !constraint.bodyNeg.empty())
    throw std::invalid_argument("groundConstraintBodies expects a positive constraint");
  Universe u;
  for (std::size_t i = 0; i < gp.table.size(); ++i) u.insert(gp.table.atom(i));
  std::vector<std::vector<int>> out;
  forEachMatch(constraint, u, [&](const Bindings& b) {
    std::vector<int> body;
    for (const auto& a : constraint.bodyPos) {
      const int r = gp.table.rank(substAtom(a, b));
      if (r < 0) return;  // cannot fire against this program
      body.push_back(r);
    }
    out.push_back(std::move(body));
  });
  return out;
}

std::string toSmodels(const GroundProgram& gp) {
  // Atom 1 is the reserved falsity head for integrity constraints; named
  // atoms start at 2.
  const auto id = [](int rank) { return rank + 2; };
  int next = static_cast<int>(gp.table.size()) + 2;
  std::ostringstream out;

  auto basic = [&](int head, const std::vector<int>& neg, const std::vector<int>& pos) {
    out << 1 << ' ' << head << ' ' << neg.size() + pos.size() << ' ' << neg.size();
    for (int a : neg) out << ' ' << a;
    for (int a : pos) out << ' ' << a;
    out << '\n';
  };

  for (int f : gp.facts) basic(id(f), {}, {});
  for (const auto& r : gp.rules) {
    std::vector<int> pos, neg;
    for (int a : r.pos) pos.push_back(id(a));
    for (int a : r.neg) neg.push_back(id(a));
    switch (r.kind) {
      case Rule::Kind::Normal:
        basic(id(r.head), neg, pos);
        break;
      case Rule::Kind::Constraint:
        basic(1, neg, pos);
        break;
      case Rule::Kind::Choice: {
        out << 3 << ' ' << r.elements.size();
        for (int e : r.elements) out << ' ' << id(e);
        out << ' ' << neg.size() + pos.size() << ' ' << neg.size();
        for (int a : neg) out << ' ' << a;
        for (int a : pos) out << ' ' << a;
        out << '\n';
        // bound enforcement: atLeast :- bound {elements}; :- body, not atLeast
        // and atMost trigger :- bound+1 {elements}; :- body, atMost.
        const int atLeast = next++;
        const int overflow = next++;
        out << 2 << ' ' << atLeast << ' ' << r.elements.size() << ' ' << 0 << ' ' << r.bound;
        for (int e : r.elements) out << ' ' << id(e);
        out << '\n';
        out << 2 << ' ' << overflow << ' ' << r.elements.size() << ' ' << 0 << ' ' << r.bound + 1;
        for (int e : r.elements) out << ' ' << id(e);
        out << '\n';
        std::vector<int> negLo = neg;
        negLo.push_back(atLeast);
        basic(1, negLo, pos);
        std::vector<int> posHi = pos;
        posHi.push_back(overflow);
        basic(1, neg, posHi);
        break;
      }
      case Rule::Kind::Fact:
        break;
    }
  }
  out << "0\n";
  for (std::size_t i = 0; i < gp.table.size(); ++i)
    out << id(static_cast<int>(i)) << ' ' << toString(gp.table.atom(i)) << '\n';
  out << "0\nB+\n0\nB-\n1\n0\n1\n";
  return out.str();
}

}  // namespace symlift
