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

#include "symlift/solver.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace symlift {

Bitset leastModel(const std::vector<GroundRule>& rules, const Bitset& base) {
  for (const auto& r : rules)
    if (r.kind != Rule::Kind::Normal || !r.neg.empty())
      throw std::invalid_argument("leastModel requires positive normal rules");

  Bitset model = base;
  std::vector<std::size_t> remaining(rules.size());
  std::vector<std::vector<std::size_t>> watch(base.size());
  std::vector<int> queue;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    remaining[i] = rules[i].pos.size();
    for (int a : rules[i].pos) {
      if (model.test(static_cast<std::size_t>(a)))
        --remaining[i];
      else
        watch[static_cast<std::size_t>(a)].push_back(i);
    }
    if (remaining[i] == 0 && !model.test(static_cast<std::size_t>(rules[i].head))) {
      model.set(static_cast<std::size_t>(rules[i].head));
      queue.push_back(rules[i].head);
    }
  }
  // watch entries were built against base only; count multiplicity later.
  while (!queue.empty()) {
    const int a = queue.back();
    queue.pop_back();
    for (std::size_t ri : watch[static_cast<std::size_t>(a)]) {
      if (remaining[ri] == 0) continue;
      if (--remaining[ri] == 0) {
        const int h = rules[ri].head;
        if (!model.test(static_cast<std::size_t>(h))) {
          model.set(static_cast<std::size_t>(h));
          queue.push_back(h);
        }
      }
    }
  }
  return model;
}

namespace {

bool bodyHolds(const GroundRule& r, const Bitset& I) {
  for (int a : r.pos)
    if (!I.test(static_cast<std::size_t>(a))) return false;
  for (int a : r.neg)
    if (I.test(static_cast<std::size_t>(a))) return false;
  return true;
}

}  // namespace

bool isStableModel(const GroundProgram& gp, const Bitset& I) {
  if (I.size() != gp.table.size()) throw std::invalid_argument("interpretation width mismatch");

  for (const auto& r : gp.rules) {
    if (r.kind == Rule::Kind::Constraint && bodyHolds(r, I)) return false;
    if (r.kind == Rule::Kind::Choice && bodyHolds(r, I)) {
      long long chosen = 0;
      for (int e : r.elements) chosen += I.test(static_cast<std::size_t>(e)) ? 1 : 0;
      if (chosen != r.bound) return false;
    }
  }

  std::vector<GroundRule> reduct;
  for (const auto& r : gp.rules) {
    if (r.kind == Rule::Kind::Normal) {
      bool blocked = false;
      for (int a : r.neg)
        if (I.test(static_cast<std::size_t>(a))) { blocked = true; break; }
      if (blocked) continue;
      GroundRule rr;
      rr.kind = Rule::Kind::Normal;
      rr.head = r.head;
      rr.pos = r.pos;
      reduct.push_back(std::move(rr));
    } else if (r.kind == Rule::Kind::Choice && bodyHolds(r, I)) {
      // Chosen atoms of an applicable choice rule are supported by its
      // positive body (the guess translation with hidden complements).
      for (int e : r.elements) {
        if (!I.test(static_cast<std::size_t>(e))) continue;
        GroundRule rr;
        rr.kind = Rule::Kind::Normal;
        rr.head = e;
        rr.pos = r.pos;
        reduct.push_back(std::move(rr));
      }
    }
  }
  return leastModel(reduct, gp.factBits()) == I;
}

namespace {

enum : std::int8_t { kUndef = -1, kFalse = 0, kTrue = 1 };

// DFS over choice atoms with constraint/cardinality propagation. Only
// guess atoms and facts carry values; derived atoms stay undecided until a
// leaf is evaluated via the reduct iteration.
class Search {
 public:
  Search(const GroundProgram& gp, const EnumConfig& cfg, std::function<bool(const Bitset&)> emit)
      : gp_(gp), cfg_(cfg), emit_(std::move(emit)), n_(gp.table.size()), val_(n_, kUndef) {
    facts_ = gp.factBits();
    guess_ = gp.guessBits();
    definable_ = facts_ | guess_;
    for (const auto& r : gp.rules)
      if (r.kind == Rule::Kind::Normal) definable_.set(static_cast<std::size_t>(r.head));

    for (std::size_t i = 0; i < n_; ++i) {
      if (facts_.test(i))
        val_[i] = kTrue;
      else if (!definable_.test(i))
        val_[i] = kFalse;  // no rule can ever derive it
    }
    guess_.forEachSet([&](std::size_t i) {
      if (!facts_.test(i)) order_.push_back(static_cast<int>(i));
    });
    if (cfg_.seed != 0) {
      std::mt19937_64 rng(cfg_.seed);
      std::shuffle(order_.begin(), order_.end(), rng);
    }
    checkStratified();
    initRules();
  }

  EnumStatus run() {
    dfs(0);
    if (stopped_ == Stop::Budget) return EnumStatus::BudgetExhausted;
    if (stopped_ == Stop::Cap) return EnumStatus::CapReached;
    return EnumStatus::Complete;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  enum class Stop { None, Cap, Budget };
  enum class Role : std::uint8_t { Pos, Neg, Elem, BodyPos, BodyNeg };

  struct RuleState {
    const GroundRule* rule = nullptr;
    bool isChoice = false;
    // constraint literal counters / choice body counters
    int hold = 0, block = 0, totalLits = 0;
    // choice element counters
    int eTrue = 0, eFalse = 0, eTotal = 0;
  };

  // The leaf evaluation derives non-choice atoms from the guessed ones and
  // needs the normal part to be stratified over them: a negative edge
  // inside a cycle of derived atoms would leave models the choice-guided
  // search cannot reach, so reject such programs outright.
  void checkStratified() const {
    std::vector<std::vector<std::pair<int, bool>>> deps(n_);  // head -> (body, negative)
    Bitset derived(n_);
    for (const auto& r : gp_.rules)
      if (r.kind == Rule::Kind::Normal && !guess_.test(static_cast<std::size_t>(r.head)) &&
          !facts_.test(static_cast<std::size_t>(r.head)))
        derived.set(static_cast<std::size_t>(r.head));
    for (const auto& r : gp_.rules) {
      if (r.kind != Rule::Kind::Normal || !derived.test(static_cast<std::size_t>(r.head))) continue;
      for (int b : r.pos)
        if (derived.test(static_cast<std::size_t>(b)))
          deps[static_cast<std::size_t>(r.head)].emplace_back(b, false);
      for (int b : r.neg)
        if (derived.test(static_cast<std::size_t>(b)))
          deps[static_cast<std::size_t>(r.head)].emplace_back(b, true);
    }
    // Tarjan SCCs, iterative.
    std::vector<int> index(n_, -1), low(n_, 0), comp(n_, -1);
    std::vector<char> onStack(n_, 0);
    std::vector<int> stack;
    int next = 0, comps = 0;
    for (std::size_t start = 0; start < n_; ++start) {
      if (!derived.test(start) || index[start] != -1) continue;
      std::vector<std::pair<int, std::size_t>> work{{static_cast<int>(start), 0}};
      while (!work.empty()) {
        auto& [v, ei] = work.back();
        const auto vi = static_cast<std::size_t>(v);
        if (ei == 0) {
          index[vi] = low[vi] = next++;
          stack.push_back(v);
          onStack[vi] = 1;
        }
        if (ei < deps[vi].size()) {
          const int w = deps[vi][ei].first;
          ++ei;
          const auto wi = static_cast<std::size_t>(w);
          if (index[wi] == -1)
            work.emplace_back(w, 0);
          else if (onStack[wi])
            low[vi] = std::min(low[vi], index[wi]);
        } else {
          if (low[vi] == index[vi]) {
            while (true) {
              const int w = stack.back();
              stack.pop_back();
              onStack[static_cast<std::size_t>(w)] = 0;
              comp[static_cast<std::size_t>(w)] = comps;
              if (w == v) break;
            }
            ++comps;
          }
          work.pop_back();
          if (!work.empty()) {
            const auto pi = static_cast<std::size_t>(work.back().first);
            low[pi] = std::min(low[pi], low[vi]);
          }
        }
      }
    }
    for (std::size_t h = 0; h < n_; ++h)
      for (const auto& [b, negative] : deps[h])
        if (negative && comp[h] == comp[static_cast<std::size_t>(b)])
          throw std::runtime_error(
              "program is not stratified over its choice atoms (negation through atom '" +
              toString(gp_.table.atom(static_cast<std::size_t>(b))) +
              "' inside a cycle); enumeration unsupported");
  }

  void initRules() {
    for (const auto& r : gp_.rules) {
      if (r.kind == Rule::Kind::Normal || r.kind == Rule::Kind::Fact) continue;
      RuleState st;
      st.rule = &r;
      st.isChoice = r.kind == Rule::Kind::Choice;
      const std::size_t idx = states_.size();
      auto watchLit = [&](int a, Role role) {
        const auto ai = static_cast<std::size_t>(a);
        ++st.totalLits;
        const bool posLit = role == Role::Pos || role == Role::BodyPos;
        if (val_[ai] == kUndef) {
          occ_[ai].push_back({idx, role});
        } else if ((val_[ai] == kTrue) == posLit) {
          ++st.hold;
        } else {
          ++st.block;
        }
      };
      if (st.isChoice) {
        for (int a : r.pos) watchLit(a, Role::BodyPos);
        for (int a : r.neg) watchLit(a, Role::BodyNeg);
        st.eTotal = static_cast<int>(r.elements.size());
        for (int e : r.elements) {
          const auto ei = static_cast<std::size_t>(e);
          if (val_[ei] == kTrue)
            ++st.eTrue;
          else if (val_[ei] == kFalse)
            ++st.eFalse;
          else
            occ_[ei].push_back({idx, Role::Elem});
        }
      } else {
        for (int a : r.pos) watchLit(a, Role::Pos);
        for (int a : r.neg) watchLit(a, Role::Neg);
      }
      states_.push_back(st);
    }
  }

  bool assign(std::size_t atom, std::int8_t value) {
    val_[atom] = value;
    trail_.push_back(static_cast<int>(atom));
    auto it = occ_.find(atom);
    if (it == occ_.end()) return true;
    // All counter updates land before any conflict check runs; unassign
    // reverses the full occurrence list, so a partial update would corrupt
    // the counters on backtracking.
    for (const auto& [ri, role] : it->second) {
      RuleState& st = states_[ri];
      switch (role) {
        case Role::Elem:
          value == kTrue ? ++st.eTrue : ++st.eFalse;
          break;
        case Role::Pos:
        case Role::BodyPos:
          value == kTrue ? ++st.hold : ++st.block;
          break;
        case Role::Neg:
        case Role::BodyNeg:
          value == kFalse ? ++st.hold : ++st.block;
          break;
      }
    }
    for (const auto& entry : it->second)
      if (!checkRule(entry.first)) return false;
    return true;
  }

  void unassign(std::size_t atom) {
    const std::int8_t value = val_[atom];
    val_[atom] = kUndef;
    auto it = occ_.find(atom);
    if (it == occ_.end()) return;
    for (const auto& [ri, role] : it->second) {
      RuleState& st = states_[ri];
      switch (role) {
        case Role::Elem:
          value == kTrue ? --st.eTrue : --st.eFalse;
          break;
        case Role::Pos:
        case Role::BodyPos:
          value == kTrue ? --st.hold : --st.block;
          break;
        case Role::Neg:
        case Role::BodyNeg:
          value == kFalse ? --st.hold : --st.block;
          break;
      }
    }
  }

  // Returns false on conflict; may push forced assignments onto pending_.
  bool checkRule(std::size_t ri) {
    RuleState& st = states_[ri];
    const GroundRule& r = *st.rule;
    if (st.isChoice) {
      if (st.block > 0) return true;  // body cannot hold
      if (st.hold < st.totalLits) return true;  // body not yet certain
      const long long bound = r.bound;
      if (st.eTrue > bound) return false;
      if (st.eTrue + (st.eTotal - st.eTrue - st.eFalse) < bound) return false;
      if (st.eTrue == bound) {
        for (int e : r.elements)
          if (val_[static_cast<std::size_t>(e)] == kUndef)
            pending_.push_back({static_cast<std::size_t>(e), kFalse});
      } else if (st.eTrue + (st.eTotal - st.eTrue - st.eFalse) == bound) {
        for (int e : r.elements)
          if (val_[static_cast<std::size_t>(e)] == kUndef)
            pending_.push_back({static_cast<std::size_t>(e), kTrue});
      }
      return true;
    }
    // Constraint: all literals holding is a conflict; one undecided literal
    // left over a guessable atom gets forced to break the body.
    if (st.block > 0) return true;
    if (st.hold == st.totalLits) return false;
    if (st.hold == st.totalLits - 1) {
      for (int a : r.pos) {
        const auto ai = static_cast<std::size_t>(a);
        if (val_[ai] == kUndef) {
          if (guess_.test(ai)) pending_.push_back({ai, kFalse});
          return true;
        }
      }
      for (int a : r.neg) {
        const auto ai = static_cast<std::size_t>(a);
        if (val_[ai] == kUndef) {
          if (guess_.test(ai)) pending_.push_back({ai, kTrue});
          return true;
        }
      }
    }
    return true;
  }

  // Applies queued forced assignments; false on conflict.
  bool propagate() {
    while (!pending_.empty()) {
      auto [atom, value] = pending_.back();
      pending_.pop_back();
      if (val_[atom] != kUndef) {
        if (val_[atom] != value) return false;
        continue;
      }
      if (!assign(atom, value)) return false;
    }
    return true;
  }

  void backtrackTo(std::size_t mark) {
    while (trail_.size() > mark) {
      unassign(static_cast<std::size_t>(trail_.back()));
      trail_.pop_back();
    }
    pending_.clear();
  }

  void dfs(std::size_t orderIdx) {
    if (stopped_ != Stop::None) return;
    while (orderIdx < order_.size() && val_[static_cast<std::size_t>(order_[orderIdx])] != kUndef)
      ++orderIdx;
    if (orderIdx == order_.size()) {
      emitLeaf();
      return;
    }
    const auto atom = static_cast<std::size_t>(order_[orderIdx]);
    for (std::int8_t value : {kFalse, kTrue}) {
      if (stopped_ != Stop::None) return;
      if (++nodes_ > cfg_.nodeBudget) {
        stopped_ = Stop::Budget;
        return;
      }
      const std::size_t mark = trail_.size();
      pending_.clear();
      if (assign(atom, value) && propagate()) dfs(orderIdx + 1);
      backtrackTo(mark);
    }
  }

  void emitLeaf() {
    Bitset chosen(n_);
    for (int a : order_)
      if (val_[static_cast<std::size_t>(a)] == kTrue) chosen.set(static_cast<std::size_t>(a));
    const Bitset base = facts_ | chosen;

    // Alternating reduct iteration; converges for programs whose normal
    // part is stratified over the choice atoms.
    Bitset I = base;
    bool settled = false;
    for (std::size_t k = 0; k < n_ + 2; ++k) {
      std::vector<GroundRule> reduct;
      for (const auto& r : gp_.rules) {
        if (r.kind != Rule::Kind::Normal) continue;
        bool blocked = false;
        for (int a : r.neg)
          if (I.test(static_cast<std::size_t>(a))) { blocked = true; break; }
        if (blocked) continue;
        GroundRule rr;
        rr.kind = Rule::Kind::Normal;
        rr.head = r.head;
        rr.pos = r.pos;
        reduct.push_back(std::move(rr));
      }
      Bitset next = leastModel(reduct, base);
      if (next == I) {
        settled = true;
        break;
      }
      I = next;
    }
    if (!settled) return;
    // A guess atom derived true against its assignment belongs to another
    // branch of the tree.
    bool consistent = true;
    for (int a : order_)
      if (val_[static_cast<std::size_t>(a)] == kFalse && I.test(static_cast<std::size_t>(a))) {
        consistent = false;
        break;
      }
    if (!consistent) return;
    if (!isStableModel(gp_, I)) return;
    if (!seen_.insert(I).second) return;
    if (!emit_(I)) stopped_ = Stop::Cap;
  }

  const GroundProgram& gp_;
  const EnumConfig& cfg_;
  std::function<bool(const Bitset&)> emit_;
  std::size_t n_;
  std::vector<std::int8_t> val_;
  Bitset facts_, guess_, definable_;
  std::vector<int> order_;
  std::vector<RuleState> states_;
  std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, Role>>> occ_;
  std::vector<int> trail_;
  std::vector<std::pair<std::size_t, std::int8_t>> pending_;
  std::unordered_set<Bitset, BitsetHash> seen_;
  std::uint64_t nodes_ = 0;
  Stop stopped_ = Stop::None;
};

}  // namespace

EnumResult forEachAnswerSet(const GroundProgram& gp, const EnumConfig& cfg,
                            const std::function<bool(const Bitset&)>& fn) {
  EnumResult res;
  Search search(gp, cfg, fn);
  res.status = search.run();
  res.nodes = search.nodes();
  return res;
}

EnumResult enumerateAnswerSets(const GroundProgram& gp, const EnumConfig& cfg) {
  EnumResult res;
  std::size_t found = 0;
  auto collect = [&](const Bitset& I) {
    res.sets.push_back(I);
    ++found;
    return cfg.cap == 0 || found < cfg.cap;
  };
  Search search(gp, cfg, collect);
  res.status = search.run();
  res.nodes = search.nodes();
  if (cfg.cap == 0) {
    const Bitset mask = gp.solutionBits();
    std::sort(res.sets.begin(), res.sets.end(), [&](const Bitset& a, const Bitset& b) {
      const Bitset ma = a & mask, mb = b & mask;
      if (ma != mb) return ma.lexLess(mb);
      return a.lexLess(b);
    });
  }
  return res;
}

SatResult checkSatisfiable(const GroundProgram& gp, const EnumConfig& cfg) {
  SatResult out;
  bool found = false;
  EnumConfig c = cfg;
  c.cap = 1;
  auto res = forEachAnswerSet(gp, c, [&](const Bitset&) {
    found = true;
    return false;
  });
  out.nodes = res.nodes;
  out.satisfiable = found;
  out.known = found || res.status != EnumStatus::BudgetExhausted;
  return out;
}

}  // namespace symlift
