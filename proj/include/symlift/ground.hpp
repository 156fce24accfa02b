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

#pragma once

#include <string>
#include <vector>

#include "symlift/interpretation.hpp"
#include "symlift/program.hpp"

namespace symlift {

// Bijection between ground atoms and dense ranks 0..N-1, ordered ascending
// by (predicate name, argument tuple) with integer arguments compared
// numerically. The order is total and stable across runs.
class AtomTable {
 public:
  AtomTable() = default;
  static AtomTable build(std::vector<Atom> atoms);  // sorts and dedups

  int rank(const Atom& a) const;  // -1 when absent
  const Atom& atom(std::size_t r) const { return atoms_[r]; }
  std::size_t size() const { return atoms_.size(); }

  bool operator==(const AtomTable& o) const { return atoms_ == o.atoms_; }

 private:
  std::vector<Atom> atoms_;
};

struct GroundRule {
  Rule::Kind kind = Rule::Kind::Normal;
  int head = -1;               // Normal
  std::vector<int> elements;   // Choice, sorted ascending
  long long bound = 0;         // Choice
  std::vector<int> pos, neg;

  bool operator==(const GroundRule& o) const {
    return kind == o.kind && head == o.head && elements == o.elements && bound == o.bound &&
           pos == o.pos && neg == o.neg;
  }
};

struct GroundProgram {
  AtomTable table;
  std::vector<int> facts;          // certain atoms, ascending rank
  std::vector<GroundRule> rules;   // no facts, no variables, no builtins

  bool operator==(const GroundProgram& o) const {
    return table == o.table && facts == o.facts && rules == o.rules;
  }

  Bitset factBits() const;
  // Atoms offered by choice rules; the solver's guess space.
  Bitset guessBits() const;
  // Atoms of non-fact predicates occurring in choice elements; these carry
  // the lexicographic value of a solution.
  Bitset solutionBits() const;

  Program toProgram() const;
  std::string toText() const { return toString(toProgram()); }
};

struct GroundOptions {
  std::size_t maxAtoms = 1'000'000;
};

// Bottom-up instantiation to a fixpoint over the derivable atoms. Builtins
// and arithmetic are evaluated away; atoms that are certain (derivable from
// facts through normal rules whose negative body is underivable) become
// facts and are propagated out of rule bodies; rules with a certain head or
// a certainly false body are dropped. Throws GroundingError("grounding
// blow-up") when the derivable set exceeds opts.maxAtoms.
GroundProgram ground(const Program& program, const GroundOptions& opts = {});

// SMODELS numeric format (lparse-style) for interop with external ground
// tools. Choice rules with bound emit a choice rule plus two cardinality
// constraint lines.
std::string toSmodels(const GroundProgram& gp);

// Instantiates a constraint over gp's atom table and returns the positive
// body of every instance as rank lists (builtins evaluated, instances with
// a false builtin dropped). The constraint must have no negative body.
std::vector<std::vector<int>> groundConstraintBodies(const Rule& constraint,
                                                     const GroundProgram& gp);

}  // namespace symlift
