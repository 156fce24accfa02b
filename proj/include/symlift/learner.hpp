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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symlift/dominance.hpp"
#include "symlift/program.hpp"
#include "symlift/solver.hpp"

namespace symlift {

// #modeb(recall, pred(var(t1),...,var(tk)) [, (anti_reflexive)])
struct ModeDecl {
  int recall = 1;
  std::string pred;
  std::vector<std::string> argTypes;
  bool antiReflexive = false;

  bool operator==(const ModeDecl& o) const {
    return recall == o.recall && pred == o.pred && argTypes == o.argTypes &&
           antiReflexive == o.antiReflexive;
  }
};

struct HypothesisSpace {
  std::vector<ModeDecl> modes;
  int maxBody = 3;
  int maxVars = 3;
  std::size_t spaceLimit = 200'000;
};

// Headless, safe, body of positive typed literals; canonical under
// variable renaming. Variables print as V1..Vk in order of first use.
struct CandidateConstraint {
  std::vector<Atom> body;
  long long cost = 0;
  std::string canonical;

  Rule toRule() const;
  std::string text() const;  // ":- lit1, lit2."
};

struct ScoringTable {
  std::map<std::string, long long> weights;  // per-predicate literal cost
  long long defaultWeight = 1;
};

long long scoreBody(const std::vector<Atom>& body, const std::optional<ScoringTable>& scoring);

// All canonical mode-conforming constraints with at most maxBody literals
// and maxVars variables, ordered by (cost, canonical string). Throws when
// the space exceeds spaceLimit.
std::vector<CandidateConstraint> enumerateSpace(const HypothesisSpace& space,
                                                const std::optional<ScoringTable>& scoring = {});

struct LearningTask {
  Program background;
  Program abk;
  std::vector<Example> examples;
  HypothesisSpace space;
  std::optional<ScoringTable> scoring;
};

struct Hypothesis {
  std::vector<CandidateConstraint> constraints;
  long long totalCost = 0;
  long long penalty = 0;
  std::vector<std::pair<std::string, long long>> uncovered;  // (id, weight)

  Program toProgram() const;
};

class UnsatisfiableTaskError : public std::runtime_error {
 public:
  UnsatisfiableTaskError(const std::string& msg, std::string exampleId)
      : std::runtime_error(msg), exampleId_(std::move(exampleId)) {}
  const std::string& exampleId() const { return exampleId_; }

 private:
  std::string exampleId_;
};

// True iff some answer set of backgroundPlusH + e.context extends e's
// partial interpretation. Budget exhaustion before a witness raises
// BudgetError rather than answering false.
bool accepts(const Program& backgroundPlusH, const Example& e, const EnumConfig& cfg);

// Branch-and-bound over the hypothesis space: minimizes hypothesis cost
// plus the weights of uncovered finite examples; infinite-weight examples
// must be covered. Ties break on the canonical hypothesis string.
Hypothesis learn(const LearningTask& task, const EnumConfig& cfg);

}  // namespace symlift
