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

#include <optional>
#include <string>
#include <vector>

#include "symlift/ground.hpp"
#include "symlift/interpretation.hpp"
#include "symlift/permutation.hpp"
#include "symlift/solver.hpp"

namespace symlift {

// Value of an interpretation restricted to the solution atoms (non-fact
// predicates occurring in choice heads), most significant bit = highest
// rank.
LexValue lexValue(const Bitset& I, const Bitset& solutionMask);
LexValue lexValue(const Bitset& I, const GroundProgram& gp);

struct DominanceOptions {
  // Strict: dominated iff some generator maps I to a strictly smaller
  // value. The non-strict variant also counts fixed points.
  bool strict = true;
};

struct DominanceResult {
  bool dominated = false;
  std::optional<Permutation> witness;
};

DominanceResult isDominated(const Bitset& I, const GeneratorSet& gs, const Bitset& solutionMask,
                            const DominanceOptions& opts = {});

struct PartialInterpretation {
  std::vector<Atom> include;  // T
  std::vector<Atom> exclude;  // F
};

struct Example {
  std::string id;
  bool positive = true;
  std::optional<long long> weight;  // nullopt = infinite
  PartialInterpretation pi;
  Program context;

  bool sameContent(const Example& o) const {
    return positive == o.positive && pi.include == o.pi.include && pi.exclude == o.pi.exclude &&
           toString(context) == toString(o.context);
  }
};

struct LabelOptions {
  long long negativeWeight = 100;
  DominanceOptions dominance;
};

// Enumerates the instance's answer sets and turns each into a labeled
// example: inclusions = generator support atoms in the set, exclusions =
// support atoms outside it, context = the instance facts. Dominated sets
// are negative (finite weight), the rest positive (infinite). Duplicates
// after projection are dropped. Ids follow the reference task layout: negatives
// and positives each ascending by lex value, interleaved starting with a
// negative.
std::vector<Example> labelInstance(const GroundProgram& gp, const GeneratorSet& gs,
                                   const EnumConfig& cfg, const Program& instanceFacts,
                                   const LabelOptions& opts = {});

// The generalization example for an instance g: positive, empty partial
// interpretation, g as context.
Example makeGenExample(const Program& instanceFacts, std::string id);

}  // namespace symlift
