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

#include "symlift/dominance.hpp"

#include <algorithm>

namespace symlift {

LexValue lexValue(const Bitset& I, const Bitset& solutionMask) {
  // Pack the masked bits: bit k of the value is the k-th solution atom.
  std::vector<std::size_t> positions;
  solutionMask.forEachSet([&](std::size_t i) { positions.push_back(i); });
  LexValue v;
  v.bits = Bitset(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k)
    if (I.test(positions[k])) v.bits.set(k);
  return v;
}

LexValue lexValue(const Bitset& I, const GroundProgram& gp) {
  return lexValue(I, gp.solutionBits());
}

DominanceResult isDominated(const Bitset& I, const GeneratorSet& gs, const Bitset& solutionMask,
                            const DominanceOptions& opts) {
  DominanceResult res;
  const Bitset mine = I & solutionMask;
  for (const auto& g : gs.generators) {
    const Bitset image = applyPermutation(g, I) & solutionMask;
    const bool smaller = opts.strict ? image.lexLess(mine) : !mine.lexLess(image);
    if (smaller) {
      res.dominated = true;
      res.witness = g;
      return res;
    }
  }
  return res;
}

namespace {

std::vector<Atom> atomsOf(const Bitset& bits, const AtomTable& table) {
  std::vector<Atom> out;
  bits.forEachSet([&](std::size_t i) { out.push_back(table.atom(i)); });
  return out;
}

}  // namespace

std::vector<Example> labelInstance(const GroundProgram& gp, const GeneratorSet& gs,
                                   const EnumConfig& cfg, const Program& instanceFacts,
                                   const LabelOptions& opts) {
  EnumResult enums = enumerateAnswerSets(gp, cfg);
  if (enums.status == EnumStatus::BudgetExhausted)
    throw BudgetError("labeling: solver node budget exhausted");

  const Bitset mask = gp.solutionBits();
  const Bitset support = gs.support(gp.table.size());

  struct Labeled {
    Example ex;
    LexValue value;
  };
  std::vector<Labeled> negatives, positives;
  auto known = [&](const Example& ex) {
    auto match = [&](const std::vector<Labeled>& v) {
      return std::any_of(v.begin(), v.end(),
                         [&](const Labeled& l) { return l.ex.sameContent(ex); });
    };
    return match(negatives) || match(positives);
  };

  for (const auto& I : enums.sets) {
    Example ex;
    ex.context = instanceFacts;
    ex.pi.include = atomsOf(I & support, gp.table);
    const auto dom = isDominated(I, gs, mask, opts.dominance);
    ex.positive = !dom.dominated;
    if (dom.dominated) {
      // Retained sets keep open exclusions, as in the worked example's
      // task, so any extension of their inclusions counts as accepting.
      ex.pi.exclude = atomsOf(support.andNot(I), gp.table);
      ex.weight = opts.negativeWeight;
    }
    if (known(ex)) continue;
    Labeled l{std::move(ex), lexValue(I, mask)};
    (dom.dominated ? negatives : positives).push_back(std::move(l));
  }

  auto byValue = [](const Labeled& a, const Labeled& b) { return a.value < b.value; };
  std::sort(negatives.begin(), negatives.end(), byValue);
  std::sort(positives.begin(), positives.end(), byValue);

  // Interleave starting with a negative; this is the layout of the worked
  // example's task (id1 the first dominated set, id2 the retained one).
  std::vector<Example> out;
  std::size_t ni = 0, pi = 0;
  bool wantNegative = !negatives.empty();
  while (ni < negatives.size() || pi < positives.size()) {
    if (wantNegative && ni < negatives.size())
      out.push_back(std::move(negatives[ni++].ex));
    else if (pi < positives.size())
      out.push_back(std::move(positives[pi++].ex));
    else
      out.push_back(std::move(negatives[ni++].ex));
    wantNegative = !wantNegative;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = "id" + std::to_string(i + 1);
  return out;
}

Example makeGenExample(const Program& instanceFacts, std::string id) {
  Example ex;
  ex.id = std::move(id);
  ex.positive = true;
  ex.context = instanceFacts;
  return ex;
}

}  // namespace symlift
