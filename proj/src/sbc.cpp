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

#include "symlift/sbc.hpp"

#include <algorithm>

namespace symlift {

namespace {

Atom eqAtom(std::size_t gen, std::size_t pos) {
  return Atom{"__sbc_eq",
              {Term::integer(static_cast<long long>(gen)), Term::integer(static_cast<long long>(pos))}};
}

}  // namespace

SbcExtension emitLexLeader(const GeneratorSet& gs, const GroundProgram& gp) {
  SbcExtension ext;
  std::size_t genIdx = 0;
  for (const auto& g : gs.generators) {
    ++genIdx;
    std::vector<std::uint32_t> support = g.support();
    if (support.empty()) continue;
    // MSB first: highest rank leads the comparison.
    std::sort(support.begin(), support.end(), std::greater<>());
    const Permutation gInv = invert(g);

    Program chunk;
    chunk.facts.push_back(eqAtom(genIdx, 0));
    for (std::size_t j = 1; j <= support.size(); ++j) {
      const Atom aj = gp.table.atom(support[j - 1]);
      // bit j of pi(I) is I at the preimage of a_j
      const Atom bj = gp.table.atom(gInv.imageOf(support[j - 1]));
      if (j < support.size()) {
        Rule both;
        both.kind = Rule::Kind::Normal;
        both.head = eqAtom(genIdx, j);
        both.bodyPos = {eqAtom(genIdx, j - 1), aj, bj};
        chunk.rules.push_back(both);
        Rule neither;
        neither.kind = Rule::Kind::Normal;
        neither.head = eqAtom(genIdx, j);
        neither.bodyPos = {eqAtom(genIdx, j - 1)};
        neither.bodyNeg = {aj, bj};
        chunk.rules.push_back(neither);
      }
      Rule firstDiff;
      firstDiff.kind = Rule::Kind::Constraint;
      firstDiff.bodyPos = {eqAtom(genIdx, j - 1), aj};
      firstDiff.bodyNeg = {bj};
      chunk.rules.push_back(firstDiff);
    }
    ext.perGenerator.push_back(std::move(chunk));
  }
  return ext;
}

Program SbcExtension::combined() const {
  Program all;
  for (const auto& p : perGenerator) all.merge(p);
  return all;
}

std::string SbcExtension::toText() const {
  std::string out;
  for (std::size_t i = 0; i < perGenerator.size(); ++i) {
    out += "% generator " + std::to_string(i + 1) + "\n";
    out += toString(perGenerator[i]);
  }
  return out;
}

Program extendedProgram(const GroundProgram& gp, const SbcExtension& ext) {
  Program p = gp.toProgram();
  p.merge(ext.combined());
  return p;
}

}  // namespace symlift
