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

#include <cstdint>
#include <string>
#include <vector>

#include "symlift/ground.hpp"
#include "symlift/interpretation.hpp"

namespace symlift {

// Sparse permutation of atom ranks, stored as its (source -> image) pairs
// sorted by source; points outside the support are fixed.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity() { return {}; }
  // Cycles must be pairwise disjoint; one-element cycles are dropped.
  static Permutation fromCycles(const std::vector<std::vector<std::uint32_t>>& cycles);
  static Permutation fromPairs(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

  bool isIdentity() const { return map_.empty(); }
  std::uint32_t imageOf(std::uint32_t x) const;
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const { return map_; }
  std::vector<std::uint32_t> support() const;

  // Disjoint cycles, each rotated to start at its smallest element, sorted
  // ascending by smallest element.
  std::vector<std::vector<std::uint32_t>> cycles() const;

  bool operator==(const Permutation& o) const { return map_ == o.map_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  std::size_t hash() const;

 private:
  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation invert(const Permutation&);
  // pairs sorted by source, no fixed points, bijective; not revalidated
  static Permutation trusted(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> map_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

// apply(p, I): rank r is set in the output iff p^-1(r) is set in I.
Bitset applyPermutation(const Permutation& p, const Bitset& I);

// compose(p, q) applies q first, then p.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation invert(const Permutation& p);

struct GeneratorSet {
  std::vector<Permutation> generators;
  bool complete = true;  // false when an automorphism search ran out of budget

  // Atoms moved by at least one generator (the IG(i) atoms).
  Bitset support(std::size_t width) const;
};

struct ClosureResult {
  std::vector<Permutation> elements;  // includes the identity
  bool capped = false;                // group larger than the cap; partial
};

// BFS closure under composition from the generators and the identity.
ClosureResult groupClosure(const GeneratorSet& gs, std::size_t cap);

// Greedily drops generators contained in the closure of the remaining
// ones; a generator is kept conservatively when the cap is hit during its
// membership test.
GeneratorSet irredundant(const GeneratorSet& gs, std::size_t cap = 10'000);

// Cycle notation as printed by generator listings, cycles in descending order of
// their smallest atom: "( p2h(3,2) p2h(3,3) ) ( p2h(2,2) p2h(2,3) )".
std::string toCycleString(const Permutation& p, const AtomTable& table);

}  // namespace symlift
