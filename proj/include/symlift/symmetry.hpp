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
#include <unordered_set>
#include <vector>

#include "symlift/ground.hpp"
#include "symlift/permutation.hpp"

namespace symlift {

// Colored digraph whose automorphisms are syntactic symmetries of a ground
// program. Vertices: one per atom, one per rule (facts included), one
// shared negation companion per negatively occurring atom.
struct ColoredGraph {
  int n = 0;
  std::vector<int> color;
  std::vector<std::vector<int>> out, in;
  std::vector<int> atomOfVertex;  // atom rank or -1
  std::vector<int> vertexOfAtom;  // indexed by rank
  // Vertices the matcher should place as soon as one neighbor is mapped
  // (choice rules: the first element pins the whole group).
  std::vector<char> eager;

  int addVertex(int c);
  void addEdge(int u, int v);
  bool hasEdge(int u, int v) const {
    return edges_.count((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v)) != 0;
  }

 private:
  std::unordered_set<std::uint64_t> edges_;
};

// Atom colors follow the predicate; fact atoms are pinned with a singleton
// color each (a fact is true everywhere, so moving it never encodes a
// usable symmetry and would drown the group in noise). Rules are colored by
// (kind, bound, body signature).
ColoredGraph buildSymmetryGraph(const GroundProgram& gp);

struct AutomorphismResult {
  GeneratorSet generators;
  std::uint64_t nodes = 0;
  bool complete = true;
};

// Backtracking search over color-preserving vertex bijections, organized as
// a stabilizer chain: transversal representatives found at each base level
// generate the full automorphism group. Emitted generators are restricted
// to atom vertices, deduplicated, and reduced with irredundant().
AutomorphismResult findAutomorphisms(const ColoredGraph& g, std::uint64_t nodeBudget,
                                     std::size_t closureCap = 10'000);

AutomorphismResult findAutomorphisms(const GroundProgram& gp, std::uint64_t nodeBudget = 5'000'000);

}  // namespace symlift
