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

#include "symlift/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace symlift {

int ColoredGraph::addVertex(int c) {
  color.push_back(c);
  out.emplace_back();
  in.emplace_back();
  atomOfVertex.push_back(-1);
  eager.push_back(0);
  return n++;
}

void ColoredGraph::addEdge(int u, int v) {
  out[static_cast<std::size_t>(u)].push_back(v);
  in[static_cast<std::size_t>(v)].push_back(u);
  edges_.insert((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v));
}

ColoredGraph buildSymmetryGraph(const GroundProgram& gp) {
  ColoredGraph g;
  g.vertexOfAtom.assign(gp.table.size(), -1);

  std::map<std::string, int> predColor;
  int nextColor = 0;
  const Bitset facts = gp.factBits();

  for (std::size_t r = 0; r < gp.table.size(); ++r) {
    int c;
    if (facts.test(r)) {
      c = nextColor++;  // singleton: facts never move
    } else {
      auto [it, fresh] = predColor.emplace(gp.table.atom(r).pred, nextColor);
      if (fresh) ++nextColor;
      c = it->second;
    }
    const int v = g.addVertex(c);
    g.atomOfVertex[static_cast<std::size_t>(v)] = static_cast<int>(r);
    g.vertexOfAtom[r] = v;
  }

  // Rule colors: (kind, bound, |pos|, |neg|, |elements|).
  std::map<std::tuple<int, long long, std::size_t, std::size_t, std::size_t>, int> ruleColor;
  auto colorOfRule = [&](Rule::Kind kind, long long bound, std::size_t np, std::size_t nn,
                         std::size_t ne) {
    auto [it, fresh] =
        ruleColor.emplace(std::make_tuple(static_cast<int>(kind), bound, np, nn, ne), nextColor);
    if (fresh) ++nextColor;
    return it->second;
  };

  // One fact rule per fact atom: edge atom -> rule.
  const int factRuleColor = colorOfRule(Rule::Kind::Fact, 0, 0, 0, 0);
  for (int f : gp.facts) {
    const int v = g.addVertex(factRuleColor);
    g.addEdge(g.vertexOfAtom[static_cast<std::size_t>(f)], v);
  }

  // Shared color for negation companions; one companion per negatively
  // occurring atom.
  const int negColor = nextColor++;
  std::map<int, int> companion;
  auto companionOf = [&](int atomRank) {
    auto it = companion.find(atomRank);
    if (it != companion.end()) return it->second;
    const int v = g.addVertex(negColor);
    g.addEdge(v, g.vertexOfAtom[static_cast<std::size_t>(atomRank)]);
    companion.emplace(atomRank, v);
    return v;
  };

  for (const auto& r : gp.rules) {
    const int rv = g.addVertex(
        colorOfRule(r.kind, r.kind == Rule::Kind::Choice ? r.bound : 0, r.pos.size(),
                    r.neg.size(), r.elements.size()));
    if (r.kind == Rule::Kind::Choice) g.eager[static_cast<std::size_t>(rv)] = 1;
    if (r.kind == Rule::Kind::Normal)
      g.addEdge(g.vertexOfAtom[static_cast<std::size_t>(r.head)], rv);
    for (int e : r.elements) g.addEdge(rv, g.vertexOfAtom[static_cast<std::size_t>(e)]);
    for (int a : r.pos) g.addEdge(rv, g.vertexOfAtom[static_cast<std::size_t>(a)]);
    for (int a : r.neg) g.addEdge(rv, companionOf(a));
  }
  return g;
}

namespace {

// Iterated refinement of the color partition by neighbor-cell signatures;
// standard 1-dimensional Weisfeiler-Leman.
std::vector<int> refinePartition(const ColoredGraph& g, const std::vector<int>& seedColors) {
  std::vector<int> cell = seedColors;
  const auto n = static_cast<std::size_t>(g.n);
  while (true) {
    std::map<std::vector<int>, int> sigToCell;
    std::vector<int> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> sig;
      sig.push_back(cell[v]);
      std::vector<int> outSig, inSig;
      for (int w : g.out[v]) outSig.push_back(cell[static_cast<std::size_t>(w)]);
      for (int w : g.in[v]) inSig.push_back(cell[static_cast<std::size_t>(w)]);
      std::sort(outSig.begin(), outSig.end());
      std::sort(inSig.begin(), inSig.end());
      sig.push_back(-1);
      sig.insert(sig.end(), outSig.begin(), outSig.end());
      sig.push_back(-2);
      sig.insert(sig.end(), inSig.begin(), inSig.end());
      auto [it, fresh] = sigToCell.emplace(std::move(sig), static_cast<int>(sigToCell.size()));
      next[v] = it->second;
    }
    if (next == cell) return cell;
    cell = std::move(next);
  }
}

class AutSearch {
 public:
  AutSearch(const ColoredGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {
    cell_ = refinePartition(g_, g_.color);
    const auto n = static_cast<std::size_t>(g_.n);
    std::vector<std::size_t> cellSize(n, 0);
    for (std::size_t v = 0; v < n; ++v) ++cellSize[static_cast<std::size_t>(cell_[v])];

    // Matching order: atoms ascending by cell size, each rule or companion
    // vertex placed as soon as all of its neighbors are; mismatches then
    // surface one step after the atom choice that caused them.
    std::vector<int> atoms;
    for (std::size_t v = 0; v < n; ++v)
      if (g_.atomOfVertex[v] >= 0) atoms.push_back(static_cast<int>(v));
    std::sort(atoms.begin(), atoms.end(), [&](int a, int b) {
      const auto sa = cellSize[static_cast<std::size_t>(cell_[static_cast<std::size_t>(a)])];
      const auto sb = cellSize[static_cast<std::size_t>(cell_[static_cast<std::size_t>(b)])];
      if (sa != sb) return sa < sb;
      return a < b;
    });
    std::vector<char> placed(n, 0);
    auto coverReady = [&](std::size_t v) {
      std::size_t have = 0, want = 0;
      for (int u : g_.out[v]) {
        ++want;
        have += placed[static_cast<std::size_t>(u)] ? 1 : 0;
      }
      for (int u : g_.in[v]) {
        ++want;
        have += placed[static_cast<std::size_t>(u)] ? 1 : 0;
      }
      if (g_.eager[v]) return have >= 1;
      return have == want;
    };
    auto sweepCovered = [&] {
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t v = 0; v < n; ++v) {
          if (placed[v] || g_.atomOfVertex[v] >= 0) continue;
          if (coverReady(v)) {
            placed[v] = 1;
            order_.push_back(static_cast<int>(v));
            grew = true;
          }
        }
      }
    };
    for (int a : atoms) {
      placed[static_cast<std::size_t>(a)] = 1;
      order_.push_back(a);
      sweepCovered();
    }
    for (std::size_t v = 0; v < n; ++v)
      if (!placed[v]) order_.push_back(static_cast<int>(v));
    base_ = atoms;
  }

  // Stabilizer-chain sweep over the atom vertices: at level i, search one
  // automorphism fixing base_[0..i-1] pointwise and moving base_[i] to each
  // coset representative not yet reachable. The transversals generate a
  // subgroup whose action on atoms equals that of the full group, which is
  // all the callers project out.
  std::vector<std::vector<int>> run(bool& complete, std::uint64_t& nodesOut) {
    std::vector<std::vector<int>> gens;
    complete = true;
    const auto n = static_cast<std::size_t>(g_.n);
    std::vector<int> seed = g_.color;
    int nextSeed = 0;
    for (std::size_t v = 0; v < n; ++v) nextSeed = std::max(nextSeed, seed[v] + 1);
    for (std::size_t level = 0; level < base_.size() && complete; ++level) {
      // Refine under the individualized prefix; candidates shrink to the
      // cell of the stabilized partition, and once the atom cells are all
      // singletons the chain has bottomed out.
      cell_ = refinePartition(g_, seed);
      const int v = base_[level];
      for (std::size_t w = 0; w < n && complete; ++w) {
        if (static_cast<int>(w) == v || cell_[w] != cell_[static_cast<std::size_t>(v)]) continue;
        if (inOrbit(gens, level, v, static_cast<int>(w))) continue;
        std::vector<int> img(n, -1);
        std::vector<int> pre(n, -1);
        bool ok = true;
        for (std::size_t j = 0; j < level && ok; ++j)
          ok = tryMap(img, pre, base_[j], base_[j]);
        if (ok) ok = tryMap(img, pre, v, static_cast<int>(w));
        if (ok && search(img, pre, 0)) gens.push_back(img);
        if (nodes_ > budget_) complete = false;
      }
      seed[static_cast<std::size_t>(v)] = nextSeed++;
      std::vector<char> cellSeen(n, 0);
      bool atomsDiscrete = true;
      for (int a : base_) {
        const auto c = static_cast<std::size_t>(cell_[static_cast<std::size_t>(a)]);
        if (cellSeen[c]) {
          atomsDiscrete = false;
          break;
        }
        cellSeen[c] = 1;
      }
      if (atomsDiscrete) break;
    }
    nodesOut = nodes_;
    return gens;
  }

 private:
  // Orbit of v under the generators that fix base_[0..level-1] pointwise.
  bool inOrbit(const std::vector<std::vector<int>>& gens, std::size_t level, int v, int w) const {
    std::vector<const std::vector<int>*> usable;
    for (const auto& gvec : gens) {
      bool fixes = true;
      for (std::size_t j = 0; j < level; ++j)
        if (gvec[static_cast<std::size_t>(base_[j])] != base_[j]) { fixes = false; break; }
      if (fixes) usable.push_back(&gvec);
    }
    std::vector<int> orbit{v};
    std::vector<bool> seen(static_cast<std::size_t>(g_.n), false);
    seen[static_cast<std::size_t>(v)] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto* gvec : usable) {
        const int y = (*gvec)[static_cast<std::size_t>(orbit[i])];
        if (!seen[static_cast<std::size_t>(y)]) {
          if (y == w) return true;
          seen[static_cast<std::size_t>(y)] = true;
          orbit.push_back(y);
        }
      }
    }
    return seen[static_cast<std::size_t>(w)];
  }

  // Maps v -> w if colors and already-mapped adjacency agree.
  bool tryMap(std::vector<int>& img, std::vector<int>& pre, int v, int w) {
    if (img[static_cast<std::size_t>(v)] != -1) return img[static_cast<std::size_t>(v)] == w;
    if (pre[static_cast<std::size_t>(w)] != -1) return false;
    if (cell_[static_cast<std::size_t>(v)] != cell_[static_cast<std::size_t>(w)]) return false;
    for (int u : g_.out[static_cast<std::size_t>(v)]) {
      const int iu = img[static_cast<std::size_t>(u)];
      if (iu != -1 && !g_.hasEdge(w, iu)) return false;
    }
    for (int u : g_.in[static_cast<std::size_t>(v)]) {
      const int iu = img[static_cast<std::size_t>(u)];
      if (iu != -1 && !g_.hasEdge(iu, w)) return false;
    }
    for (int u : g_.out[static_cast<std::size_t>(w)]) {
      const int pu = pre[static_cast<std::size_t>(u)];
      if (pu != -1 && !g_.hasEdge(v, pu)) return false;
    }
    for (int u : g_.in[static_cast<std::size_t>(w)]) {
      const int pu = pre[static_cast<std::size_t>(u)];
      if (pu != -1 && !g_.hasEdge(pu, v)) return false;
    }
    img[static_cast<std::size_t>(v)] = w;
    pre[static_cast<std::size_t>(w)] = v;
    return true;
  }

  bool search(std::vector<int>& img, std::vector<int>& pre, std::size_t idx) {
    const auto n = static_cast<std::size_t>(g_.n);
    while (idx < n && img[static_cast<std::size_t>(order_[idx])] != -1) ++idx;
    if (idx == n) return true;
    const int v = order_[idx];
    for (std::size_t w = 0; w < n; ++w) {
      if (cell_[w] != cell_[static_cast<std::size_t>(v)]) continue;
      if (++nodes_ > budget_) return false;
      if (tryMap(img, pre, v, static_cast<int>(w))) {
        if (search(img, pre, idx + 1)) return true;
        img[static_cast<std::size_t>(v)] = -1;
        pre[w] = -1;
      }
    }
    return false;
  }

  const ColoredGraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> cell_;
  std::vector<int> base_;   // atom vertices, chain levels
  std::vector<int> order_;  // all vertices, matching order
};

}  // namespace

AutomorphismResult findAutomorphisms(const ColoredGraph& g, std::uint64_t nodeBudget,
                                     std::size_t closureCap) {
  AutomorphismResult res;
  AutSearch search(g, nodeBudget);
  bool complete = true;
  auto vertexGens = search.run(complete, res.nodes);
  res.complete = complete;

  std::vector<Permutation> atomPerms;
  for (const auto& img : vertexGens) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::size_t v = 0; v < img.size(); ++v) {
      const int a = g.atomOfVertex[v];
      if (a < 0) continue;
      const int b = g.atomOfVertex[static_cast<std::size_t>(img[v])];
      if (a != b) pairs.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    }
    Permutation p = Permutation::fromPairs(std::move(pairs));
    if (p.isIdentity()) continue;
    if (std::find(atomPerms.begin(), atomPerms.end(), p) == atomPerms.end())
      atomPerms.push_back(std::move(p));
  }
  GeneratorSet gs;
  gs.generators = std::move(atomPerms);
  gs.complete = complete;
  res.generators = irredundant(gs, closureCap);
  return res;
}

AutomorphismResult findAutomorphisms(const GroundProgram& gp, std::uint64_t nodeBudget) {
  return findAutomorphisms(buildSymmetryGraph(gp), nodeBudget);
}

}  // namespace symlift
