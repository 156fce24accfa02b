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

#include "symlift/permutation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace symlift {

Permutation Permutation::fromPairs(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                             [](const auto& p) { return p.first == p.second; }),
              pairs.end());
  std::sort(pairs.begin(), pairs.end());
  std::set<std::uint32_t> sources, images;
  for (const auto& [s, d] : pairs) {
    if (!sources.insert(s).second) throw std::invalid_argument("duplicate source in permutation");
    images.insert(d);
  }
  if (sources != images) throw std::invalid_argument("permutation pairs are not a bijection");
  Permutation p;
  p.map_ = std::move(pairs);
  return p;
}

Permutation Permutation::trusted(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  Permutation p;
  p.map_ = std::move(pairs);
  return p;
}

Permutation Permutation::fromCycles(const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& c : cycles) {
    if (c.size() < 2) continue;
    for (std::size_t i = 0; i < c.size(); ++i) pairs.emplace_back(c[i], c[(i + 1) % c.size()]);
  }
  return fromPairs(std::move(pairs));
}

std::uint32_t Permutation::imageOf(std::uint32_t x) const {
  auto it = std::lower_bound(map_.begin(), map_.end(), x,
                             [](const auto& p, std::uint32_t v) { return p.first < v; });
  if (it != map_.end() && it->first == x) return it->second;
  return x;
}

std::vector<std::uint32_t> Permutation::support() const {
  std::vector<std::uint32_t> s;
  s.reserve(map_.size());
  for (const auto& [src, dst] : map_) s.push_back(src);
  return s;
}

std::vector<std::vector<std::uint32_t>> Permutation::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::set<std::uint32_t> done;
  for (const auto& [src, dst] : map_) {
    if (done.count(src)) continue;
    std::vector<std::uint32_t> cyc;
    std::uint32_t x = src;
    do {
      cyc.push_back(x);
      done.insert(x);
      x = imageOf(x);
    } while (x != src);
    // rotate to smallest element first
    auto mn = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), mn, cyc.end());
    out.push_back(std::move(cyc));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::size_t Permutation::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& [s, d] : map_) {
    h = (h ^ s) * 0x100000001b3ull;
    h = (h ^ d) * 0x100000001b3ull;
  }
  return h;
}

Bitset applyPermutation(const Permutation& p, const Bitset& I) {
  Bitset out = I;
  for (const auto& [src, dst] : p.pairs()) out.assign(dst, I.test(src));
  return out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  // both pair lists are sorted by source; merge them for the domain
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(p.map_.size() + q.map_.size());
  std::size_t i = 0, j = 0;
  auto emit = [&](std::uint32_t x) {
    const std::uint32_t y = p.imageOf(q.imageOf(x));
    if (y != x) pairs.emplace_back(x, y);
  };
  while (i < p.map_.size() || j < q.map_.size()) {
    if (j == q.map_.size() || (i < p.map_.size() && p.map_[i].first < q.map_[j].first)) {
      emit(p.map_[i].first);
      ++i;
    } else if (i == p.map_.size() || q.map_[j].first < p.map_[i].first) {
      emit(q.map_[j].first);
      ++j;
    } else {
      emit(p.map_[i].first);
      ++i;
      ++j;
    }
  }
  return Permutation::trusted(std::move(pairs));
}

Permutation invert(const Permutation& p) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(p.map_.size());
  for (const auto& [s, d] : p.map_) pairs.emplace_back(d, s);
  std::sort(pairs.begin(), pairs.end());
  return Permutation::trusted(std::move(pairs));
}

Bitset GeneratorSet::support(std::size_t width) const {
  Bitset b(width);
  for (const auto& g : generators)
    for (const auto& [s, d] : g.pairs()) b.set(s);
  return b;
}

ClosureResult groupClosure(const GeneratorSet& gs, std::size_t cap) {
  ClosureResult res;
  std::unordered_set<Permutation, PermutationHash> seen;
  std::queue<Permutation> frontier;
  seen.insert(Permutation::identity());
  frontier.push(Permutation::identity());
  while (!frontier.empty()) {
    Permutation cur = std::move(frontier.front());
    frontier.pop();
    for (const auto& g : gs.generators) {
      Permutation next = compose(g, cur);
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          res.capped = true;
          res.elements.assign(seen.begin(), seen.end());
          return res;
        }
        frontier.push(std::move(next));
      }
    }
  }
  res.elements.assign(seen.begin(), seen.end());
  return res;
}

namespace {

// BFS membership with early exit; indeterminate (nullopt) when the closure
// outgrows the cap first.
std::optional<bool> closureContains(const std::vector<Permutation>& gens, const Permutation& g,
                                    std::size_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::queue<Permutation> frontier;
  seen.insert(Permutation::identity());
  frontier.push(Permutation::identity());
  if (g.isIdentity()) return true;
  while (!frontier.empty()) {
    Permutation cur = std::move(frontier.front());
    frontier.pop();
    for (const auto& gen : gens) {
      Permutation next = compose(gen, cur);
      if (next == g) return true;
      if (seen.insert(next).second) {
        if (seen.size() > cap) return std::nullopt;
        frontier.push(std::move(next));
      }
    }
  }
  return false;
}

}  // namespace

GeneratorSet irredundant(const GeneratorSet& gs, std::size_t cap) {
  std::vector<Permutation> kept;
  for (const auto& g : gs.generators) {
    if (g.isIdentity()) continue;
    if (std::find(kept.begin(), kept.end(), g) == kept.end()) kept.push_back(g);
  }
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<Permutation> rest;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) rest.push_back(kept[j]);
    const std::optional<bool> member = closureContains(rest, kept[i], cap);
    if (member.value_or(false))  // kept conservatively when the cap was hit
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  GeneratorSet out;
  out.generators = std::move(kept);
  out.complete = gs.complete;
  return out;
}

std::string toCycleString(const Permutation& p, const AtomTable& table) {
  auto cycles = p.cycles();
  std::string out;
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    if (!out.empty()) out += " ";
    out += "(";
    for (std::uint32_t r : *it) out += " " + toString(table.atom(r));
    out += " )";
  }
  return out.empty() ? "()" : out;
}

}  // namespace symlift
