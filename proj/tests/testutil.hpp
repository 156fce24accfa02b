// Shared fixtures for the test suites: the pigeon-hole encoding from the
// worked example, instance builders, and small random generators.
#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "symlift/ground.hpp"
#include "symlift/parser.hpp"
#include "symlift/permutation.hpp"
#include "symlift/solver.hpp"

namespace symlift::test {

inline const char* kPigeonEncoding =
    "pigeon(X-1) :- pigeon(X), X > 1.\n"
    "hole(X-1) :- hole(X), X > 1.\n"
    "{p2h(P,H) : hole(H)} = 1 :- pigeon(P).\n"
    ":- p2h(P1,H), p2h(P2,H), P1 != P2.\n";

inline const char* kPigeonAux =
    "lessThan(X,Y) :- pigeon(X), pigeon(Y), X < Y.\n"
    "lessThan(X,Y) :- hole(X), hole(Y), X < Y.\n"
    "maxpigeon(X) :- pigeon(X), not pigeon(X+1).\n"
    "maxhole(X) :- hole(X), not hole(X+1).\n";

inline std::string pigeonInstance(int pigeons, int holes) {
  return "pigeon(" + std::to_string(pigeons) + "). hole(" + std::to_string(holes) + ").";
}

inline Program pigeonProgram(int pigeons, int holes, bool withAux = false) {
  std::string src = std::string(kPigeonEncoding) + pigeonInstance(pigeons, holes);
  if (withAux) src += std::string("\n") + kPigeonAux;
  return parseProgram(src);
}

inline GroundProgram pigeonGround(int pigeons, int holes, bool withAux = false) {
  return ground(pigeonProgram(pigeons, holes, withAux));
}

inline Atom p2h(int p, int h) {
  return Atom{"p2h", {Term::integer(p), Term::integer(h)}};
}

// Builds an interpretation of gp containing all facts plus the given atoms.
inline Bitset withFacts(const GroundProgram& gp, const std::vector<Atom>& atoms) {
  Bitset I = gp.factBits();
  for (const auto& a : atoms) {
    const int r = gp.table.rank(a);
    REQUIRE(r >= 0);
    I.set(static_cast<std::size_t>(r));
  }
  return I;
}

// The four generators listed for the 3x3 instance, as atom-rank
// permutations over gp's table.
inline std::vector<Permutation> referenceGenerators(const GroundProgram& gp) {
  auto cyc = [&](std::vector<std::vector<Atom>> cycles) {
    std::vector<std::vector<std::uint32_t>> ranks;
    for (auto& c : cycles) {
      std::vector<std::uint32_t> rc;
      for (auto& a : c) {
        const int r = gp.table.rank(a);
        REQUIRE(r >= 0);
        rc.push_back(static_cast<std::uint32_t>(r));
      }
      ranks.push_back(std::move(rc));
    }
    return Permutation::fromCycles(ranks);
  };
  std::vector<Permutation> gens;
  gens.push_back(cyc({{p2h(3, 2), p2h(3, 3)}, {p2h(2, 2), p2h(2, 3)}, {p2h(1, 2), p2h(1, 3)}}));
  gens.push_back(cyc({{p2h(3, 1), p2h(3, 3)}, {p2h(2, 1), p2h(2, 3)}, {p2h(1, 1), p2h(1, 3)}}));
  gens.push_back(cyc({{p2h(2, 3), p2h(3, 3)}, {p2h(2, 2), p2h(3, 2)}, {p2h(2, 1), p2h(3, 1)}}));
  gens.push_back(cyc({{p2h(1, 1), p2h(3, 3)},
                      {p2h(2, 1), p2h(2, 3)},
                      {p2h(1, 3), p2h(3, 1)},
                      {p2h(1, 2), p2h(3, 2)}}));
  return gens;
}

// Exhaustive stable-model scan over every subset of the atom table; the
// independent oracle for enumerate.
inline std::vector<Bitset> bruteForceAnswerSets(const GroundProgram& gp) {
  const std::size_t n = gp.table.size();
  REQUIRE(n <= 20);
  std::vector<Bitset> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Bitset I(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1) I.set(i);
    if (isStableModel(gp, I)) out.push_back(I);
  }
  return out;
}

// Random programs with stratified normal parts: facts, choice rules over
// fresh atoms, definitional rules over earlier atoms, constraints.
inline std::string randomProgram(std::mt19937& rng, int maxChoiceAtoms = 12) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::string src;
  std::vector<std::string> defined;  // atoms usable in bodies
  const int nFacts = pick(0, 2);
  for (int i = 0; i < nFacts; ++i) {
    std::string a = "f(" + std::to_string(i) + ")";
    src += a + ".\n";
    defined.push_back(a);
  }
  const int nChoice = pick(1, 3);
  int atomId = 0;
  std::vector<std::string> choiceAtoms;
  for (int c = 0; c < nChoice && static_cast<int>(choiceAtoms.size()) < maxChoiceAtoms; ++c) {
    const int width = pick(1, std::min(4, maxChoiceAtoms - static_cast<int>(choiceAtoms.size())));
    std::string rule = "{";
    for (int i = 0; i < width; ++i) {
      std::string a = "c(" + std::to_string(atomId++) + ")";
      choiceAtoms.push_back(a);
      if (i) rule += "; ";
      rule += a;
    }
    rule += "} = " + std::to_string(pick(0, width)) + ".";
    src += rule + "\n";
  }
  defined.insert(defined.end(), choiceAtoms.begin(), choiceAtoms.end());
  const int nDefs = pick(0, 3);
  for (int d = 0; d < nDefs; ++d) {
    std::string head = "d(" + std::to_string(d) + ")";
    std::string rule = head + " :- ";
    const int nLits = pick(1, 2);
    for (int i = 0; i < nLits; ++i) {
      if (i) rule += ", ";
      const auto& a = defined[static_cast<std::size_t>(pick(0, static_cast<int>(defined.size()) - 1))];
      if (pick(0, 2) == 0) rule += "not ";
      rule += a;
    }
    src += rule + ".\n";
    defined.push_back(head);
  }
  const int nCons = pick(0, 3);
  for (int k = 0; k < nCons; ++k) {
    std::string rule = ":- ";
    const int nLits = pick(1, 3);
    for (int i = 0; i < nLits; ++i) {
      if (i) rule += ", ";
      const auto& a = defined[static_cast<std::size_t>(pick(0, static_cast<int>(defined.size()) - 1))];
      if (pick(0, 3) == 0) rule += "not ";
      rule += a;
    }
    src += rule + ".\n";
  }
  return src;
}

}  // namespace symlift::test
