#include <algorithm>

#include "doctest.h"
#include "symlift/dominance.hpp"
#include "symlift/symmetry.hpp"
#include "testutil.hpp"

using namespace symlift;

namespace {

const std::vector<std::vector<Atom>>& referenceSets() {
  static const std::vector<std::vector<Atom>> sets = {
      {test::p2h(1, 1), test::p2h(2, 2), test::p2h(3, 3)},   // AS1 = 273
      {test::p2h(1, 1), test::p2h(2, 3), test::p2h(3, 2)},   // AS2 = 161
      {test::p2h(1, 2), test::p2h(2, 1), test::p2h(3, 3)},   // AS3 = 266
      {test::p2h(1, 2), test::p2h(2, 3), test::p2h(3, 1)},   // AS4 = 98
      {test::p2h(1, 3), test::p2h(2, 1), test::p2h(3, 2)},   // AS5 = 140
      {test::p2h(1, 3), test::p2h(2, 2), test::p2h(3, 1)}};  // AS6 = 84
  return sets;
}

}  // namespace

TEST_CASE("lex values reproduce the reference bit strings") {
  GroundProgram gp = test::pigeonGround(3, 3);
  const Bitset mask = gp.solutionBits();

  const Bitset as1 = test::withFacts(gp, referenceSets()[0]);
  CHECK(lexValue(as1, mask).toUint64() == 273);
  CHECK(lexValue(as1, mask).toBinaryString() == "100010001");

  CHECK(lexValue(Bitset(gp.table.size()), mask).toUint64() == 0);

  const Bitset as6 = test::withFacts(gp, referenceSets()[5]);
  CHECK(lexValue(as6, mask).toUint64() == 84);
  CHECK(lexValue(as6, mask).toBinaryString() == "001010100");
}

TEST_CASE("dominance under the reference generators") {
  GroundProgram gp = test::pigeonGround(3, 3);
  const Bitset mask = gp.solutionBits();
  GeneratorSet gs;
  gs.generators = test::referenceGenerators(gp);

  const Bitset as4 = test::withFacts(gp, referenceSets()[3]);
  auto dom4 = isDominated(as4, gs, mask);
  CHECK(dom4.dominated);
  REQUIRE(dom4.witness.has_value());
  CHECK(*dom4.witness == gs.generators[0]);  // pi1 maps AS4 to AS6

  const Bitset as6 = test::withFacts(gp, referenceSets()[5]);
  CHECK_FALSE(isDominated(as6, gs, mask).dominated);

  GeneratorSet empty;
  CHECK_FALSE(isDominated(as4, empty, mask).dominated);
}

TEST_CASE("non-strict dominance also counts fixed points") {
  GroundProgram gp = test::pigeonGround(3, 3);
  const Bitset mask = gp.solutionBits();
  GeneratorSet gs;
  gs.generators = {test::referenceGenerators(gp)[3]};  // pi4 fixes AS6
  const Bitset as6 = test::withFacts(gp, referenceSets()[5]);
  DominanceOptions nonStrict;
  nonStrict.strict = false;
  CHECK_FALSE(isDominated(as6, gs, mask).dominated);
  CHECK(isDominated(as6, gs, mask, nonStrict).dominated);
}

TEST_CASE("labeling reproduces the reference task") {
  GroundProgram gp = test::pigeonGround(3, 3);
  GeneratorSet gs;
  gs.generators = test::referenceGenerators(gp);
  Program instance = parseProgram(test::pigeonInstance(3, 3));

  auto examples = labelInstance(gp, gs, EnumConfig{}, instance);
  REQUIRE(examples.size() == 6);

  std::size_t positives = 0;
  for (const auto& e : examples) {
    if (e.positive) {
      ++positives;
      CHECK_FALSE(e.weight.has_value());
    } else {
      REQUIRE(e.weight.has_value());
      CHECK(*e.weight == 100);
      CHECK(e.pi.include.size() == 3);
      CHECK(e.pi.exclude.size() == 6);
    }
  }
  CHECK(positives == 1);

  // id1 is the lex-smallest dominated set (AS4); id2 the retained AS6
  CHECK(examples[0].id == "id1");
  CHECK_FALSE(examples[0].positive);
  std::vector<Atom> id1T = {test::p2h(1, 2), test::p2h(2, 3), test::p2h(3, 1)};
  CHECK(examples[0].pi.include == id1T);
  CHECK(examples[1].id == "id2");
  CHECK(examples[1].positive);
  std::vector<Atom> id2T = {test::p2h(1, 3), test::p2h(2, 2), test::p2h(3, 1)};
  CHECK(examples[1].pi.include == id2T);
  CHECK(toString(examples[0].context) == toString(instance));
}

TEST_CASE("labeling with the searched generators matches the reference counts") {
  GroundProgram gp = test::pigeonGround(3, 3);
  AutomorphismResult aut = findAutomorphisms(gp);
  REQUIRE(aut.complete);
  auto examples = labelInstance(gp, aut.generators, EnumConfig{}, parseProgram("pigeon(3). hole(3)."));
  REQUIRE(examples.size() == 6);
  std::size_t positives = 0;
  for (const auto& e : examples) positives += e.positive ? 1 : 0;
  CHECK(positives == 1);
}

TEST_CASE("empty generator set labels collapse to a single positive") {
  GroundProgram gp = test::pigeonGround(3, 3);
  GeneratorSet empty;
  auto examples = labelInstance(gp, empty, EnumConfig{}, parseProgram("pigeon(3). hole(3)."));
  REQUIRE(examples.size() == 1);
  CHECK(examples[0].positive);
  CHECK(examples[0].pi.include.empty());
  CHECK(examples[0].pi.exclude.empty());
  CHECK(examples[0].id == "id1");
}

TEST_CASE("orbit minima are never dominated") {
  GroundProgram gp = test::pigeonGround(3, 3);
  const Bitset mask = gp.solutionBits();
  GeneratorSet gs;
  gs.generators = test::referenceGenerators(gp);
  ClosureResult cl = groupClosure(gs, 10'000);

  EnumResult sets = enumerateAnswerSets(gp);
  for (const auto& I : sets.sets) {
    // orbit minimum under the closure
    Bitset best = I;
    for (const auto& g : cl.elements) {
      const Bitset image = applyPermutation(g, I);
      if ((image & mask).lexLess(best & mask)) best = image;
    }
    CHECK_FALSE(isDominated(best, gs, mask).dominated);
  }
}

TEST_CASE("the non-dominated set under the closure is exactly AS6") {
  GroundProgram gp = test::pigeonGround(3, 3);
  const Bitset mask = gp.solutionBits();
  GeneratorSet gs;
  gs.generators = test::referenceGenerators(gp);
  ClosureResult cl = groupClosure(gs, 10'000);
  GeneratorSet closureSet;
  for (const auto& g : cl.elements)
    if (!g.isIdentity()) closureSet.generators.push_back(g);

  EnumResult sets = enumerateAnswerSets(gp);
  const Bitset as6 = test::withFacts(gp, referenceSets()[5]);
  for (const auto& I : sets.sets) {
    const bool dom = isDominated(I, closureSet, mask).dominated;
    CHECK(dom == !(I == as6));
  }
}

TEST_CASE("gen examples are positive with empty partial interpretation") {
  Example g = makeGenExample(parseProgram("pigeon(4). hole(4)."), "gen1");
  CHECK(g.positive);
  CHECK_FALSE(g.weight.has_value());
  CHECK(g.pi.include.empty());
  CHECK(g.pi.exclude.empty());
  CHECK(toString(g.context).find("pigeon(4)") != std::string::npos);

  Example empty = makeGenExample(Program{}, "gen2");
  CHECK(empty.positive);
  CHECK(empty.context.empty());
}
