#include <set>

#include "doctest.h"
#include "symlift/dominance.hpp"
#include "symlift/parser.hpp"
#include "symlift/solver.hpp"
#include "testutil.hpp"

using namespace symlift;

namespace {

GroundRule normalRule(int head, std::vector<int> pos) {
  GroundRule r;
  r.kind = Rule::Kind::Normal;
  r.head = head;
  r.pos = std::move(pos);
  return r;
}

}  // namespace

TEST_CASE("least model closes chains and ignores unfounded loops") {
  // atoms: a=0, b=1, c=2
  Bitset base(3);
  base.set(0);
  Bitset lm = leastModel({normalRule(1, {0}), normalRule(2, {1})}, base);
  CHECK(lm.count() == 3);

  Bitset empty(0);
  CHECK(leastModel({}, empty) == empty);

  Bitset base2(1);
  Bitset lm2 = leastModel({normalRule(0, {0})}, base2);  // a :- a
  CHECK(lm2.count() == 0);
}

TEST_CASE("stability of the reference interpretations") {
  GroundProgram gp = test::pigeonGround(3, 3);
  CHECK(isStableModel(gp, test::withFacts(gp, {test::p2h(1, 1), test::p2h(2, 2), test::p2h(3, 3)})));
  // hole 1 carries two pigeons
  CHECK_FALSE(
      isStableModel(gp, test::withFacts(gp, {test::p2h(1, 1), test::p2h(2, 1), test::p2h(3, 3)})));
  // no pigeon placed at all: every choice bound is unmet
  CHECK_FALSE(isStableModel(gp, gp.factBits()));
}

TEST_CASE("width mismatch is rejected") {
  GroundProgram gp = test::pigeonGround(3, 3);
  CHECK_THROWS_AS(isStableModel(gp, Bitset(3)), std::invalid_argument);
}

TEST_CASE("the 3x3 reference instance has exactly six answer sets") {
  GroundProgram gp = test::pigeonGround(3, 3);
  EnumResult res = enumerateAnswerSets(gp);
  CHECK(res.status == EnumStatus::Complete);
  CHECK(res.sets.size() == 6);
  for (const auto& I : res.sets) CHECK(isStableModel(gp, I));
}

TEST_CASE("pigeonhole principle: 4 pigeons in 3 holes is unsatisfiable") {
  EnumResult res = enumerateAnswerSets(test::pigeonGround(4, 3));
  CHECK(res.status == EnumStatus::Complete);
  CHECK(res.sets.empty());
}

TEST_CASE("4x4 has 24 answer sets, equal to the brute-force scan") {
  GroundProgram gp = test::pigeonGround(4, 4);
  EnumResult res = enumerateAnswerSets(gp);
  CHECK(res.sets.size() == 24);
  // oracle: every subset of the 2^16 choice-atom assignments
  const Bitset guess = gp.guessBits();
  std::vector<std::size_t> guessAtoms;
  guess.forEachSet([&](std::size_t i) { guessAtoms.push_back(i); });
  REQUIRE(guessAtoms.size() == 16);
  std::set<Bitset, BitsetLexLess> expected;
  for (std::uint32_t m = 0; m < (1u << 16); ++m) {
    Bitset I = gp.factBits();
    for (std::size_t k = 0; k < 16; ++k)
      if ((m >> k) & 1) I.set(guessAtoms[k]);
    if (isStableModel(gp, I)) expected.insert(I);
  }
  CHECK(expected.size() == 24);
  for (const auto& I : res.sets) CHECK(expected.count(I) == 1);
}

TEST_CASE("cap=0 output is ascending by lex value and cap=k is a subset") {
  GroundProgram gp = test::pigeonGround(3, 3);
  EnumResult all = enumerateAnswerSets(gp);
  const Bitset mask = gp.solutionBits();
  for (std::size_t i = 1; i < all.sets.size(); ++i)
    CHECK(lexValue(all.sets[i - 1], mask) < lexValue(all.sets[i], mask));

  EnumConfig cfg;
  cfg.cap = 3;
  cfg.seed = 7;
  EnumResult capped = enumerateAnswerSets(gp, cfg);
  CHECK(capped.sets.size() == 3);
  for (const auto& I : capped.sets)
    CHECK(std::find(all.sets.begin(), all.sets.end(), I) != all.sets.end());
}

TEST_CASE("node counts are deterministic for a fixed seed") {
  GroundProgram gp = test::pigeonGround(4, 4);
  for (std::uint64_t seed : {std::uint64_t{0}, std::uint64_t{42}}) {
    EnumConfig cfg;
    cfg.seed = seed;
    EnumResult a = enumerateAnswerSets(gp, cfg);
    EnumResult b = enumerateAnswerSets(gp, cfg);
    CHECK(a.nodes == b.nodes);
    CHECK(a.sets.size() == b.sets.size());
  }
}

TEST_CASE("budget exhaustion yields a partial result") {
  GroundProgram gp = test::pigeonGround(5, 5);
  EnumConfig cfg;
  cfg.nodeBudget = 50;
  EnumResult res = enumerateAnswerSets(gp, cfg);
  CHECK(res.status == EnumStatus::BudgetExhausted);
  CHECK(res.nodes <= 51);
  for (const auto& I : res.sets) CHECK(isStableModel(gp, I));
}

TEST_CASE("enumeration handles normal rules with negation over choice atoms") {
  Program p = parseProgram(
      "{x(1); x(2)} = 1."
      "y :- x(1), not x(2)."
      ":- x(2), not y.");
  GroundProgram gp = ground(p);
  EnumResult res = enumerateAnswerSets(gp);
  // x(2) forces y, but y holds only under x(1): only {x(1), y} remains
  REQUIRE(res.sets.size() == 1);
  const int yRank = gp.table.rank(Atom{"y", {}});
  REQUIRE(yRank >= 0);
  CHECK(res.sets[0].test(static_cast<std::size_t>(yRank)));
}

TEST_CASE("edge cases: empty program, zero bound, infeasible bound") {
  // the empty program has exactly the empty answer set
  EnumResult empty = enumerateAnswerSets(ground(parseProgram("")));
  REQUIRE(empty.sets.size() == 1);
  CHECK(empty.sets[0].count() == 0);

  // bound 0 forbids every element
  EnumResult zero = enumerateAnswerSets(ground(parseProgram("{a; b} = 0.")));
  REQUIRE(zero.sets.size() == 1);
  CHECK(zero.sets[0].count() == 0);

  // bound above the element count is unsatisfiable
  CHECK(enumerateAnswerSets(ground(parseProgram("{a; b} = 3."))).sets.empty());
}

TEST_CASE("unstratified loops through negation are rejected") {
  GroundProgram gp = ground(parseProgram("{c} = 1. a :- not b, c. b :- not a, c."));
  CHECK_THROWS_WITH_AS(enumerateAnswerSets(gp),
                       doctest::Contains("not stratified"), std::runtime_error);
  // ...while negation on choice atoms and positive recursion stay fine
  CHECK_NOTHROW(enumerateAnswerSets(ground(parseProgram("{c} = 1. a :- not c. b :- b."))));
}

TEST_CASE("random corpus agrees with the full-subset stability scan") {
  std::mt19937 rng(20260811);
  for (int iter = 0; iter < 120; ++iter) {
    const std::string src = test::randomProgram(rng, 8);
    CAPTURE(src);
    GroundProgram gp = ground(parseProgram(src));
    if (gp.table.size() > 18) continue;
    const auto expected = test::bruteForceAnswerSets(gp);
    EnumResult got = enumerateAnswerSets(gp);
    REQUIRE(got.status == EnumStatus::Complete);
    REQUIRE(got.sets.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(std::find(got.sets.begin(), got.sets.end(), expected[i]) != got.sets.end());
    }
  }
}
