#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "symlift/pipeline.hpp"
#include "testutil.hpp"

using namespace symlift;

namespace {

NamedInstance pigeonInstanceNamed(int p, int h) {
  NamedInstance inst;
  inst.name = "p" + std::to_string(p) + "h" + std::to_string(h);
  inst.facts = parseProgram(test::pigeonInstance(p, h));
  return inst;
}

std::vector<ModeDecl> pigeonModes() {
  return {
      {2, "p2h", {"pigeon", "hole"}, false},
      {2, "pigeon", {"pigeon"}, false},
      {2, "hole", {"hole"}, false},
      {1, "maxhole", {"hole"}, false},
      {1, "maxpigeon", {"pigeon"}, false},
      {2, "lessThan", {"hole", "hole"}, true},
      {2, "lessThan", {"pigeon", "pigeon"}, true},
      {2, "lessThan", {"hole", "pigeon"}, false},
      {2, "lessThan", {"pigeon", "hole"}, false},
  };
}

PipelineConfig pigeonConfig() {
  PipelineConfig cfg;
  cfg.problem = parseProgram(test::kPigeonEncoding);
  cfg.auxBackground = parseProgram(test::kPigeonAux);
  cfg.s = {pigeonInstanceNamed(3, 3)};
  cfg.gen = {pigeonInstanceNamed(2, 3)};
  cfg.validation = {pigeonInstanceNamed(3, 4), pigeonInstanceNamed(4, 4),
                    pigeonInstanceNamed(2, 2)};
  cfg.modes = pigeonModes();
  return cfg;
}

std::size_t modelCount(const Program& problem, const Program& aux, const Program& abk,
                       const std::string& instance) {
  Program p = problem;
  p.merge(aux);
  p.merge(abk);
  p.merge(parseProgram(instance));
  EnumResult res = enumerateAnswerSets(ground(p));
  REQUIRE(res.status == EnumStatus::Complete);
  return res.sets.size();
}

}  // namespace

TEST_CASE("framework run on the pigeon-hole scenario") {
  PipelineConfig cfg = pigeonConfig();
  RunReport report = runFramework(cfg);
  REQUIRE(report.ok);
  CHECK(report.rounds == 1);
  CHECK_FALSE(report.learned.empty());

  const Program abk = report.abkProgram();
  // learned constraints are first-order: no ground constants anywhere
  for (const auto& r : abk.rules)
    for (const auto& a : r.bodyPos)
      for (const auto& t : a.args) CHECK(t.kind == Term::Kind::Var);

  // satisfiability of every validation member is preserved
  for (const auto& v : {"pigeon(3). hole(4).", "pigeon(4). hole(4).", "pigeon(2). hole(2)."})
    CHECK(modelCount(cfg.problem, cfg.auxBackground, abk, v) > 0);

  // full symmetry breaking on square instances: n! collapses to 1
  CHECK(modelCount(cfg.problem, cfg.auxBackground, Program{}, "pigeon(3). hole(3).") == 6);
  CHECK(modelCount(cfg.problem, cfg.auxBackground, abk, "pigeon(3). hole(3).") == 1);
  CHECK(modelCount(cfg.problem, cfg.auxBackground, Program{}, "pigeon(4). hole(4).") == 24);
  CHECK(modelCount(cfg.problem, cfg.auxBackground, abk, "pigeon(4). hole(4).") == 1);

  // the ABK text parses back as a constraint-only program
  Program parsed = parseProgram(report.abkText());
  CHECK(parsed.rules.size() == abk.rules.size());
  for (const auto& r : parsed.rules) CHECK(r.kind == Rule::Kind::Constraint);

  // a second run is bit-identical
  RunReport again = runFramework(cfg);
  CHECK(again.abkText() == report.abkText());
  CHECK(again.toJson() == report.toJson());
}

TEST_CASE("configuration errors") {
  PipelineConfig cfg = pigeonConfig();
  cfg.s.clear();
  CHECK_THROWS_AS(runFramework(cfg), std::invalid_argument);

  PipelineConfig cfg2 = pigeonConfig();
  cfg2.maxRounds = 0;
  CHECK_THROWS_AS(runFramework(cfg2), std::invalid_argument);

  PipelineConfig cfg3 = pigeonConfig();
  cfg3.gen.push_back(cfg3.validation[0]);
  CHECK_THROWS_AS(runFramework(cfg3), std::invalid_argument);
}

TEST_CASE("an over-strong hypothesis moves the failing instance into Gen") {
  PipelineConfig cfg;
  cfg.problem = parseProgram(
      "{pick(V) : val(V)} = 1.\n"
      ":- pick(X), blocked(X).\n");
  cfg.auxBackground = parseProgram(
      "lessThan(X,Y) :- val(X), val(Y), X < Y.\n"
      "safeLess(X,Y) :- lessThan(X,Y), not blocked(X).\n");
  NamedInstance s;
  s.name = "v123";
  s.facts = parseProgram("val(1). val(2). val(3).");
  cfg.s = {s};
  NamedInstance v;
  v.name = "blocked1";
  v.facts = parseProgram("val(1). val(2). blocked(1).");
  cfg.validation = {v};
  cfg.modes = {
      {1, "pick", {"val"}, false},
      {1, "lessThan", {"val", "val"}, true},
      {1, "safeLess", {"val", "val"}, true},
  };
  cfg.limits.maxBody = 2;
  cfg.limits.maxVars = 2;

  RunReport report = runFramework(cfg);
  REQUIRE(report.ok);
  CHECK(report.rounds == 2);
  REQUIRE(report.roundReports.size() == 2);
  // round 1 learned the lessThan variant, which starves blocked1
  CHECK(report.roundReports[0].failedValidation == std::vector<std::string>{"blocked1"});
  // blocked1 became a Gen member, and round 2 switched to the guarded variant
  CHECK(std::find(report.genNames.begin(), report.genNames.end(), "blocked1") !=
        report.genNames.end());
  REQUIRE(report.learned.size() == 1);
  CHECK(report.learned[0].constraint.text().find("safeLess") != std::string::npos);
}

TEST_CASE("exceeding max_rounds reports the failing instance") {
  PipelineConfig cfg;
  cfg.problem = parseProgram(
      "{pick(V) : val(V)} = 1.\n"
      ":- pick(X), blocked(X).\n");
  cfg.auxBackground = parseProgram(
      "lessThan(X,Y) :- val(X), val(Y), X < Y.\n"
      "safeLess(X,Y) :- lessThan(X,Y), not blocked(X).\n");
  NamedInstance s;
  s.name = "v123";
  s.facts = parseProgram("val(1). val(2). val(3).");
  cfg.s = {s};
  NamedInstance v;
  v.name = "blocked1";
  v.facts = parseProgram("val(1). val(2). blocked(1).");
  cfg.validation = {v};
  cfg.modes = {
      {1, "pick", {"val"}, false},
      {1, "lessThan", {"val", "val"}, true},
      {1, "safeLess", {"val", "val"}, true},
  };
  cfg.limits.maxBody = 2;
  cfg.limits.maxVars = 2;
  // round 1 learns the unguarded variant and fails validation; with a
  // single round allowed the run ends unvalidated
  cfg.maxRounds = 1;

  RunReport report = runFramework(cfg);
  CHECK_FALSE(report.ok);
  CHECK(report.rounds == 1);
  CHECK(report.failingInstance == "blocked1");
  CHECK(report.learned.empty());
}

TEST_CASE("incremental with a single instance equals the plain framework") {
  PipelineConfig cfg = pigeonConfig();
  RunReport whole = runFramework(cfg);
  RunReport inc = runIncremental(cfg);
  REQUIRE(whole.ok);
  REQUIRE(inc.ok);
  REQUIRE(whole.learned.size() == inc.learned.size());
  for (std::size_t i = 0; i < whole.learned.size(); ++i)
    CHECK(whole.learned[i].constraint.text() == inc.learned[i].constraint.text());
}

TEST_CASE("incremental mode reuses constraints across sub-tasks") {
  PipelineConfig cfg = pigeonConfig();
  cfg.s = {pigeonInstanceNamed(3, 3), pigeonInstanceNamed(4, 4)};
  cfg.validation = {pigeonInstanceNamed(3, 4), pigeonInstanceNamed(2, 2)};
  RunReport report = runIncremental(cfg);
  REQUIRE(report.ok);
  // the first sub-task's constraints already break all symmetries of the
  // second instance, so nothing new is learned there
  std::size_t fromSecond = 0;
  for (const auto& e : report.learned)
    if (e.instance == "p4h4") ++fromSecond;
  CHECK(fromSecond == 0);
  for (const auto& e : report.learned) CHECK(e.instance == "p3h3");

  // reversed order also validates, possibly with a different basis
  PipelineConfig reversed = cfg;
  std::swap(reversed.s[0], reversed.s[1]);
  RunReport other = runIncremental(reversed);
  CHECK(other.ok);
  for (const auto& v : {"pigeon(3). hole(4).", "pigeon(2). hole(2)."})
    CHECK(modelCount(cfg.problem, cfg.auxBackground, other.abkProgram(), v) > 0);
}

TEST_CASE("bench table shape and contents") {
  PipelineConfig cfg = pigeonConfig();
  RunReport run = runFramework(cfg);
  REQUIRE(run.ok);
  cfg.initialAbk = run.abkProgram();

  SUBCASE("empty instance list gives the header only") {
    const std::string csv = benchCsv(cfg);
    CHECK(csv ==
          "instance,sat,ABK_nodes,ABK_models,BASE_nodes,BASE_models,SBASS_nodes,"
          "CLASPpi_nodes,CLASPpi_models,ABK_ms,BASE_ms,SBASS_ms,CLASPpi_ms\n");
  }

  SUBCASE("satisfiable and unsatisfiable rows") {
    cfg.bench = {pigeonInstanceNamed(3, 3), pigeonInstanceNamed(4, 3)};
    const std::string csv = benchCsv(cfg);
    std::istringstream lines(csv);
    std::string header, row33, row43;
    std::getline(lines, header);
    std::getline(lines, row33);
    std::getline(lines, row43);
    CHECK(row33.find("p3h3,1,") == 0);
    CHECK(row33.find(",6,") != std::string::npos);   // BASE_models
    CHECK(row43.find("p4h3,0,") == 0);
    // ABK solves the satisfiable square instance down to one model
    std::istringstream cells(row33);
    std::string cell;
    std::vector<std::string> parts;
    while (std::getline(cells, cell, ',')) parts.push_back(cell);
    REQUIRE(parts.size() == 13);
    CHECK(parts[3] == "1");  // ABK_models
    CHECK(parts[5] == "6");  // BASE_models
  }

  SUBCASE("exhausted budgets appear as TO") {
    cfg.bench = {pigeonInstanceNamed(4, 4)};
    cfg.limits.solver.nodeBudget = 3;
    const std::string csv = benchCsv(cfg);
    CHECK(csv.find("TO") != std::string::npos);
  }
}

TEST_CASE("manifest loading end to end") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "symlift_manifest_test";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    out << text;
  };
  write("encoding.lp", test::kPigeonEncoding);
  write("aux.lp", test::kPigeonAux);
  write("p3h3.lp", "pigeon(3). hole(3).");
  write("p2h3.lp", "pigeon(2). hole(3).");
  write("p4h4.lp", "pigeon(4). hole(4).");
  write("bias.las",
        "#modeb(2,p2h(var(pigeon),var(hole))).\n"
        "#modeb(2,pigeon(var(pigeon))).\n"
        "#modeb(2,hole(var(hole))).\n"
        "#modeb(1,maxhole(var(hole))).\n"
        "#modeb(1,maxpigeon(var(pigeon))).\n"
        "#modeb(2,lessThan(var(hole),var(hole)),(anti_reflexive)).\n"
        "#modeb(2,lessThan(var(pigeon),var(pigeon)),(anti_reflexive)).\n"
        "#modeb(2,lessThan(var(hole),var(pigeon))).\n"
        "#modeb(2,lessThan(var(pigeon),var(hole))).\n");
  write("manifest.json", R"json({
  "problem": "encoding.lp",
  "aux_background": "aux.lp",
  "bias": "bias.las",
  "s": ["p3h3.lp"],
  "gen": ["p2h3.lp"],
  "validation": ["p4h4.lp"],
  "bench": ["p3h3.lp"],
  "max_rounds": 3,
  "limits": {"node_budget": 2000000, "max_body": 3, "max_vars": 3}
})json");

  PipelineConfig cfg = loadManifest((dir / "manifest.json").string());
  CHECK(cfg.maxRounds == 3);
  CHECK(cfg.modes.size() == 9);
  CHECK(cfg.s.size() == 1);
  CHECK(cfg.s[0].name == "p3h3");
  CHECK(cfg.limits.solver.nodeBudget == 2000000);

  RunReport report = runFramework(cfg);
  CHECK(report.ok);
  CHECK(report.toJson().find("\"ok\": true") != std::string::npos);
  fs::remove_all(dir);
}
