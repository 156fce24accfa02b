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

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "symlift/dominance.hpp"
#include "symlift/ground.hpp"
#include "symlift/ilasp.hpp"
#include "symlift/parser.hpp"
#include "symlift/pipeline.hpp"
#include "symlift/sbc.hpp"
#include "symlift/solver.hpp"
#include "symlift/symmetry.hpp"

namespace {

using namespace symlift;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitBudget = 2;
constexpr int kExitParse = 3;
constexpr int kExitError = 4;

Program parseFiles(const std::vector<std::string>& paths) {
  Program p;
  for (const auto& path : paths) p.merge(parseProgramFile(path));
  return p;
}

void writeOut(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + *path);
  out << text;
}

std::string atomLine(const Bitset& I, const AtomTable& table) {
  std::string line;
  I.forEachSet([&](std::size_t i) {
    if (!line.empty()) line += " ";
    line += toString(table.atom(i));
  });
  return line;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symlift - lifting instance-specific symmetry breaking into first-order constraints"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;
  std::string manifestPath;
  app.add_option("--seed", seed, "seed for randomized guess order (0 = rank order)");
  app.add_option("--budget", budget, "solver node budget");
  app.add_option("--manifest", manifestPath, "JSON manifest for pipeline commands");

  // ground
  auto* cmdGround = app.add_subcommand("ground", "ground a program and print it");
  std::vector<std::string> groundFiles;
  std::optional<std::string> groundOut;
  bool groundSmodels = false;
  cmdGround->add_option("files", groundFiles, "program files (.lp)")->required();
  cmdGround->add_option("--out", groundOut, "output file");
  cmdGround->add_flag("--smodels", groundSmodels, "emit SMODELS numeric format");

  // solve
  auto* cmdSolve = app.add_subcommand("solve", "enumerate answer sets");
  std::vector<std::string> solveFiles;
  std::size_t solveCap = 0;
  bool solveStats = false;
  cmdSolve->add_option("files", solveFiles, "program files (.lp)")->required();
  cmdSolve->add_option("--cap", solveCap, "stop after N answer sets (0 = all)");
  cmdSolve->add_flag("--stats", solveStats, "print node counts");

  // symm
  auto* cmdSymm = app.add_subcommand("symm", "detect symmetry generators");
  std::vector<std::string> symmFiles;
  cmdSymm->add_option("files", symmFiles, "program files (.lp)")->required();

  // sbc
  auto* cmdSbc = app.add_subcommand("sbc", "emit ground lex-leader constraints");
  std::vector<std::string> sbcFiles;
  std::optional<std::string> sbcOut;
  cmdSbc->add_option("files", sbcFiles, "program files (.lp)")->required();
  cmdSbc->add_option("--out", sbcOut, "output file (.lp)");

  // label
  auto* cmdLabel = app.add_subcommand("label", "label an instance's answer sets");
  std::string labelProblem, labelInstanceFile;
  bool labelNonStrict = false;
  cmdLabel->add_option("problem", labelProblem, "problem encoding (.lp)")->required();
  cmdLabel->add_option("instance", labelInstanceFile, "instance facts (.lp)")->required();
  cmdLabel->add_flag("--non-strict", labelNonStrict,
                     "dominated when some generator image is lex smaller or equal");

  // emit-ilasp
  auto* cmdEmit = app.add_subcommand("emit-ilasp", "emit the learning task for the manifest");
  std::optional<std::string> emitOut;
  cmdEmit->add_option("--out", emitOut, "output file (.las)");

  // learn
  auto* cmdLearn = app.add_subcommand("learn", "learn constraints from a task file");
  std::string learnTask;
  int learnMaxBody = 3, learnMaxVars = 3;
  std::optional<std::string> learnScoring;
  cmdLearn->add_option("task", learnTask, "task file (.las)")->required();
  cmdLearn->add_option("--max-body", learnMaxBody, "max body literals");
  cmdLearn->add_option("--max-vars", learnMaxVars, "max variables");
  cmdLearn->add_option("--scoring", learnScoring, "per-predicate weight table (.json)");

  // run / run-incremental / bench
  auto* cmdRun = app.add_subcommand("run", "run the full framework");
  std::optional<std::string> runAbkOut, runReportOut;
  cmdRun->add_option("--abk-out", runAbkOut, "write the learned ABK here");
  cmdRun->add_option("--report-out", runReportOut, "write the JSON report here");
  auto* cmdRunInc = app.add_subcommand("run-incremental", "run per-instance sub-tasks");
  std::optional<std::string> incAbkOut, incReportOut;
  cmdRunInc->add_option("--abk-out", incAbkOut, "write the learned ABK here");
  cmdRunInc->add_option("--report-out", incReportOut, "write the JSON report here");
  auto* cmdBench = app.add_subcommand("bench", "search-effort benchmark table");
  std::optional<std::string> benchOut;
  cmdBench->add_option("--out", benchOut, "output CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    EnumConfig solverCfg;
    solverCfg.seed = seed;
    solverCfg.nodeBudget = budget;

    if (cmdGround->parsed()) {
      GroundProgram gp = ground(parseFiles(groundFiles));
      writeOut(groundOut, groundSmodels ? toSmodels(gp) : gp.toText());
      return kExitOk;
    }
    if (cmdSolve->parsed()) {
      GroundProgram gp = ground(parseFiles(solveFiles));
      EnumConfig cfg = solverCfg;
      cfg.cap = solveCap;
      EnumResult res = enumerateAnswerSets(gp, cfg);
      for (const auto& I : res.sets) std::cout << atomLine(I, gp.table) << "\n";
      if (solveStats)
        std::cout << "% models=" << res.sets.size() << " nodes=" << res.nodes << "\n";
      if (res.status == EnumStatus::BudgetExhausted) {
        std::cerr << "node budget exhausted; enumeration incomplete\n";
        return kExitBudget;
      }
      return kExitOk;
    }
    if (cmdSymm->parsed()) {
      GroundProgram gp = ground(parseFiles(symmFiles));
      AutomorphismResult res = findAutomorphisms(buildSymmetryGraph(gp), budget);
      for (const auto& g : res.generators.generators)
        std::cout << toCycleString(g, gp.table) << "\n";
      if (!res.complete) {
        std::cerr << "search budget exhausted; generator set incomplete\n";
        return kExitBudget;
      }
      return kExitOk;
    }
    if (cmdSbc->parsed()) {
      GroundProgram gp = ground(parseFiles(sbcFiles));
      AutomorphismResult res = findAutomorphisms(buildSymmetryGraph(gp), budget);
      writeOut(sbcOut, emitLexLeader(res.generators, gp).toText());
      return res.complete ? kExitOk : kExitBudget;
    }
    if (cmdLabel->parsed()) {
      Program problem = parseProgramFile(labelProblem);
      Program instance = parseProgramFile(labelInstanceFile);
      Program full = problem;
      full.merge(instance);
      GroundProgram gp = ground(full);
      AutomorphismResult aut = findAutomorphisms(buildSymmetryGraph(gp), budget);
      LabelOptions lopts;
      lopts.dominance.strict = !labelNonStrict;
      for (const auto& e : labelInstance(gp, aut.generators, solverCfg, instance, lopts))
        std::cout << exampleLine(e) << "\n";
      return kExitOk;
    }
    if (cmdEmit->parsed() || cmdRun->parsed() || cmdRunInc->parsed() || cmdBench->parsed()) {
      if (manifestPath.empty()) {
        std::cerr << "--manifest FILE is required for this command\n";
        return kExitError;
      }
      PipelineConfig cfg = loadManifest(manifestPath);
      if (seed != 0) cfg.limits.solver.seed = seed;
      if (app.count("--budget") > 0) cfg.limits.solver.nodeBudget = budget;

      if (cmdEmit->parsed()) {
        Program background = cfg.problem;
        background.merge(cfg.auxBackground);
        LearningTask task;
        task.background = background;
        task.abk = cfg.initialAbk;
        task.space.modes = cfg.modes;
        task.space.maxBody = cfg.limits.maxBody;
        task.space.maxVars = cfg.limits.maxVars;
        std::size_t idOffset = 0;
        for (const auto& inst : cfg.s) {
          Program full = background;
          full.merge(cfg.initialAbk);
          full.merge(inst.facts);
          GroundProgram gp = ground(full);
          AutomorphismResult aut =
              findAutomorphisms(buildSymmetryGraph(gp), cfg.limits.autBudget);
          LabelOptions lopts;
          lopts.negativeWeight = cfg.limits.negativeWeight;
          lopts.dominance.strict = cfg.limits.strictDominance;
          auto labeled = labelInstance(gp, aut.generators, cfg.limits.solver, inst.facts, lopts);
          for (auto& e : labeled) e.id = "id" + std::to_string(++idOffset);
          task.examples.insert(task.examples.end(), labeled.begin(), labeled.end());
        }
        for (std::size_t i = 0; i < cfg.gen.size(); ++i)
          task.examples.push_back(makeGenExample(cfg.gen[i].facts, "gen" + std::to_string(i + 1)));
        writeOut(emitOut, emitIlaspTask(task));
        return kExitOk;
      }
      if (cmdRun->parsed() || cmdRunInc->parsed()) {
        const bool incremental = cmdRunInc->parsed();
        RunReport report = incremental ? runIncremental(cfg) : runFramework(cfg);
        const auto& abkOut = incremental ? incAbkOut : runAbkOut;
        const auto& reportOut = incremental ? incReportOut : runReportOut;
        if (abkOut) writeOut(abkOut, report.abkText());
        writeOut(reportOut, report.toJson() + "\n");
        return report.ok ? kExitOk : kExitValidationFailed;
      }
      writeOut(benchOut, benchCsv(cfg));
      return kExitOk;
    }
    if (cmdLearn->parsed()) {
      LearningTask task = parseIlaspTaskFile(learnTask);
      task.space.maxBody = learnMaxBody;
      task.space.maxVars = learnMaxVars;
      if (learnScoring) {
        std::ifstream in(*learnScoring);
        if (!in) throw std::runtime_error("cannot open scoring file: " + *learnScoring);
        nlohmann::json sc = nlohmann::json::parse(in);
        ScoringTable table;
        for (auto it = sc.begin(); it != sc.end(); ++it) {
          if (it.key() == "_default")
            table.defaultWeight = it.value().get<long long>();
          else
            table.weights[it.key()] = it.value().get<long long>();
        }
        task.scoring = table;
      }
      Hypothesis h = learn(task, solverCfg);
      for (const auto& c : h.constraints) std::cout << c.text() << "\n";
      std::cout << "% cost=" << h.totalCost << " penalty=" << h.penalty << "\n";
      for (const auto& [id, w] : h.uncovered)
        std::cout << "% uncovered " << id << "@" << w << "\n";
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const BudgetError& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
