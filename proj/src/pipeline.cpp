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

#include "symlift/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "symlift/dominance.hpp"
#include "symlift/ground.hpp"
#include "symlift/ilasp.hpp"
#include "symlift/parser.hpp"
#include "symlift/sbc.hpp"
#include "symlift/symmetry.hpp"

namespace symlift {

namespace {

using nlohmann::json;

std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NamedInstance loadInstance(const std::filesystem::path& p) {
  NamedInstance inst;
  inst.name = p.stem().string();
  inst.facts = parseProgramFile(p.string());
  return inst;
}

std::string factsKey(const Program& p) {
  std::vector<std::string> keys;
  for (const auto& f : p.facts) keys.push_back(toString(f));
  for (const auto& r : p.rules) keys.push_back(toString(r));
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& k : keys) out += k + "\n";
  return out;
}

}  // namespace

PipelineConfig loadManifest(const std::string& path) {
  const std::filesystem::path manifestPath(path);
  const auto dir = manifestPath.parent_path();
  json m = json::parse(readFile(manifestPath));

  auto resolve = [&](const std::string& rel) { return dir / rel; };
  PipelineConfig cfg;
  cfg.problem = parseProgramFile(resolve(m.at("problem").get<std::string>()).string());
  if (m.contains("aux_background"))
    cfg.auxBackground =
        parseProgramFile(resolve(m.at("aux_background").get<std::string>()).string());
  if (m.contains("abk"))
    cfg.initialAbk = parseProgramFile(resolve(m.at("abk").get<std::string>()).string());
  if (m.contains("bias")) {
    LearningTask bias = parseIlaspTaskFile(resolve(m.at("bias").get<std::string>()).string());
    cfg.modes = bias.space.modes;
  }
  auto loadList = [&](const char* key, std::vector<NamedInstance>& out) {
    if (!m.contains(key)) return;
    for (const auto& item : m.at(key)) out.push_back(loadInstance(resolve(item.get<std::string>())));
  };
  loadList("s", cfg.s);
  loadList("gen", cfg.gen);
  loadList("validation", cfg.validation);
  loadList("bench", cfg.bench);
  if (m.contains("max_rounds")) cfg.maxRounds = m.at("max_rounds").get<int>();
  if (m.contains("scoring")) {
    json sc = json::parse(readFile(resolve(m.at("scoring").get<std::string>())));
    ScoringTable table;
    for (auto it = sc.begin(); it != sc.end(); ++it) {
      if (it.key() == "_default")
        table.defaultWeight = it.value().get<long long>();
      else
        table.weights[it.key()] = it.value().get<long long>();
    }
    cfg.scoring = table;
  }
  if (m.contains("limits")) {
    const json& l = m.at("limits");
    if (l.contains("cap")) cfg.limits.solver.cap = l.at("cap").get<std::size_t>();
    if (l.contains("seed")) cfg.limits.solver.seed = l.at("seed").get<std::uint64_t>();
    if (l.contains("node_budget"))
      cfg.limits.solver.nodeBudget = l.at("node_budget").get<std::uint64_t>();
    if (l.contains("aut_budget")) cfg.limits.autBudget = l.at("aut_budget").get<std::uint64_t>();
    if (l.contains("closure_cap")) cfg.limits.closureCap = l.at("closure_cap").get<std::size_t>();
    if (l.contains("max_body")) cfg.limits.maxBody = l.at("max_body").get<int>();
    if (l.contains("max_vars")) cfg.limits.maxVars = l.at("max_vars").get<int>();
    if (l.contains("space_limit")) cfg.limits.spaceLimit = l.at("space_limit").get<std::size_t>();
    if (l.contains("negative_weight"))
      cfg.limits.negativeWeight = l.at("negative_weight").get<long long>();
    if (l.contains("strict_dominance"))
      cfg.limits.strictDominance = l.at("strict_dominance").get<bool>();
  }
  return cfg;
}

Program RunReport::abkProgram() const {
  Program p = initialAbk;
  for (const auto& e : learned) p.rules.push_back(e.constraint.toRule());
  return p;
}

std::string RunReport::abkText() const {
  std::string out = "% active background knowledge\n";
  if (!initialAbk.empty()) {
    out += "% initial\n" + toString(initialAbk);
  }
  for (const auto& e : learned) {
    out += "% round " + std::to_string(e.round);
    if (!e.instance.empty()) out += ", instance " + e.instance;
    out += "\n" + e.constraint.text() + "\n";
  }
  return out;
}

std::string RunReport::toJson() const {
  json j;
  j["ok"] = ok;
  j["rounds"] = rounds;
  j["failing_instance"] = failingInstance;
  j["gen"] = genNames;
  j["abk"] = json::array();
  for (const auto& e : learned)
    j["abk"].push_back({{"constraint", e.constraint.text()},
                        {"round", e.round},
                        {"instance", e.instance}});
  j["rounds_detail"] = json::array();
  for (const auto& r : roundReports) {
    json jr;
    jr["round"] = r.round;
    if (!r.subTask.empty()) jr["sub_task"] = r.subTask;
    jr["learned"] = r.learned;
    jr["cost"] = r.cost;
    jr["penalty"] = r.penalty;
    jr["failed_validation"] = r.failedValidation;
    jr["instances"] = json::array();
    for (const auto& st : r.instances)
      jr["instances"].push_back({{"name", st.name},
                                 {"answer_sets", st.answerSets},
                                 {"generators", st.generators},
                                 {"examples", st.examples},
                                 {"solve_nodes", st.solveNodes},
                                 {"aut_nodes", st.autNodes}});
    j["rounds_detail"].push_back(std::move(jr));
  }
  return j.dump(2);
}

namespace {

void requireNoGroundConstants(const CandidateConstraint& c) {
  for (const auto& a : c.body)
    for (const auto& t : a.args)
      if (t.kind != Term::Kind::Var)
        throw std::logic_error("learned constraint mentions a ground constant: " + c.text());
}

struct RoundOutcome {
  Hypothesis hypothesis;
  RoundReport report;
  std::vector<std::string> failed;  // validation instances without a model
};

// One labeling + learning + validation pass over the given S and Gen.
RoundOutcome oneRound(const PipelineConfig& cfg, const Program& abkSoFar,
                      const std::vector<NamedInstance>& s, const std::vector<NamedInstance>& gen,
                      int round) {
  RoundOutcome out;
  out.report.round = round;

  Program background = cfg.problem;
  background.merge(cfg.auxBackground);

  LearningTask task;
  task.background = background;
  task.abk = abkSoFar;
  task.space.modes = cfg.modes;
  task.space.maxBody = cfg.limits.maxBody;
  task.space.maxVars = cfg.limits.maxVars;
  task.space.spaceLimit = cfg.limits.spaceLimit;
  task.scoring = cfg.scoring;

  std::size_t idOffset = 0;
  for (const auto& inst : s) {
    Program full = background;
    full.merge(abkSoFar);
    full.merge(inst.facts);
    GroundProgram gp = ground(full);

    AutomorphismResult aut = findAutomorphisms(buildSymmetryGraph(gp), cfg.limits.autBudget,
                                               cfg.limits.closureCap);
    LabelOptions lopts;
    lopts.negativeWeight = cfg.limits.negativeWeight;
    lopts.dominance.strict = cfg.limits.strictDominance;
    EnumResult enums = enumerateAnswerSets(gp, cfg.limits.solver);
    if (enums.status == EnumStatus::BudgetExhausted)
      throw BudgetError("labeling " + inst.name + ": node budget exhausted");
    if (enums.sets.empty())
      throw std::runtime_error("representative instance " + inst.name +
                               " is unsatisfiable under the current background");
    std::vector<Example> labeled =
        labelInstance(gp, aut.generators, cfg.limits.solver, inst.facts, lopts);
    for (auto& e : labeled) e.id = "id" + std::to_string(++idOffset);

    InstanceStats st;
    st.name = inst.name;
    st.answerSets = enums.sets.size();
    st.generators = aut.generators.generators.size();
    st.examples = labeled.size();
    st.solveNodes = enums.nodes;
    st.autNodes = aut.nodes;
    out.report.instances.push_back(st);

    task.examples.insert(task.examples.end(), labeled.begin(), labeled.end());
  }
  for (std::size_t i = 0; i < gen.size(); ++i)
    task.examples.push_back(makeGenExample(gen[i].facts, "gen" + std::to_string(i + 1)));

  out.hypothesis = learn(task, cfg.limits.solver);
  for (const auto& c : out.hypothesis.constraints) {
    requireNoGroundConstants(c);
    out.report.learned.push_back(c.text());
  }
  out.report.cost = out.hypothesis.totalCost;
  out.report.penalty = out.hypothesis.penalty;

  for (const auto& v : cfg.validation) {
    Program full = background;
    full.merge(abkSoFar);
    full.merge(out.hypothesis.toProgram());
    full.merge(v.facts);
    SatResult sat = checkSatisfiable(ground(full), cfg.limits.solver);
    if (!sat.known)
      throw BudgetError("validating " + v.name + ": node budget exhausted");
    if (!sat.satisfiable) out.failed.push_back(v.name);
  }
  out.report.failedValidation = out.failed;
  return out;
}

void checkConfig(const PipelineConfig& cfg) {
  if (cfg.s.empty()) throw std::invalid_argument("S must not be empty");
  if (cfg.maxRounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  std::set<std::string> genKeys;
  for (const auto& g : cfg.gen) genKeys.insert(factsKey(g.facts));
  for (const auto& v : cfg.validation)
    if (genKeys.count(factsKey(v.facts)))
      throw std::invalid_argument("validation instance " + v.name +
                                  " also occurs in Gen; the sets must be disjoint");
}

}  // namespace

RunReport runFramework(const PipelineConfig& cfg) {
  checkConfig(cfg);
  RunReport report;
  report.initialAbk = cfg.initialAbk;
  std::vector<NamedInstance> gen = cfg.gen;

  for (int round = 1; round <= cfg.maxRounds; ++round) {
    report.rounds = round;
    RoundOutcome outcome = oneRound(cfg, cfg.initialAbk, cfg.s, gen, round);
    report.roundReports.push_back(outcome.report);
    if (outcome.failed.empty()) {
      for (const auto& c : outcome.hypothesis.constraints)
        report.learned.push_back({c, round, cfg.s.size() == 1 ? cfg.s[0].name : std::string()});
      report.ok = true;
      break;
    }
    // Discard the hypothesis and force the failing instances to keep a
    // solution next time.
    for (const auto& name : outcome.failed) {
      auto it = std::find_if(cfg.validation.begin(), cfg.validation.end(),
                             [&](const NamedInstance& v) { return v.name == name; });
      gen.push_back(*it);
      report.failingInstance = name;
    }
  }
  for (const auto& g : gen) report.genNames.push_back(g.name);
  return report;
}

RunReport runIncremental(const PipelineConfig& cfg) {
  checkConfig(cfg);
  RunReport report;
  report.initialAbk = cfg.initialAbk;
  std::vector<NamedInstance> gen = cfg.gen;
  Program abk = cfg.initialAbk;
  bool allOk = true;

  for (const auto& inst : cfg.s) {
    bool subOk = false;
    for (int round = 1; round <= cfg.maxRounds; ++round) {
      RoundOutcome outcome = oneRound(cfg, abk, {inst}, gen, round);
      outcome.report.subTask = inst.name;
      report.roundReports.push_back(outcome.report);
      report.rounds += 1;
      if (outcome.failed.empty()) {
        for (const auto& c : outcome.hypothesis.constraints) {
          report.learned.push_back({c, round, inst.name});
          abk.rules.push_back(c.toRule());
        }
        subOk = true;
        break;
      }
      for (const auto& name : outcome.failed) {
        auto it = std::find_if(cfg.validation.begin(), cfg.validation.end(),
                               [&](const NamedInstance& v) { return v.name == name; });
        gen.push_back(*it);
        report.failingInstance = name;
      }
    }
    if (!subOk) {
      allOk = false;
      break;
    }
  }
  report.ok = allOk;
  for (const auto& g : gen) report.genNames.push_back(g.name);
  return report;
}

namespace {

struct Cell {
  bool timeout = false;
  std::uint64_t nodes = 0;
  std::size_t models = 0;
  long long ms = 0;
};

std::string cellOr(const Cell& c, std::uint64_t Cell::* field) {
  return c.timeout ? "TO" : std::to_string(c.*field);
}

}  // namespace

std::string benchCsv(const PipelineConfig& cfg) {
  std::ostringstream csv;
  csv << "instance,sat,ABK_nodes,ABK_models,BASE_nodes,BASE_models,SBASS_nodes,"
         "CLASPpi_nodes,CLASPpi_models,ABK_ms,BASE_ms,SBASS_ms,CLASPpi_ms\n";

  for (const auto& inst : cfg.bench) {
    auto timed = [](auto&& fn) {
      const auto start = std::chrono::steady_clock::now();
      Cell c = fn();
      c.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - start)
                 .count();
      return c;
    };

    Program baseProgram = cfg.problem;
    baseProgram.merge(inst.facts);
    const GroundProgram gpBase = ground(baseProgram);

    const Cell base = timed([&] {
      Cell c;
      EnumResult r = enumerateAnswerSets(gpBase, cfg.limits.solver);
      c.timeout = r.status == EnumStatus::BudgetExhausted;
      c.nodes = r.nodes;
      c.models = r.sets.size();
      return c;
    });

    const Cell abk = timed([&] {
      Program p = cfg.problem;
      p.merge(cfg.auxBackground);
      p.merge(cfg.initialAbk);
      p.merge(inst.facts);
      Cell c;
      EnumResult r = enumerateAnswerSets(ground(p), cfg.limits.solver);
      c.timeout = r.status == EnumStatus::BudgetExhausted;
      c.nodes = r.nodes;
      c.models = r.sets.size();
      return c;
    });

    AutomorphismResult aut;
    const Cell sbass = timed([&] {
      aut = findAutomorphisms(buildSymmetryGraph(gpBase), cfg.limits.autBudget,
                              cfg.limits.closureCap);
      Cell c;
      c.timeout = !aut.complete;
      c.nodes = aut.nodes;
      return c;
    });

    const Cell claspPi = timed([&] {
      Program p = extendedProgram(gpBase, emitLexLeader(aut.generators, gpBase));
      Cell c;
      EnumResult r = enumerateAnswerSets(ground(p), cfg.limits.solver);
      c.timeout = r.status == EnumStatus::BudgetExhausted;
      c.nodes = r.nodes;
      c.models = r.sets.size();
      return c;
    });

    std::string sat = "TO";
    if (!base.timeout)
      sat = base.models > 0 ? "1" : "0";
    else if (!abk.timeout)
      sat = abk.models > 0 ? "1" : "0";

    csv << inst.name << ',' << sat << ',' << cellOr(abk, &Cell::nodes) << ','
        << (abk.timeout ? "TO" : std::to_string(abk.models)) << ','
        << cellOr(base, &Cell::nodes) << ','
        << (base.timeout ? "TO" : std::to_string(base.models)) << ','
        << cellOr(sbass, &Cell::nodes) << ',' << cellOr(claspPi, &Cell::nodes) << ','
        << (claspPi.timeout ? "TO" : std::to_string(claspPi.models)) << ',' << abk.ms << ','
        << base.ms << ',' << sbass.ms << ',' << claspPi.ms << '\n';
  }
  return csv.str();
}

}  // namespace symlift
