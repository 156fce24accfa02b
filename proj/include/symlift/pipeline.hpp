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

#include <optional>
#include <string>
#include <vector>

#include "symlift/learner.hpp"
#include "symlift/program.hpp"
#include "symlift/solver.hpp"

namespace symlift {

struct PipelineLimits {
  EnumConfig solver;
  std::uint64_t autBudget = 5'000'000;
  std::size_t closureCap = 10'000;
  int maxBody = 3;
  int maxVars = 3;
  std::size_t spaceLimit = 200'000;
  long long negativeWeight = 100;
  bool strictDominance = true;  // false reproduces the >= labeling variant
};

struct NamedInstance {
  std::string name;
  Program facts;
};

struct PipelineConfig {
  Program problem;
  Program auxBackground;
  Program initialAbk;
  std::vector<NamedInstance> s;           // representative instances
  std::vector<NamedInstance> gen;         // generalization instances
  std::vector<NamedInstance> validation;  // known satisfiable
  std::vector<NamedInstance> bench;       // benchmark instances
  std::vector<ModeDecl> modes;
  std::optional<ScoringTable> scoring;
  PipelineLimits limits;
  int maxRounds = 5;
};

// Reads the JSON manifest; file paths are resolved against its directory.
PipelineConfig loadManifest(const std::string& path);

struct AbkEntry {
  CandidateConstraint constraint;
  int round = 0;
  std::string instance;  // provenance: which sub-task learned it
};

struct InstanceStats {
  std::string name;
  std::size_t answerSets = 0;
  std::size_t generators = 0;
  std::size_t examples = 0;
  std::uint64_t solveNodes = 0;
  std::uint64_t autNodes = 0;
};

struct RoundReport {
  int round = 0;
  std::string subTask;  // instance name in incremental mode
  std::vector<InstanceStats> instances;
  std::vector<std::string> learned;
  long long cost = 0;
  long long penalty = 0;
  std::vector<std::string> failedValidation;
};

struct RunReport {
  bool ok = false;
  int rounds = 0;
  Program initialAbk;
  std::vector<AbkEntry> learned;
  std::vector<RoundReport> roundReports;
  std::vector<std::string> genNames;  // final Gen set, in order
  std::string failingInstance;

  Program abkProgram() const;  // initial + learned
  std::string abkText() const;  // with provenance comments, parses back
  std::string toJson() const;
};

// One framework run: label S, add Gen examples, learn, validate; on a
// failing validation instance the hypothesis is discarded and the instance
// joins Gen for the next round.
RunReport runFramework(const PipelineConfig& cfg);

// Per-instance sub-tasks in manifest order; constraints accepted by a
// sub-task join the background of the following ones.
RunReport runIncremental(const PipelineConfig& cfg);

// Search-effort comparison table over cfg.bench: ABK / BASE node counts
// and model counts, automorphism-search effort, and lex-leader SBCs.
// Exhausted budgets show as TO. Byte-stable except the *_ms columns.
std::string benchCsv(const PipelineConfig& cfg);

}  // namespace symlift
