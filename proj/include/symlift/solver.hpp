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
#include <functional>
#include <vector>

#include "symlift/ground.hpp"
#include "symlift/interpretation.hpp"

namespace symlift {

struct EnumConfig {
  std::size_t cap = 0;                      // 0 = enumerate all
  std::uint64_t seed = 0;                   // 0 = guess atoms in rank order
  std::uint64_t nodeBudget = 10'000'000;    // decision nodes
};

class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class EnumStatus { Complete, CapReached, BudgetExhausted };

struct EnumResult {
  std::vector<Bitset> sets;
  std::uint64_t nodes = 0;
  EnumStatus status = EnumStatus::Complete;
};

// Least fixpoint of the immediate-consequence step over negation-free
// normal rules, seeded with base. Throws std::invalid_argument when a rule
// is not a positive normal rule.
Bitset leastModel(const std::vector<GroundRule>& rules, const Bitset& base);

// Reduct-based stability oracle: I satisfies all constraints, every choice
// rule whose body holds selects exactly its bound, and I is the least model
// of the reduct with satisfied-body chosen atoms as supported heads.
bool isStableModel(const GroundProgram& gp, const Bitset& I);

// Backtracking enumeration over choice atoms; every emitted model passes
// isStableModel. With cap 0 results are sorted ascending by lex value.
EnumResult enumerateAnswerSets(const GroundProgram& gp, const EnumConfig& cfg = {});

// Streaming variant: fn returns false to stop early (status CapReached).
// Sets are reported in search order.
EnumResult forEachAnswerSet(const GroundProgram& gp, const EnumConfig& cfg,
                            const std::function<bool(const Bitset&)>& fn);

struct SatResult {
  bool known = false;  // false when the node budget ran out first
  bool satisfiable = false;
  std::uint64_t nodes = 0;
};

SatResult checkSatisfiable(const GroundProgram& gp, const EnumConfig& cfg = {});

}  // namespace symlift
