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

#include <string>
#include <vector>

#include "symlift/ground.hpp"
#include "symlift/permutation.hpp"

namespace symlift {

// Ground lex-leader extension: per generator, a prefix-equality chain over
// its support atoms in descending rank order plus first-difference
// constraints enforcing lex(I) <= lex(pi(I)). Auxiliary atoms use the
// reserved prefix __sbc.
struct SbcExtension {
  std::vector<Program> perGenerator;

  Program combined() const;
  std::string toText() const;  // parses back with parseProgram
  bool empty() const { return perGenerator.empty(); }
};

SbcExtension emitLexLeader(const GeneratorSet& gs, const GroundProgram& gp);

// The input program extended with the SBCs, ready for ground()/solve.
Program extendedProgram(const GroundProgram& gp, const SbcExtension& ext);

}  // namespace symlift
