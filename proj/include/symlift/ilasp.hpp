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

#include "symlift/learner.hpp"

namespace symlift {

// Task file text: background rules, #neg / #pos example lines, #modeb
// declarations. Atom lists are rank-ordered and emission is byte-stable.
std::string emitIlaspTask(const LearningTask& task);

// Inverse of emitIlaspTask for the statement kinds above. maxBody/maxVars
// are not part of the format and keep their defaults.
LearningTask parseIlaspTask(const std::string& text);
LearningTask parseIlaspTaskFile(const std::string& path);

// Single example line, e.g.
// #neg(id1@100, {p2h(1,2)}, {p2h(1,1)}, {pigeon(3). hole(3).}).
std::string exampleLine(const Example& e);

std::string modeLine(const ModeDecl& m);

}  // namespace symlift
