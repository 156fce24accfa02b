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
#include <string_view>

#include "symlift/program.hpp"

namespace symlift {

// Parses the restricted rule language: facts `p(3).`, normal rules
// `h :- b1, not b2, X > 1.`, constraints `:- b1, b2, P1 != P2.`, choice
// rules `{p2h(P,H) : hole(H)} = 1 :- pigeon(P).`, `%` line comments.
// Throws ParseError with line/column on malformed input, unsafe rules, and
// predicates used with two different arities.
Program parseProgram(std::string_view text);

// Convenience wrapper; error messages are prefixed with the path.
Program parseProgramFile(const std::string& path);

}  // namespace symlift
