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
#include <stdexcept>
#include <string>
#include <vector>

namespace symlift {

// A term is an integer constant, a symbolic constant, a variable, or a
// bracket-free sum of signed integer/variable primaries (covers X-1, X+1).
// Symbolic constants never occur inside sums.
struct Term {
  enum class Kind { Int, Sym, Var, Sum };

  Kind kind = Kind::Int;
  long long num = 0;   // Int
  std::string name;    // Sym / Var
  std::vector<std::pair<int, Term>> parts;  // Sum: (+1|-1, Int|Var)

  static Term integer(long long v);
  static Term symbol(std::string s);
  static Term variable(std::string v);
  static Term sum(std::vector<std::pair<int, Term>> parts);

  bool isGround() const;
  bool hasVariables() const;
  void collectVariables(std::vector<std::string>& out) const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
};

// Total order on ground terms: integers before symbols, integers numeric,
// symbols lexicographic.
int compareGroundTerms(const Term& a, const Term& b);

struct Atom {
  std::string pred;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool isGround() const;
  void collectVariables(std::vector<std::string>& out) const;

  bool operator==(const Atom& o) const { return pred == o.pred && args == o.args; }
  bool operator!=(const Atom& o) const { return !(*this == o); }
};

// (pred name, argument tuple) order over ground atoms; this is the rank
// order of the atom table and the bit order of lexicographic values.
int compareGroundAtoms(const Atom& a, const Atom& b);
struct GroundAtomLess {
  bool operator()(const Atom& a, const Atom& b) const { return compareGroundAtoms(a, b) < 0; }
};

struct Builtin {
  enum class Op { Lt, Gt, Le, Ge, Eq, Ne };
  Op op = Op::Eq;
  Term lhs, rhs;

  bool operator==(const Builtin& o) const { return op == o.op && lhs == o.lhs && rhs == o.rhs; }
};

struct ChoiceElement {
  Atom atom;
  std::vector<Atom> condition;
  std::vector<Builtin> conditionBuiltins;

  bool operator==(const ChoiceElement& o) const {
    return atom == o.atom && condition == o.condition && conditionBuiltins == o.conditionBuiltins;
  }
};

struct Rule {
  enum class Kind { Fact, Normal, Constraint, Choice };

  Kind kind = Kind::Fact;
  std::optional<Atom> head;            // Fact / Normal
  std::vector<ChoiceElement> elements; // Choice
  long long bound = 0;                 // Choice: {..} = bound
  std::vector<Atom> bodyPos;
  std::vector<Atom> bodyNeg;
  std::vector<Builtin> builtins;

  bool operator==(const Rule& o) const;
};

struct Program {
  std::vector<Rule> rules;   // non-fact rules
  std::vector<Atom> facts;   // ground facts

  bool empty() const { return rules.empty() && facts.empty(); }
  // Appends other's rules and facts; revalidates predicate arities.
  void merge(const Program& other);
};

std::string toString(const Term& t);
std::string toString(const Atom& a);
std::string toString(const Builtin& b);
std::string toString(const Rule& r);
std::string toString(const Program& p);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int col);
  int line() const { return line_; }
  int column() const { return col_; }
  const std::string& message() const { return msg_; }

 private:
  std::string msg_;
  int line_, col_;
};

class GroundingError : public std::runtime_error {
 public:
  explicit GroundingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Checks mixed arities across the whole program; throws ParseError-style
// diagnostics wrapped in std::runtime_error when a predicate is reused with
// a different arity.
void checkArities(const Program& p);

}  // namespace symlift
