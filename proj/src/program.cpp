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

#include "symlift/program.hpp"

#include <map>
#include <sstream>

namespace symlift {

Term Term::integer(long long v) {
  Term t;
  t.kind = Kind::Int;
  t.num = v;
  return t;
}

Term Term::symbol(std::string s) {
  Term t;
  t.kind = Kind::Sym;
  t.name = std::move(s);
  return t;
}

Term Term::variable(std::string v) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(v);
  return t;
}

Term Term::sum(std::vector<std::pair<int, Term>> parts) {
  Term t;
  t.kind = Kind::Sum;
  t.parts = std::move(parts);
  return t;
}

bool Term::isGround() const {
  switch (kind) {
    case Kind::Int:
    case Kind::Sym: return true;
    case Kind::Var: return false;
    case Kind::Sum:
      for (const auto& [s, p] : parts)
        if (!p.isGround()) return false;
      return true;
  }
  return false;
}

bool Term::hasVariables() const { return !isGround(); }

void Term::collectVariables(std::vector<std::string>& out) const {
  switch (kind) {
    case Kind::Var: out.push_back(name); break;
    case Kind::Sum:
      for (const auto& [s, p] : parts) p.collectVariables(out);
      break;
    default: break;
  }
}

bool Term::operator==(const Term& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Int: return num == o.num;
    case Kind::Sym:
    case Kind::Var: return name == o.name;
    case Kind::Sum: return parts == o.parts;
  }
  return false;
}

int compareGroundTerms(const Term& a, const Term& b) {
  const int ra = a.kind == Term::Kind::Int ? 0 : 1;
  const int rb = b.kind == Term::Kind::Int ? 0 : 1;
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra == 0) return a.num < b.num ? -1 : (a.num > b.num ? 1 : 0);
  return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
}

bool Atom::isGround() const {
  for (const auto& t : args)
    if (!t.isGround()) return false;
  return true;
}

void Atom::collectVariables(std::vector<std::string>& out) const {
  for (const auto& t : args) t.collectVariables(out);
}

int compareGroundAtoms(const Atom& a, const Atom& b) {
  if (int c = a.pred.compare(b.pred); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compareGroundTerms(a.args[i], b.args[i]); c != 0) return c;
  return 0;
}

bool Rule::operator==(const Rule& o) const {
  return kind == o.kind && head == o.head && elements == o.elements && bound == o.bound &&
         bodyPos == o.bodyPos && bodyNeg == o.bodyNeg && builtins == o.builtins;
}

namespace {

std::map<std::string, std::size_t> predArities(const Program& p) {
  std::map<std::string, std::size_t> ar;
  auto note = [&](const Atom& a) {
    auto [it, fresh] = ar.emplace(a.pred, a.arity());
    if (!fresh && it->second != a.arity())
      throw std::runtime_error("arity mismatch for predicate '" + a.pred + "': used with arity " +
                               std::to_string(it->second) + " and " + std::to_string(a.arity()));
  };
  for (const auto& f : p.facts) note(f);
  for (const auto& r : p.rules) {
    if (r.head) note(*r.head);
    for (const auto& e : r.elements) {
      note(e.atom);
      for (const auto& c : e.condition) note(c);
    }
    for (const auto& a : r.bodyPos) note(a);
    for (const auto& a : r.bodyNeg) note(a);
  }
  return ar;
}

}  // namespace

void checkArities(const Program& p) { predArities(p); }

void Program::merge(const Program& other) {
  rules.insert(rules.end(), other.rules.begin(), other.rules.end());
  facts.insert(facts.end(), other.facts.begin(), other.facts.end());
  checkArities(*this);
}

std::string toString(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Int: return std::to_string(t.num);
    case Term::Kind::Sym:
    case Term::Kind::Var: return t.name;
    case Term::Kind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& [sign, p] : t.parts) {
        if (first) {
          if (sign < 0) out += "-";
        } else {
          out += sign < 0 ? "-" : "+";
        }
        out += toString(p);
        first = false;
      }
      return out;
    }
  }
  return {};
}

std::string toString(const Atom& a) {
  if (a.args.empty()) return a.pred;
  std::string out = a.pred + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += toString(a.args[i]);
  }
  out += ")";
  return out;
}

std::string toString(const Builtin& b) {
  const char* op = "=";
  switch (b.op) {
    case Builtin::Op::Lt: op = "<"; break;
    case Builtin::Op::Gt: op = ">"; break;
    case Builtin::Op::Le: op = "<="; break;
    case Builtin::Op::Ge: op = ">="; break;
    case Builtin::Op::Eq: op = "="; break;
    case Builtin::Op::Ne: op = "!="; break;
  }
  return toString(b.lhs) + " " + op + " " + toString(b.rhs);
}

namespace {

std::string bodyToString(const Rule& r) {
  std::string out;
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& a : r.bodyPos) {
    sep();
    out += toString(a);
  }
  for (const auto& a : r.bodyNeg) {
    sep();
    out += "not " + toString(a);
  }
  for (const auto& b : r.builtins) {
    sep();
    out += toString(b);
  }
  return out;
}

}  // namespace

std::string toString(const Rule& r) {
  switch (r.kind) {
    case Rule::Kind::Fact: return toString(*r.head) + ".";
    case Rule::Kind::Normal: {
      std::string out = toString(*r.head);
      const std::string body = bodyToString(r);
      if (!body.empty()) out += " :- " + body;
      return out + ".";
    }
    case Rule::Kind::Constraint: return ":- " + bodyToString(r) + ".";
    case Rule::Kind::Choice: {
      std::string out = "{";
      for (std::size_t i = 0; i < r.elements.size(); ++i) {
        if (i) out += "; ";
        out += toString(r.elements[i].atom);
        const auto& el = r.elements[i];
        if (!el.condition.empty() || !el.conditionBuiltins.empty()) {
          out += " : ";
          bool first = true;
          for (const auto& c : el.condition) {
            if (!first) out += ", ";
            out += toString(c);
            first = false;
          }
          for (const auto& b : el.conditionBuiltins) {
            if (!first) out += ", ";
            out += toString(b);
            first = false;
          }
        }
      }
      out += "} = " + std::to_string(r.bound);
      const std::string body = bodyToString(r);
      if (!body.empty()) out += " :- " + body;
      return out + ".";
    }
  }
  return {};
}

std::string toString(const Program& p) {
  std::ostringstream out;
  for (const auto& f : p.facts) out << toString(f) << ".\n";
  for (const auto& r : p.rules) out << toString(r) << "\n";
  return out.str();
}

ParseError::ParseError(std::string msg, int line, int col)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                         ": " + msg),
      msg_(std::move(msg)),
      line_(line),
      col_(col) {}

}  // namespace symlift
