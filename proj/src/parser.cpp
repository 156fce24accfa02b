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

#include "symlift/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace symlift {
namespace {

enum class Tok {
  Ident,     // lowercase or '_' start
  Variable,  // uppercase start
  Integer,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semicolon,
  Colon,
  Dot,
  If,        // :-
  Plus,
  Minus,
  Lt,
  Gt,
  Le,
  Ge,
  Eq,
  Ne,
  Not,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skipWs();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      t.kind = Tok::Integer;
      t.text = std::string(src_.substr(start, pos_ - start));
      t.value = std::stoll(t.text);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      if (t.text == "not")
        t.kind = Tok::Not;
      else
        t.kind = std::isupper(static_cast<unsigned char>(t.text[0])) ? Tok::Variable : Tok::Ident;
      return t;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two(':', '-')) {
      advance();
      advance();
      t.kind = Tok::If;
      return t;
    }
    if (two('<', '=')) { advance(); advance(); t.kind = Tok::Le; return t; }
    if (two('>', '=')) { advance(); advance(); t.kind = Tok::Ge; return t; }
    if (two('!', '=')) { advance(); advance(); t.kind = Tok::Ne; return t; }
    switch (c) {
      case '(': advance(); t.kind = Tok::LParen; return t;
      case ')': advance(); t.kind = Tok::RParen; return t;
      case '{': advance(); t.kind = Tok::LBrace; return t;
      case '}': advance(); t.kind = Tok::RBrace; return t;
      case ',': advance(); t.kind = Tok::Comma; return t;
      case ';': advance(); t.kind = Tok::Semicolon; return t;
      case ':': advance(); t.kind = Tok::Colon; return t;
      case '.': advance(); t.kind = Tok::Dot; return t;
      case '+': advance(); t.kind = Tok::Plus; return t;
      case '-': advance(); t.kind = Tok::Minus; return t;
      case '<': advance(); t.kind = Tok::Lt; return t;
      case '>': advance(); t.kind = Tok::Gt; return t;
      case '=': advance(); t.kind = Tok::Eq; return t;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipWs() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { shift(); }

  Program parse() {
    Program prog;
    while (cur_.kind != Tok::End) prog.rules.push_back(parseRule());
    // Split ground facts off into Program::facts.
    Program out;
    for (auto& r : prog.rules) {
      if (r.kind == Rule::Kind::Fact)
        out.facts.push_back(*r.head);
      else
        out.rules.push_back(std::move(r));
    }
    try {
      checkArities(out);
    } catch (const std::runtime_error& e) {
      throw ParseError(e.what(), cur_.line, cur_.col);
    }
    return out;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line, cur_.col); }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    shift();
  }

  Term parsePrimary() {
    if (cur_.kind == Tok::Integer) {
      Term t = Term::integer(cur_.value);
      shift();
      return t;
    }
    if (cur_.kind == Tok::Variable) {
      Term t = Term::variable(cur_.text);
      shift();
      return t;
    }
    if (cur_.kind == Tok::Ident) {
      Term t = Term::symbol(cur_.text);
      shift();
      return t;
    }
    fail("expected term");
  }

  Term parseTerm() {
    std::vector<std::pair<int, Term>> parts;
    int sign = 1;
    if (cur_.kind == Tok::Minus) {
      sign = -1;
      shift();
    }
    Term first = parsePrimary();
    parts.emplace_back(sign, std::move(first));
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const int s = cur_.kind == Tok::Plus ? 1 : -1;
      const Token at = cur_;
      shift();
      Term p = parsePrimary();
      if (p.kind == Term::Kind::Sym)
        throw ParseError("symbolic constant in arithmetic expression", at.line, at.col);
      parts.emplace_back(s, std::move(p));
    }
    if (parts.size() == 1 && parts[0].first == 1) return parts[0].second;
    if (parts.size() == 1 && parts[0].second.kind == Term::Kind::Int)
      return Term::integer(-parts[0].second.num);
    for (const auto& [s, p] : parts)
      if (p.kind == Term::Kind::Sym) fail("symbolic constant in arithmetic expression");
    return Term::sum(std::move(parts));
  }

  Atom parseAtom() {
    if (cur_.kind != Tok::Ident) fail("expected predicate name");
    Atom a;
    a.pred = cur_.text;
    shift();
    if (cur_.kind == Tok::LParen) {
      shift();
      a.args.push_back(parseTerm());
      while (cur_.kind == Tok::Comma) {
        shift();
        a.args.push_back(parseTerm());
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  static std::optional<Builtin::Op> cmpOf(Tok k) {
    switch (k) {
      case Tok::Lt: return Builtin::Op::Lt;
      case Tok::Gt: return Builtin::Op::Gt;
      case Tok::Le: return Builtin::Op::Le;
      case Tok::Ge: return Builtin::Op::Ge;
      case Tok::Eq: return Builtin::Op::Eq;
      case Tok::Ne: return Builtin::Op::Ne;
      default: return std::nullopt;
    }
  }

  // literal := "not" atom | atom | term cmp term
  void parseBodyLiteral(Rule& r) {
    if (cur_.kind == Tok::Not) {
      shift();
      r.bodyNeg.push_back(parseAtom());
      return;
    }
    // Atoms and comparison left-hand sides both may start with ident/var/int.
    if (cur_.kind == Tok::Ident) {
      Atom a = parseAtom();
      if (auto op = cmpOf(cur_.kind)) {
        if (!a.args.empty()) fail("comparison left-hand side must be a term");
        shift();
        r.builtins.push_back(Builtin{*op, Term::symbol(a.pred), parseTerm()});
        return;
      }
      r.bodyPos.push_back(std::move(a));
      return;
    }
    Term lhs = parseTerm();
    auto op = cmpOf(cur_.kind);
    if (!op) fail("expected comparison operator");
    shift();
    r.builtins.push_back(Builtin{*op, std::move(lhs), parseTerm()});
  }

  void parseBody(Rule& r) {
    parseBodyLiteral(r);
    while (cur_.kind == Tok::Comma) {
      shift();
      parseBodyLiteral(r);
    }
  }

  ChoiceElement parseChoiceElement() {
    ChoiceElement el;
    el.atom = parseAtom();
    if (cur_.kind == Tok::Colon) {
      shift();
      while (true) {
        if (cur_.kind == Tok::Ident) {
          Atom a = parseAtom();
          if (auto op = cmpOf(cur_.kind)) {
            if (!a.args.empty()) fail("comparison left-hand side must be a term");
            shift();
            el.conditionBuiltins.push_back(Builtin{*op, Term::symbol(a.pred), parseTerm()});
          } else {
            el.condition.push_back(std::move(a));
          }
        } else {
          Term lhs = parseTerm();
          auto op = cmpOf(cur_.kind);
          if (!op) fail("expected comparison operator in condition");
          shift();
          el.conditionBuiltins.push_back(Builtin{*op, std::move(lhs), parseTerm()});
        }
        if (cur_.kind != Tok::Comma) break;
        shift();
      }
    }
    return el;
  }

  Rule parseRule() {
    Rule r;
    if (cur_.kind == Tok::If) {
      // Constraint.
      r.kind = Rule::Kind::Constraint;
      shift();
      parseBody(r);
      expect(Tok::Dot, "'.'");
      checkSafety(r);
      return r;
    }
    if (cur_.kind == Tok::LBrace) {
      r.kind = Rule::Kind::Choice;
      shift();
      r.elements.push_back(parseChoiceElement());
      while (cur_.kind == Tok::Semicolon) {
        shift();
        r.elements.push_back(parseChoiceElement());
      }
      expect(Tok::RBrace, "'}'");
      expect(Tok::Eq, "'='");
      if (cur_.kind != Tok::Integer) fail("expected choice bound");
      r.bound = cur_.value;
      if (r.bound < 0) fail("choice bound must be non-negative");
      shift();
      if (cur_.kind == Tok::If) {
        shift();
        parseBody(r);
      }
      expect(Tok::Dot, "'.'");
      checkSafety(r);
      return r;
    }
    // Fact or normal rule.
    Atom head = parseAtom();
    if (cur_.kind == Tok::Dot) {
      shift();
      if (!head.isGround()) fail("unsafe rule: fact with variables");
      r.kind = Rule::Kind::Fact;
      r.head = std::move(head);
      return r;
    }
    expect(Tok::If, "':-' or '.'");
    r.kind = Rule::Kind::Normal;
    r.head = std::move(head);
    parseBody(r);
    expect(Tok::Dot, "'.'");
    checkSafety(r);
    return r;
  }

  // Safety: every variable of the rule must occur as a plain argument of a
  // positive body atom (Sum arguments do not bind) or, for choice elements,
  // of a condition atom.
  static void bindingVars(const Atom& a, std::vector<std::string>& out) {
    for (const auto& t : a.args)
      if (t.kind == Term::Kind::Var) out.push_back(t.name);
  }

  void checkSafety(const Rule& r) {
    std::vector<std::string> bound;
    for (const auto& a : r.bodyPos) bindingVars(a, bound);
    auto isBound = [&](const std::string& v, const std::vector<std::string>& extra) {
      return std::find(bound.begin(), bound.end(), v) != bound.end() ||
             std::find(extra.begin(), extra.end(), v) != extra.end();
    };
    auto requireBound = [&](const std::vector<std::string>& vars,
                            const std::vector<std::string>& extra) {
      for (const auto& v : vars)
        if (!isBound(v, extra)) fail("unsafe rule: variable " + v + " not bound by a positive literal");
    };
    std::vector<std::string> vars;
    if (r.head) r.head->collectVariables(vars);
    for (const auto& a : r.bodyPos) a.collectVariables(vars);  // Sum innards
    for (const auto& a : r.bodyNeg) a.collectVariables(vars);
    for (const auto& b : r.builtins) {
      b.lhs.collectVariables(vars);
      b.rhs.collectVariables(vars);
    }
    requireBound(vars, {});
    for (const auto& el : r.elements) {
      std::vector<std::string> condBound;
      for (const auto& c : el.condition) bindingVars(c, condBound);
      std::vector<std::string> evars;
      el.atom.collectVariables(evars);
      for (const auto& c : el.condition) c.collectVariables(evars);
      for (const auto& b : el.conditionBuiltins) {
        b.lhs.collectVariables(evars);
        b.rhs.collectVariables(evars);
      }
      requireBound(evars, condBound);
    }
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

Program parseProgram(std::string_view text) { return Parser(text).parse(); }

Program parseProgramFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open program file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parseProgram(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.line(), e.column());
  }
}

}  // namespace symlift
