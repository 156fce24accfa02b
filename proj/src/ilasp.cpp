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

#include "symlift/ilasp.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "symlift/parser.hpp"

namespace symlift {

namespace {

std::string atomList(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), GroundAtomLess{});
  std::string out = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += toString(atoms[i]);
  }
  return out + "}";
}

std::string inlineProgram(const Program& p) {
  std::string out;
  for (const auto& f : p.facts) {
    if (!out.empty()) out += " ";
    out += toString(f) + ".";
  }
  for (const auto& r : p.rules) {
    if (!out.empty()) out += " ";
    out += toString(r);
  }
  return out;
}

}  // namespace

std::string exampleLine(const Example& e) {
  std::string head = e.positive ? "#pos(" : "#neg(";
  head += e.id;
  if (e.weight) head += "@" + std::to_string(*e.weight);
  head += ", " + atomList(e.pi.include) + ", " + atomList(e.pi.exclude) + ", {" +
          inlineProgram(e.context) + "}).";
  return head;
}

std::string modeLine(const ModeDecl& m) {
  std::string out = "#modeb(" + std::to_string(m.recall) + "," + m.pred;
  if (!m.argTypes.empty()) {
    out += "(";
    for (std::size_t i = 0; i < m.argTypes.size(); ++i) {
      if (i) out += ",";
      out += "var(" + m.argTypes[i] + ")";
    }
    out += ")";
  }
  if (m.antiReflexive) out += ",(anti_reflexive)";
  return out + ").";
}

std::string emitIlaspTask(const LearningTask& task) {
  std::ostringstream out;
  out << "% background knowledge\n" << toString(task.background);
  if (!task.abk.empty()) out << "\n% active background knowledge\n" << toString(task.abk);
  out << "\n% examples\n";
  for (const auto& e : task.examples)
    if (!e.positive) out << exampleLine(e) << "\n";
  for (const auto& e : task.examples)
    if (e.positive) out << exampleLine(e) << "\n";
  out << "\n% language bias\n";
  for (const auto& m : task.space.modes) out << modeLine(m) << "\n";
  return out.str();
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw std::runtime_error("ILASP task: expected '" + std::string(1, c) + "' near position " +
                               std::to_string(i));
  }
  std::string until(char stop) {
    std::string out;
    int depth = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (depth == 0 && c == stop) break;
      if (c == '(' || c == '{') ++depth;
      if (c == ')' || c == '}') --depth;
      out += c;
      ++i;
    }
    return out;
  }
};

std::vector<Atom> parseAtomList(const std::string& text) {
  // Wrap into a dummy fact list; the body parser handles atom syntax.
  std::vector<Atom> out;
  std::string trimmed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed.empty()) return out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= trimmed.size(); ++i) {
    if (i == trimmed.size() || (trimmed[i] == ',' && depth == 0)) {
      Program p = parseProgram(trimmed.substr(start, i - start) + ".");
      if (p.facts.size() != 1) throw std::runtime_error("ILASP task: bad atom list: " + text);
      out.push_back(p.facts[0]);
      start = i + 1;
    } else if (trimmed[i] == '(') {
      ++depth;
    } else if (trimmed[i] == ')') {
      --depth;
    }
  }
  return out;
}

Example parseExampleStmt(const std::string& args, bool positive) {
  Example e;
  e.positive = positive;
  Cursor c{args};
  c.ws();
  std::string id;
  while (c.i < args.size() && args[c.i] != ',' && args[c.i] != '@' &&
         !std::isspace(static_cast<unsigned char>(args[c.i])))
    id += args[c.i++];
  e.id = id;
  c.ws();
  if (c.eat('@')) {
    std::string w;
    c.ws();
    while (c.i < args.size() && std::isdigit(static_cast<unsigned char>(args[c.i]))) w += args[c.i++];
    e.weight = std::stoll(w);
  }
  c.expect(',');
  c.expect('{');
  e.pi.include = parseAtomList(c.until('}'));
  c.expect('}');
  c.expect(',');
  c.expect('{');
  e.pi.exclude = parseAtomList(c.until('}'));
  c.expect('}');
  c.expect(',');
  c.expect('{');
  e.context = parseProgram(c.until('}'));
  c.expect('}');
  return e;
}

ModeDecl parseModeStmt(const std::string& args) {
  ModeDecl m;
  Cursor c{args};
  c.ws();
  std::string recall;
  while (c.i < args.size() && std::isdigit(static_cast<unsigned char>(args[c.i])))
    recall += args[c.i++];
  if (recall.empty()) throw std::runtime_error("ILASP task: #modeb missing recall: " + args);
  m.recall = std::stoi(recall);
  c.expect(',');
  c.ws();
  while (c.i < args.size() && (std::isalnum(static_cast<unsigned char>(args[c.i])) || args[c.i] == '_'))
    m.pred += args[c.i++];
  c.ws();
  if (c.eat('(')) {
    while (true) {
      c.ws();
      std::string kw;
      while (c.i < args.size() && std::isalpha(static_cast<unsigned char>(args[c.i])))
        kw += args[c.i++];
      if (kw != "var") throw std::runtime_error("ILASP task: expected var(type) in " + args);
      c.expect('(');
      c.ws();
      std::string type;
      while (c.i < args.size() && (std::isalnum(static_cast<unsigned char>(args[c.i])) || args[c.i] == '_'))
        type += args[c.i++];
      m.argTypes.push_back(type);
      c.expect(')');
      if (!c.eat(',')) break;
    }
    c.expect(')');
  }
  if (c.eat(',')) {
    c.expect('(');
    const std::string opts = c.until(')');
    c.expect(')');
    if (opts.find("anti_reflexive") != std::string::npos) m.antiReflexive = true;
  }
  return m;
}

}  // namespace

LearningTask parseIlaspTask(const std::string& text) {
  LearningTask task;
  std::string background;
  std::size_t i = 0;
  while (i < text.size()) {
    // strip comments and whitespace between statements
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (text[i] == '#') {
      std::size_t j = i + 1;
      std::string kw;
      while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) kw += text[j++];
      Cursor c{text};
      c.i = j;
      c.expect('(');
      const std::string args = c.until(')');
      c.expect(')');
      c.expect('.');
      i = c.i;
      if (kw == "pos")
        task.examples.push_back(parseExampleStmt(args, true));
      else if (kw == "neg")
        task.examples.push_back(parseExampleStmt(args, false));
      else if (kw == "modeb")
        task.space.modes.push_back(parseModeStmt(args));
      else
        throw std::runtime_error("ILASP task: unsupported directive #" + kw);
      continue;
    }
    // plain statement, runs to the terminating '.' outside parens/braces
    std::size_t start = i;
    int depth = 0;
    while (i < text.size()) {
      const char ch = text[i];
      if (ch == '(' || ch == '{') ++depth;
      if (ch == ')' || ch == '}') --depth;
      if (ch == '%') {
        while (i < text.size() && text[i] != '\n') ++i;
        continue;
      }
      ++i;
      if (ch == '.' && depth == 0) break;
    }
    background += text.substr(start, i - start) + "\n";
  }
  task.background = parseProgram(background);
  return task;
}

LearningTask parseIlaspTaskFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open task file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseIlaspTask(ss.str());
}

}  // namespace symlift
