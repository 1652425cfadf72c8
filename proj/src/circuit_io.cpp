// Copyright 2026 The phv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "phv/circuit.hpp"

namespace phv {

ParseError::ParseError(int line, int column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_index(const Token& t, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v < 0) {
    throw ParseError(line, t.column,
                     "expected a non-negative integer, got '" + std::string(t.text) + "'");
  }
  return v;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  int n_qubits = -1;
  Qubits outputs;
  bool have_outputs = false;
  std::vector<Gate> gates;

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;

    const auto toks = tokenize(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view head = toks[0].text;

    auto check_qubit = [&](const Token& t) {
      const int q = parse_index(t, line_no);
      if (q >= n_qubits) {
        throw ParseError(line_no, t.column,
                         "qubit index " + std::to_string(q) + " out of declared range " +
                             std::to_string(n_qubits));
      }
      return q;
    };

    if (head == "qubits") {
      if (n_qubits >= 0) throw ParseError(line_no, toks[0].column, "duplicate qubits header");
      if (toks.size() != 2) throw ParseError(line_no, toks[0].column, "usage: qubits <n>");
      n_qubits = parse_index(toks[1], line_no);
      if (n_qubits < 1) throw ParseError(line_no, toks[1].column, "need at least one qubit");
      continue;
    }
    if (n_qubits < 0) {
      throw ParseError(line_no, toks[0].column, "missing header 'qubits <n>'");
    }
    if (head == "outputs") {
      if (have_outputs) throw ParseError(line_no, toks[0].column, "duplicate outputs header");
      if (toks.size() < 2) throw ParseError(line_no, toks[0].column, "outputs needs indices");
      for (size_t i = 1; i < toks.size(); ++i) {
        const int q = check_qubit(toks[i]);
        for (Qubit o : outputs) {
          if (o == q) throw ParseError(line_no, toks[i].column, "duplicate output qubit");
        }
        outputs.push_back(q);
      }
      have_outputs = true;
      continue;
    }
    if (!have_outputs) {
      throw ParseError(line_no, toks[0].column, "missing header 'outputs <i...>'");
    }

    GateKind kind;
    size_t arity;
    if (head == "x") { kind = GateKind::kX; arity = 1; }
    else if (head == "z") { kind = GateKind::kZ; arity = 1; }
    else if (head == "h") { kind = GateKind::kH; arity = 1; }
    else if (head == "id") { kind = GateKind::kI; arity = 1; }
    else if (head == "cnot") { kind = GateKind::kCnot; arity = 2; }
    else if (head == "cz") { kind = GateKind::kCz; arity = 2; }
    else {
      throw ParseError(line_no, toks[0].column, "unknown gate kind '" + std::string(head) + "'");
    }
    if (toks.size() - 1 != arity) {
      throw ParseError(line_no, toks[0].column,
                       "arity mismatch: " + std::string(head) + " takes " +
                           std::to_string(arity) + " qubit(s)");
    }
    Qubits targets;
    for (size_t i = 1; i < toks.size(); ++i) {
      const int q = check_qubit(toks[i]);
      for (Qubit t : targets) {
        if (t == q) throw ParseError(line_no, toks[i].column, "duplicate target");
      }
      targets.push_back(q);
    }
    gates.push_back({kind, std::move(targets)});
  }
  if (n_qubits < 0) throw ParseError(line_no, 1, "missing header 'qubits <n>'");
  if (!have_outputs) throw ParseError(line_no, 1, "missing header 'outputs <i...>'");
  return Circuit(n_qubits, std::move(gates), std::move(outputs));
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n_qubits() << "\noutputs";
  for (Qubit q : c.output_qubits()) os << ' ' << q;
  os << '\n';
  for (const Gate& g : c.gates()) {
    if (g.is_macro()) {
      throw std::invalid_argument("macro-gates have no text form; expand them first");
    }
    os << gate_name(g.kind);
    for (Qubit q : g.targets) os << ' ' << q;
    os << '\n';
  }
  return os.str();
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open circuit file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

}  // namespace phv
